#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dispcat;
namespace fx = dispcat::fixtures;

namespace {

std::vector<DispCat> random_displays(std::uint64_t seed, int n) {
  random::Rng rng(seed);
  std::vector<DispCat> out;
  for (int i = 0; i < n; ++i) out.push_back(random::random_display(rng));
  return out;
}

/// Cleavings counted as a product of per-(f, target) lift counts.
std::size_t brute_cleavings(const DispCat& d) {
  const FinCat& C = d.base();
  std::size_t n = 1;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x = 0; x < d.num_dobjs(); ++x) {
      if (d.dobj(x).over != C.dst(f)) continue;
      std::size_t k = 0;
      for (DMorIx m = 0; m < d.num_dmors(); ++m) {
        k += d.dmor(m).over == f && d.dmor(m).dst == x && oracle::is_cartesian(d, m);
      }
      n *= k;
    }
  }
  return n;
}

}  // namespace

TEST(Cartesian, AgreesWithOracleOnCorpus) {
  for (const auto& [name, d] : fx::displays()) {
    for (DMorIx m = 0; m < d.num_dmors(); ++m) {
      EXPECT_EQ(static_cast<bool>(is_cartesian(d, m)), oracle::is_cartesian(d, m)) << name << " " << d.dmor_label(m);
    }
  }
}

TEST(Cartesian, AgreesWithOracleOnRandomDisplays) {
  for (const DispCat& d : random_displays(17, 400)) {
    for (DMorIx m = 0; m < d.num_dmors(); ++m) {
      ASSERT_EQ(static_cast<bool>(is_cartesian(d, m)), oracle::is_cartesian(d, m));
    }
  }
}

TEST(Cartesian, DisplayedIdentitiesAreCartesianAndOpcartesian) {
  for (const auto& [name, d] : fx::displays()) {
    if (name == "Idempotent") continue;
    for (DObjIx x = 0; x < d.num_dobjs(); ++x) {
      EXPECT_TRUE(is_cartesian(d, d.did(x))) << name;
      EXPECT_TRUE(is_opcartesian(d, d.did(x))) << name;
    }
  }
}

TEST(Cartesian, IdempotentLiftFactorsTwice) {
  DispCat d = fx::idempotent_display();
  DMorIx u = d.dmor_ix("f", "u");
  CartesianResult r = is_cartesian(d, u);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.factorisations, 2u);
  EXPECT_TRUE(cartesian_lifts(d, d.base().morphism_ix("f"), d.dobj_ix("b", "y")).empty());
}

TEST(Cartesian, OpcartesianIsCartesianInOpposite) {
  for (const auto& [name, d] : fx::displays()) {
    DispCat op = op_display(d);
    for (DMorIx m = 0; m < d.num_dmors(); ++m) {
      EXPECT_EQ(static_cast<bool>(is_opcartesian(d, m)), static_cast<bool>(is_cartesian(op, m))) << name;
    }
  }
}

TEST(Cartesian, LiftsMatchOracle) {
  for (const auto& [name, d] : fx::displays()) {
    const FinCat& C = d.base();
    for (MorIx f = 0; f < C.num_morphisms(); ++f) {
      for (DObjIx x : d.fibre(C.dst(f))) {
        std::vector<DMorIx> expect;
        for (DMorIx m : d.over(f)) {
          if (d.dmor(m).dst == x && oracle::is_cartesian(d, m)) expect.push_back(m);
        }
        std::vector<DMorIx> got;
        for (const Lift& l : cartesian_lifts(d, f, x)) got.push_back(l.fbar);
        EXPECT_EQ(got, expect) << name;
      }
    }
  }
}

TEST(Cartesian, FullSubLiftsExistIffSourceSelected) {
  FinCat c = fx::div12();
  DispCat d = full_sub_display(c, fx::select_objects(c, {"1", "12"}));
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(c.dst(f))) {
      auto ls = cartesian_lifts(d, f, x);
      EXPECT_EQ(ls.size(), d.fibre(c.src(f)).size());
    }
  }
}

TEST(Fibration, WeakFibrationAgreesWithOracle) {
  for (const auto& [name, d] : fx::displays()) {
    EXPECT_EQ(classify_fibration(d).flag("weak_fibration"), oracle::is_weak_fibration(d)) << name;
  }
  for (const DispCat& d : random_displays(23, 200)) {
    EXPECT_EQ(classify_fibration(d).flag("weak_fibration"), oracle::is_weak_fibration(d));
  }
}

TEST(Fibration, SliceIsFibrationIffPullbacksExist) {
  for (const auto& [name, c] : fx::categories()) {
    bool pullbacks = true;
    for (MorIx f = 0; f < c.num_morphisms(); ++f) {
      for (MorIx g = 0; g < c.num_morphisms(); ++g) {
        if (c.dst(f) == c.dst(g) && oracle::limits(cospan_diagram(c, f, g)).empty()) pullbacks = false;
      }
    }
    EXPECT_EQ(classify_fibration(slice_display(c)).flag("weak_fibration"), pullbacks) << name;
  }
}

TEST(Fibration, SliceExamples) {
  Report d12 = classify_fibration(slice_display(fx::div12()));
  EXPECT_TRUE(d12.flag("weak_fibration"));
  EXPECT_TRUE(d12.flag("split"));
  Report two = classify_fibration(slice_display(fx::two()));
  EXPECT_TRUE(two.flag("weak_fibration"));
  Report co = classify_fibration(coslice_display(fx::div12()));
  EXPECT_TRUE(co.flag("weak_opfibration"));
}

TEST(Fibration, CleavingCountMatchesProductOfLiftCounts) {
  for (const auto& [name, d] : fx::displays()) {
    if (d.num_dmors() > 200) continue;
    EXPECT_EQ(count_cleavings(d), brute_cleavings(d)) << name;
  }
}

TEST(Fibration, FoundSplitCleavingsAreSplit) {
  for (const auto& [name, d] : fx::displays()) {
    SplitSearch s = find_split_cleaving(d);
    if (s.cleaving) {
      EXPECT_TRUE(check_split(d, *s.cleaving).passed()) << name;
      for (const auto& [key, m] : s.cleaving->lifts) EXPECT_TRUE(oracle::is_cartesian(d, m)) << name;
    }
  }
}

TEST(Fibration, NonFibrationNamesMissingLift) {
  Report r = classify_fibration(fx::idempotent_display());
  EXPECT_FALSE(r.flag("weak_fibration"));
  ASSERT_FALSE(r.findings.empty());
  EXPECT_EQ(r.findings.front().code, "missing_lift");
}

TEST(Pullback, CartesianIffPullbackOnSlices) {
  std::size_t cart = 0, noncart = 0;
  for (const FinCat& c : {fx::div12(), fx::two()}) {
    DispCat s = slice_display(c);
    for (DMorIx m = 0; m < s.num_dmors(); ++m) {
      Report r = cartesian_iff_pullback(c, s, m);
      EXPECT_NE(r.verdict, Verdict::error) << s.dmor_label(m);
      Square sq = slice_square(c, s, m);
      EXPECT_EQ(r.flag("pullback"), oracle::is_pullback(c, sq.f, sq.g, sq.p, sq.q)) << s.dmor_label(m);
      EXPECT_EQ(r.flag("cartesian"), oracle::is_cartesian(s, m)) << s.dmor_label(m);
      if (c == fx::div12()) (r.flag("cartesian") ? cart : noncart) += 1;
    }
  }
  EXPECT_GT(cart, 0u);
  EXPECT_GT(noncart, 0u);
}

TEST(Pullback, AgreesWithOracleOnAllSquares) {
  for (const auto& [name, c] : fx::categories()) {
    for (MorIx f = 0; f < c.num_morphisms(); ++f) {
      for (MorIx g = 0; g < c.num_morphisms(); ++g) {
        if (c.dst(f) != c.dst(g)) continue;
        for (MorIx p : c.into(c.src(f))) {
          for (MorIx q : c.into(c.src(g))) {
            if (c.src(p) != c.src(q) || c.comp(p, f) != c.comp(q, g)) continue;
            EXPECT_EQ(is_pullback(c, Square{f, g, p, q}).passed(), oracle::is_pullback(c, f, g, p, q)) << name;
          }
        }
      }
    }
  }
}

TEST(Discrete, AgreesWithOracle) {
  for (const auto& [name, d] : fx::displays()) {
    EXPECT_EQ(is_discrete_fibration(d).passed(), oracle::is_discrete_fibration(d)) << name;
  }
  for (const DispCat& d : random_displays(31, 200)) {
    EXPECT_EQ(is_discrete_fibration(d).passed(), oracle::is_discrete_fibration(d));
  }
}

TEST(Discrete, PresheafRoundTripIsIdentical) {
  for (const auto& [name, p] : fx::presheaves()) {
    DispCat d = presheaf_to_discrete_fibration(p);
    EXPECT_EQ(discrete_fibration_to_presheaf(d), p) << name;
    Report r = is_discrete_fibration(d);
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_TRUE(r.flag("split")) << name;
    EXPECT_EQ(oracle::display_shape(d), oracle::elements_shape(p)) << name;
  }
}

TEST(Discrete, DisplayRoundTripIsIdentical) {
  std::size_t discrete = 0;
  for (const auto& [name, d] : fx::displays()) {
    if (!is_discrete_fibration(d).passed()) continue;
    ++discrete;
    Presheaf p = discrete_fibration_to_presheaf(d);
    EXPECT_TRUE(check_presheaf_laws(p).passed()) << name;
    EXPECT_EQ(presheaf_to_discrete_fibration(p), d) << name;
  }
  EXPECT_GE(discrete, 3u);
}

TEST(Discrete, RepresentableElements) {
  DispCat d = presheaf_to_discrete_fibration(fx::yoneda_two_b());
  FinCat two = fx::two();
  ASSERT_EQ(d.fibre(two.object("a")).size(), 1u);
  ASSERT_EQ(d.fibre(two.object("b")).size(), 1u);
  EXPECT_EQ(d.dobj(d.fibre(two.object("a")).front()).id, "f");
  EXPECT_EQ(d.dobj(d.fibre(two.object("b")).front()).id, "id_b");
}

TEST(Discrete, TerminalPresheafGivesFullSub) {
  FinCat c = fx::div12();
  DispCat d = presheaf_to_discrete_fibration(terminal_presheaf(c));
  DispCat full = full_sub_display(c, std::vector<bool>(c.num_objects(), true));
  EXPECT_EQ(d.num_dobjs(), full.num_dobjs());
  EXPECT_EQ(d.num_dmors(), full.num_dmors());
}

TEST(Isofibration, LiftsAreDisplayedIsos) {
  for (const auto& [name, d] : fx::displays()) {
    IsoCleavingResult r = find_iso_cleaving(d);
    if (!r.cleaving) continue;
    for (const auto& [key, m] : r.cleaving->lifts) EXPECT_TRUE(oracle::is_displayed_iso(d, m)) << name;
  }
  EXPECT_TRUE(find_iso_cleaving(constant_display(fx::wiso(), fx::two())).cleaving.has_value());
}

TEST(Isofibration, GauntBaseUsesIdentities) {
  for (const auto& [name, d] : fx::displays()) {
    if (!is_univalent_category(d.base()).passed()) {
      EXPECT_THROW(iso_cleaving_from_gaunt_base(d), Error) << name;
      continue;
    }
    Cleaving cl = iso_cleaving_from_gaunt_base(d);
    for (const auto& [key, m] : cl.lifts) EXPECT_EQ(m, d.did(key.second)) << name;
  }
}
