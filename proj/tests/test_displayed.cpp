#include <gtest/gtest.h>

#include <random>

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

/// Constructed displays over the fixture corpus, with a label each.
std::vector<std::pair<std::string, DispCat>> constructed() {
  std::vector<std::pair<std::string, DispCat>> out;
  FinCat d12 = fx::div12();
  for (const auto& [name, c] : fx::categories()) {
    out.emplace_back("slice " + name, slice_display(c));
    out.emplace_back("coslice " + name, coslice_display(c));
    out.emplace_back("slicesigma " + name, slice_via_sigma(c));
    out.emplace_back("coslicesigma " + name, coslice_via_sigma(c));
    out.emplace_back("arrow " + name, arrow_display(c));
    out.emplace_back("const " + name, constant_display(c, fx::two()));
    out.emplace_back("fullsub " + name, full_sub_display(c, std::vector<bool>(c.num_objects(), true)));
  }
  for (const auto& [name, d] : fx::displays()) {
    out.emplace_back("op " + name, op_display(d));
    if (d.base() == d12) {
      out.emplace_back("reindex gcd6 " + name, reindex(d, fx::gcd6()));
      out.emplace_back("reindex lcm3 " + name, reindex(d, fx::lcm3()));
    }
  }
  DispCat cc = constant_display(fx::two(), fx::two());
  FinCat tc = total_category(cc).cat;
  out.emplace_back("sigma slice", sigma_display(cc, slice_display(tc)));
  out.emplace_back("sigma fullsub", sigma_display(cc, full_sub_display(tc, fx::select_objects(tc, {"a|a", "b|b"}))));
  out.emplace_back("sigma const", sigma_display(cc, constant_display(tc, fx::bz2())));
  out.emplace_back("malg", monad_algebra_display(fx::lcm2_monad()));
  return out;
}

}  // namespace

TEST(Displayed, CorpusPassesLaws) {
  for (const auto& [name, d] : fx::displays()) {
    EXPECT_TRUE(check_displayed_laws(d).passed()) << name;
    EXPECT_TRUE(oracle::is_displayed_category(d)) << name;
  }
}

TEST(Displayed, ConstructionOutputsPassLaws) {
  for (const auto& [name, d] : constructed()) {
    EXPECT_TRUE(check_displayed_laws(d).passed()) << name;
  }
}

TEST(Displayed, RandomDisplaysAgreeWithOracle) {
  for (const DispCat& d : random_displays(5, 300)) {
    EXPECT_TRUE(check_displayed_laws(d).passed());
    EXPECT_TRUE(oracle::is_displayed_category(d));
  }
}

TEST(Displayed, TotalCategoriesAreCategories) {
  for (const auto& [name, d] : fx::displays()) {
    TotalCategory t = total_category(d);
    EXPECT_TRUE(check_category_laws(t.cat).passed()) << name;
    EXPECT_EQ(t.cat.num_objects(), d.num_dobjs()) << name;
    EXPECT_EQ(t.cat.num_morphisms(), d.num_dmors()) << name;
    EXPECT_TRUE(check_functor_laws(t.projection).passed()) << name;
    bool subsingletons = true;
    for (const DMor& m : d.dmors()) subsingletons = subsingletons && d.family(m.over, m.src, m.dst).size() == 1;
    EXPECT_EQ(projection_properties(d).flag("faithful"), subsingletons) << name;
  }
}

TEST(Displayed, FibresAreCategories) {
  for (const auto& [name, d] : fx::displays()) {
    for (ObjIx c = 0; c < d.base().num_objects(); ++c) {
      FinCat f = fibre_category(d, c);
      EXPECT_TRUE(oracle::is_category(f)) << name << " at " << d.base().object_id(c);
      EXPECT_EQ(f.num_objects(), d.fibre(c).size());
    }
  }
}

TEST(Displayed, SliceOfTwoFamilies) {
  DispCat s = slice_display(fx::two());
  FinCat two = fx::two();
  // Over a: id_a. Over b: f and id_b.
  EXPECT_EQ(s.fibre(two.object("a")).size(), 1u);
  EXPECT_EQ(s.fibre(two.object("b")).size(), 2u);
  EXPECT_EQ(total_category(s).cat.num_objects(), 3u);
}

TEST(Displayed, OppositeIsAnInvolution) {
  for (const auto& [name, d] : fx::displays()) EXPECT_EQ(op_display(op_display(d)), d) << name;
}

TEST(Displayed, OppositeOfSliceMatchesCosliceOfOpposite) {
  for (const auto& [name, c] : fx::categories()) {
    DispCat a = op_display(slice_display(c));
    DispCat b = coslice_display(opposite(c));
    ASSERT_EQ(a.base(), b.base()) << name;
    EXPECT_EQ(a.num_dobjs(), b.num_dobjs()) << name;
    EXPECT_EQ(a.num_dmors(), b.num_dmors()) << name;
    for (MorIx f = 0; f < a.base().num_morphisms(); ++f) {
      EXPECT_EQ(a.over(f).size(), b.over(f).size()) << name << " over " << a.base().morphism_id(f);
    }
  }
}

TEST(Displayed, ReindexComparisonIsADisplayedFunctor) {
  for (const auto& [name, d] : fx::displays()) {
    if (!(d.base() == fx::div12())) continue;
    for (const FunctorData& F : {fx::gcd6(), fx::lcm2()}) {
      DispCat pulled = reindex(d, F);
      EXPECT_TRUE(check_disp_functor(reindex_functor(d, F, pulled)).passed()) << name;
    }
    EXPECT_EQ(reindex(d, identity_functor(d.base())), d) << name;
  }
}

TEST(Displayed, IdentityDisplayedFunctor) {
  for (const auto& [name, d] : fx::displays()) {
    DispFunctor G = identity_disp_functor(d);
    EXPECT_TRUE(check_disp_functor(G).passed()) << name;
    EXPECT_TRUE(is_isomorphism_of_categories(total_functor(G))) << name;
  }
}

TEST(Displayed, ConstantTotalIsEquivalentToProduct) {
  for (const auto& [n1, c] : fx::categories()) {
    for (const auto& [n2, c2] : fx::categories()) {
      DispCat dc = constant_display(c, c2);
      TotalCategory t = total_category(dc);
      FunctorData F = constant_product_comparison(c, c2, dc, t, product(c, c2));
      EXPECT_TRUE(check_equivalence(F).passed()) << n1 << " x " << n2;
      EXPECT_TRUE(oracle::is_equivalence(F)) << n1 << " x " << n2;
    }
  }
}

TEST(Displayed, SigmaComparisonIsAnEquivalence) {
  for (const auto& [name, d] : fx::displays()) {
    FinCat t = total_category(d).cat;
    std::vector<DispCat> families{full_sub_display(t, std::vector<bool>(t.num_objects(), true)),
                                  constant_display(t, fx::two())};
    if (t.num_morphisms() <= 200) families.push_back(slice_display(t));
    for (const DispCat& e : families) {
      DispCat s = sigma_display(d, e);
      ASSERT_TRUE(check_displayed_laws(s).passed()) << name;
      FunctorData F = sigma_comparison(d, e, s);
      EXPECT_TRUE(check_equivalence(F).passed()) << name;
      EXPECT_TRUE(oracle::is_equivalence(F)) << name;
    }
  }
}

TEST(Displayed, SliceViaSigmaIsEquivalentToDirectSlice) {
  for (const auto& [name, c] : fx::categories()) {
    for (bool co : {false, true}) {
      DispCat direct = co ? coslice_display(c) : slice_display(c);
      DispCat via = co ? coslice_via_sigma(c) : slice_via_sigma(c);
      DispFunctor G = slice_comparison(c, via, direct, co);
      EXPECT_TRUE(check_disp_functor(G).passed()) << name;
      FunctorData F = total_functor(G);
      EXPECT_TRUE(check_equivalence(F).passed()) << name;
      EXPECT_TRUE(oracle::is_equivalence(F)) << name;
    }
  }
}

TEST(Displayed, ArrowTotalIsTheArrowCategory) {
  for (const auto& [name, c] : fx::categories()) {
    DispCat arr = arrow_display(c);
    TotalCategory t = total_category(arr);
    FunctorData F = arrow_comparison(c, arr, t, arrow_category(c));
    EXPECT_TRUE(check_equivalence(F).passed()) << name;
    EXPECT_TRUE(oracle::is_equivalence(F)) << name;
  }
}

TEST(Displayed, EveryMutationOfLargeFixturesIsRejected) {
  std::size_t required = 0;
  for (const auto& [name, d] : fx::displays()) {
    MutationSurvey s = survey_mutations(d);
    EXPECT_EQ(s.mutants, s.entries * d.num_dmors()) << name;
    if (s.composable_pairs >= 3) {
      ++required;
      EXPECT_TRUE(s.all_rejected()) << name << ": " << (s.accepted.empty() ? "" : s.accepted.front());
    }
  }
  EXPECT_GE(required, 10u);
}

TEST(Displayed, TypedSurveyMatchesFullRecheck) {
  std::vector<std::pair<std::string, DispCat>> cases = fx::displays();
  for (const DispCat& d : random_displays(41, 60)) cases.emplace_back("random", d);
  for (const auto& [name, d] : cases) {
    if (d.composition_entries().size() * d.num_dmors() > 2000) continue;
    MutationSurvey fast = survey_mutations(d), full = survey_mutations(d, true);
    EXPECT_EQ(fast.rejected, full.rejected) << name;
    EXPECT_EQ(fast.accepted, full.accepted) << name;
  }
}

TEST(Displayed, SampledMutationsOfLargeDisplaysFailTheChecker) {
  std::mt19937_64 rng(29);
  for (const auto& [name, d] : fx::displays()) {
    const auto entries = d.composition_entries();
    if (entries.size() * d.num_dmors() <= 2000) continue;
    std::uniform_int_distribution<std::size_t> pick_entry(0, entries.size() - 1);
    std::uniform_int_distribution<DMorIx> pick_target(0, static_cast<DMorIx>(d.num_dmors()));
    for (int i = 0; i < 100; ++i) {
      const auto& [a, b, h] = entries[pick_entry(rng)];
      DMorIx t = pick_target(rng);
      std::optional<DMorIx> target;
      if (t < d.num_dmors()) target = t;
      if (target == h) continue;
      EXPECT_FALSE(check_displayed_laws(d.with_dcomp(a, b, target)).passed())
          << name << ": " << d.dmor_label(a) << ";" << d.dmor_label(b);
    }
  }
}

TEST(Displayed, MutantVerdictsAgreeWithOracle) {
  for (const auto& [name, d] : fx::displays()) {
    if (d.num_dmors() > 12) continue;
    for (const auto& [a, b, h] : d.composition_entries()) {
      for (DMorIx h2 = 0; h2 < d.num_dmors(); ++h2) {
        DispCat m = d.with_dcomp(a, b, h2);
        EXPECT_EQ(check_displayed_laws(m).passed(), oracle::is_displayed_category(m)) << name;
      }
    }
  }
}

TEST(Displayed, DisplayedFunctorEnumerationPassesLaws) {
  DispCat s = slice_display(fx::two());
  DispCat f = full_sub_display(fx::two(), {true, true});
  auto fs = enumerate_disp_functors(s, f, identity_functor(fx::two()));
  EXPECT_EQ(fs.size(), 1u);
  for (const auto& G : fs) EXPECT_TRUE(check_disp_functor(G).passed());
  auto back = enumerate_disp_functors(f, s, identity_functor(fx::two()));
  for (const auto& G : back) EXPECT_TRUE(check_disp_functor(G).passed());
}
