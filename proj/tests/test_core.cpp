#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace dispcat;
namespace fx = dispcat::fixtures;

namespace {

std::vector<FinCat> generated_categories() {
  std::vector<FinCat> out;
  for (const auto& [name, c] : fx::categories()) {
    out.push_back(c);
    out.push_back(opposite(c));
    out.push_back(arrow_category(c));
  }
  out.push_back(product(fx::two(), fx::wiso()));
  out.push_back(product(fx::bz2(), fx::bz2()));
  out.push_back(full_subcategory(fx::div12(), fx::select_objects(fx::div12(), {"2", "3", "12"})));
  out.push_back(functor_category(fx::two(), fx::two()).cat);
  random::Rng rng(11);
  for (int i = 0; i < 50; ++i) out.push_back(random::random_preorder(rng));
  return out;
}

}  // namespace

TEST(Category, FixturesPassLaws) {
  for (const auto& [name, c] : fx::categories()) {
    EXPECT_TRUE(check_category_laws(c).passed()) << name;
    EXPECT_TRUE(oracle::is_category(c)) << name;
  }
}

TEST(Category, GeneratedCategoriesAgreeWithOracle) {
  for (const FinCat& c : generated_categories()) {
    EXPECT_EQ(check_category_laws(c).passed(), oracle::is_category(c));
    EXPECT_TRUE(check_category_laws(c).passed());
  }
}

TEST(Category, FixtureSizes) {
  FinCat d = fx::div12();
  EXPECT_EQ(d.num_objects(), 6u);
  // 1|x for 6 x, 2|{2,4,6,12}, 3|{3,6,12}, 4|{4,12}, 6|{6,12}, 12|12.
  EXPECT_EQ(d.num_morphisms(), 18u);
  EXPECT_EQ(fx::two().num_morphisms(), 3u);
  EXPECT_EQ(fx::wiso().num_morphisms(), 4u);
  EXPECT_EQ(fx::bz2().num_morphisms(), 2u);
  // Functions out of the sets of size 0, 1, 2: (1 + 1 + 1) + (0 + 1 + 2) + (0 + 1 + 4).
  EXPECT_EQ(fx::finset2().num_objects(), 3u);
  EXPECT_EQ(fx::finset2().num_morphisms(), 11u);
}

TEST(Category, MissingCompositeNamesThePair) {
  FinCat two = fx::two();
  MorIx f = two.morphism_ix("f");
  MorIx ida = two.identity(two.object("a"));
  FinCat bad = two.with_composite(ida, f, std::nullopt);
  Report r = check_category_laws(bad);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.findings.front().code, "missing_composite");
  EXPECT_EQ(r.findings.front().witnesses, (std::vector<std::string>{"id_a", "f"}));
}

TEST(Category, EveryMutationOfLargeFixturesIsRejected) {
  for (const auto& [name, c] : fx::categories()) {
    MutationSurvey s = survey_mutations(c);
    EXPECT_EQ(s.mutants, s.entries * c.num_morphisms()) << name;
    if (s.composable_pairs >= 3) {
      EXPECT_TRUE(s.all_rejected()) << name << ": " << (s.accepted.empty() ? "" : s.accepted.front());
    }
  }
}

TEST(Category, MutantVerdictsAgreeWithOracle) {
  for (const char* name : {"Two", "WIso", "BZ2", "TwoPlusTwo"}) {
    FinCat c;
    for (const auto& [n, v] : fx::categories()) {
      if (n == name) c = v;
    }
    for (const auto& [f, g, h] : c.composition_entries()) {
      for (MorIx h2 = 0; h2 < c.num_morphisms(); ++h2) {
        FinCat m = c.with_composite(f, g, h2);
        EXPECT_EQ(check_category_laws(m).passed(), oracle::is_category(m)) << name;
      }
    }
  }
}

TEST(Category, OppositeIsAnInvolution) {
  for (const FinCat& c : generated_categories()) EXPECT_EQ(opposite(opposite(c)), c);
}

TEST(Category, ProductWithOneIsEquivalent) {
  for (const auto& [name, c] : fx::categories()) {
    FinCat p = product(c, fx::one());
    FunctorData pr = product_projection(c, fx::one(), p, true);
    EXPECT_TRUE(check_functor_laws(pr).passed()) << name;
    EXPECT_TRUE(check_equivalence(pr).passed()) << name;
    EXPECT_TRUE(is_isomorphism_of_categories(pr)) << name;
  }
}

TEST(Category, IsoInverseIsSymmetric) {
  for (const FinCat& c : generated_categories()) {
    for (MorIx f = 0; f < c.num_morphisms(); ++f) {
      auto g = is_iso(c, f);
      EXPECT_EQ(g.has_value(), oracle::is_iso(c, f));
      if (g) {
        EXPECT_EQ(is_iso(c, *g), f);
      }
    }
  }
}

TEST(Category, UnivalenceAgreesWithOracle) {
  for (const FinCat& c : generated_categories()) {
    EXPECT_EQ(is_univalent_category(c).passed(), oracle::is_gaunt(c));
  }
  EXPECT_TRUE(is_univalent_category(fx::div12()).passed());
  EXPECT_TRUE(is_univalent_category(fx::ord2()).passed());
  EXPECT_FALSE(is_univalent_category(fx::wiso()).passed());
  EXPECT_FALSE(is_univalent_category(fx::bz2()).passed());
  EXPECT_FALSE(is_univalent_category(fx::finset2()).passed());
}

TEST(Functor, EnumerationMatchesBruteForce) {
  const std::vector<FinCat> small{fx::one(), fx::two(), fx::wiso(), fx::bz2()};
  for (const FinCat& c : small) {
    for (const FinCat& d : small) {
      auto fs = enumerate_functors(c, d);
      std::size_t brute = 0;
      FunctorData F{c, d, std::vector<ObjIx>(c.num_objects()), std::vector<MorIx>(c.num_morphisms())};
      std::function<void(std::size_t)> go_mor = [&](std::size_t i) {
        if (i == c.num_morphisms()) {
          brute += oracle::is_functor(F);
          return;
        }
        for (MorIx g = 0; g < d.num_morphisms(); ++g) {
          F.on_mor[i] = g;
          go_mor(i + 1);
        }
      };
      std::function<void(std::size_t)> go_obj = [&](std::size_t i) {
        if (i == c.num_objects()) return go_mor(0);
        for (ObjIx o = 0; o < d.num_objects(); ++o) {
          F.on_obj[i] = o;
          go_obj(i + 1);
        }
      };
      go_obj(0);
      EXPECT_EQ(fs.size(), brute);
      for (const auto& G : fs) {
        EXPECT_TRUE(check_functor_laws(G).passed());
        EXPECT_EQ(check_equivalence(G).passed(), oracle::is_equivalence(G));
      }
    }
  }
}

TEST(Functor, FixtureFunctorsPassLaws) {
  for (const FunctorData& F : {fx::gcd6(), fx::lcm2(), fx::lcm3(), fx::wiso_to_one()}) {
    EXPECT_TRUE(check_functor_laws(F).passed());
    EXPECT_TRUE(oracle::is_functor(F));
  }
  FunctorData bad = fx::gcd6();
  bad.on_mor[bad.dom.morphism_ix("d1_2")] = bad.cod.morphism_ix("d1_3");
  EXPECT_FALSE(check_functor_laws(bad).passed());
  EXPECT_FALSE(oracle::is_functor(bad));
}

TEST(Functor, FunctorCategoryFromOneIsEquivalentToTarget) {
  for (const auto& [name, c] : fx::categories()) {
    FunctorCategory fc = functor_category(fx::one(), c);
    EXPECT_TRUE(check_category_laws(fc.cat).passed()) << name;
    EXPECT_EQ(fc.cat.num_objects(), c.num_objects()) << name;
    EXPECT_EQ(fc.cat.num_morphisms(), c.num_morphisms()) << name;
  }
}

TEST(Functor, WhiskeredMonadTransformationsAreNatural) {
  Monad m = fx::lcm2_monad();
  EXPECT_TRUE(check_monad(m).passed());
  EXPECT_TRUE(check_nat_trans(m.mu).passed());
  EXPECT_TRUE(check_nat_trans(m.eta).passed());
  EXPECT_TRUE(check_nat_trans(whisker_right(m.eta, m.T)).passed());
  EXPECT_TRUE(check_nat_trans(whisker_left(m.T, m.eta)).passed());
}

TEST(Presheaf, FixturesPassLaws) {
  for (const auto& [name, p] : fx::presheaves()) EXPECT_TRUE(check_presheaf_laws(p).passed()) << name;
}

TEST(Presheaf, RepresentableOfTwoAtB) {
  Presheaf p = fx::yoneda_two_b();
  FinCat two = fx::two();
  EXPECT_EQ(p.sets[two.object("a")], (std::vector<std::string>{"f"}));
  EXPECT_EQ(p.sets[two.object("b")], (std::vector<std::string>{"id_b"}));
}

TEST(Presheaf, MutatedRestrictionFails) {
  Presheaf p = fx::div12_divisors();
  bool any = false;
  for (MorIx f = 0; f < p.base.num_morphisms() && !any; ++f) {
    if (p.base.is_identity(f)) continue;
    for (std::uint32_t i = 0; i < p.restrict[f].size() && !any; ++i) {
      Presheaf q = p;
      q.restrict[f][i] = (q.restrict[f][i] + 1) % p.sets[p.base.src(f)].size();
      if (q.restrict[f][i] == p.restrict[f][i]) continue;
      EXPECT_FALSE(check_presheaf_laws(q).passed());
      any = true;
    }
  }
  EXPECT_TRUE(any);
}
