#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dispcat;
namespace fx = dispcat::fixtures;

namespace {

std::vector<DispCat> random_corpus() {
  random::Rng rng(2024);
  std::vector<DispCat> out;
  for (int i = 0; i < 1000; ++i) out.push_back(random::random_display(rng));
  return out;
}

}  // namespace

TEST(UnivalentDisplay, AgreesWithOracle) {
  for (const auto& [name, d] : fx::displays()) {
    EXPECT_EQ(is_univalent_display(d).passed(), oracle::is_univalent_display(d)) << name;
  }
  for (const DispCat& d : random_corpus()) {
    ASSERT_EQ(is_univalent_display(d).passed(), oracle::is_univalent_display(d));
  }
}

TEST(UnivalentDisplay, CorpusVerdicts) {
  std::map<std::string, bool> expect{{"ConstWIso", false},   {"ConstBZ2", false},    {"Slice_Div12", true},
                                     {"Slice_BZ2", false},   {"MagmaOrd2", true},    {"IndiscretePair", false},
                                     {"FAlgGcd6", true},     {"ElemsSwapBZ2", true}, {"ConstTwoTwo", true}};
  for (const auto& [name, d] : fx::displays()) {
    auto it = expect.find(name);
    if (it != expect.end()) {
      EXPECT_EQ(is_univalent_display(d).passed(), it->second) << name;
    }
  }
}

TEST(UnivalentDisplay, ConstWIsoWitnessIsAnIso) {
  DispCat d = constant_display(fx::div12(), fx::wiso());
  Report r = is_univalent_display(d);
  ASSERT_FALSE(r.passed());
  ASSERT_FALSE(r.findings.empty());
  EXPECT_EQ(r.findings.front().code, "iso_between_distinct_objects");
}

TEST(RandomCorpus, RespectsSizeLimits) {
  for (const DispCat& d : random_corpus()) {
    EXPECT_LE(d.base().num_objects(), 4u);
    EXPECT_LE(d.base().num_morphisms(), 10u);
    for (ObjIx c = 0; c < d.base().num_objects(); ++c) EXPECT_LE(d.fibre(c).size(), 3u);
  }
}

TEST(TotalUnivalence, ImplicationHoldsOnRandomAndCorpus) {
  std::size_t vacuous = 0, nonvacuous = 0;
  auto one = [&](const DispCat& d) {
    Report r = total_univalence_check(d);
    EXPECT_NE(r.verdict, Verdict::error);
    EXPECT_EQ(r.flag("total_univalent"), oracle::total_is_gaunt(d));
    const bool premise = oracle::is_gaunt(d.base()) && oracle::is_univalent_display(d);
    EXPECT_EQ(r.flag("vacuous"), !premise);
    if (premise) {
      EXPECT_TRUE(oracle::total_is_gaunt(d));
    }
    (premise ? nonvacuous : vacuous) += 1;
  };
  for (const DispCat& d : random_corpus()) one(d);
  for (const auto& [name, d] : fx::displays()) one(d);
  EXPECT_GT(vacuous, 0u);
  EXPECT_GT(nonvacuous, 0u);
}

TEST(UniqueLifts, UnivalentCorpusDisplaysHaveAtMostOneLift) {
  std::size_t univalent = 0, fibrations = 0;
  for (const auto& [name, d] : fx::displays()) {
    if (!is_univalent_display(d).passed()) {
      EXPECT_THROW(unique_cartesian_lifts_check(d), Error) << name;
      continue;
    }
    ++univalent;
    const FinCat& C = d.base();
    for (MorIx f = 0; f < C.num_morphisms(); ++f) {
      for (DObjIx x : d.fibre(C.dst(f))) EXPECT_LE(cartesian_lifts(d, f, x).size(), 1u) << name;
    }
    Report r = unique_cartesian_lifts_check(d);
    EXPECT_TRUE(r.passed()) << name;
    if (r.flag("weak_fibration")) {
      ++fibrations;
      EXPECT_EQ(enumerate_cleavings(d).size(), 1u) << name;
    }
  }
  EXPECT_GT(univalent, 5u);
  EXPECT_GT(fibrations, 0u);
}

TEST(UniqueLifts, NonUnivalentDisplayCanHaveSeveralLifts) {
  DispCat d = constant_display(fx::two(), fx::wiso());
  const FinCat& C = d.base();
  std::size_t most = 0;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) most = std::max(most, cartesian_lifts(d, f, x).size());
  }
  EXPECT_GT(most, 1u);
}

TEST(Sip, MagmasOverOrd2AreUnivalent) {
  StandardStructure s = fx::ord2_magmas();
  EXPECT_TRUE(oracle::is_gaunt(s.base));
  Report st = check_standard_structure(s);
  EXPECT_TRUE(st.passed());
  DispCat d = sip_to_display(s);
  EXPECT_TRUE(check_displayed_laws(d).passed());
  EXPECT_TRUE(is_univalent_display(d).passed());
  EXPECT_TRUE(oracle::is_univalent_display(d));
  EXPECT_TRUE(is_univalent_category(total_category(d).cat).passed());
  Report r = sip_univalence_check(s);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.flag("total_univalent"));
}

TEST(Sip, Ord2SitsInsideFinSet2) {
  FinCat o = fx::ord2(), f = fx::finset2();
  EXPECT_EQ(o.objects(), f.objects());
  for (const Morph& m : o.morphisms()) EXPECT_TRUE(f.find_morphism(m.id)) << m.id;
  EXPECT_LT(o.num_morphisms(), f.num_morphisms());
}

TEST(Sip, MagmaCountsFromFirstPrinciples) {
  StandardStructure s = fx::ord2_magmas();
  // n^(n*n) binary operations on an n-element set.
  std::vector<std::size_t> sizes;
  for (const auto& p : s.P) sizes.push_back(p.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 16}));
}

TEST(Sip, IndiscreteStructureFailsAntisymmetry) {
  StandardStructure s = fx::indiscrete_pair();
  Report st = check_standard_structure(s);
  EXPECT_TRUE(st.flag("identity_closed"));
  EXPECT_TRUE(st.flag("composition_closed"));
  EXPECT_FALSE(st.flag("antisymmetric"));
  ASSERT_EQ(st.findings.size(), 1u);
  EXPECT_EQ(st.findings.front().code, "not_antisymmetric");
  DispCat d = sip_to_display(s);
  EXPECT_FALSE(is_univalent_display(d).passed());
  EXPECT_FALSE(oracle::is_univalent_display(d));
  Report r = sip_univalence_check(s);
  EXPECT_EQ(r.verdict, Verdict::fail);
}

TEST(Sip, AlgebraDisplaysArePresentedByStructures) {
  for (const FunctorData& F : {fx::gcd6(), fx::lcm2(), fx::lcm3(), identity_functor(fx::wiso())}) {
    Report r = algebra_display_univalence(F);
    EXPECT_TRUE(r.flag("structure_presentation_matches"));
  }
  EXPECT_TRUE(algebra_display_univalence(fx::lcm2_monad()).flag("structure_presentation_matches"));
}

TEST(Sip, ClosureFailureIsRejected) {
  StandardStructure s = fx::indiscrete_pair();
  s.H.erase({0, 0, 0});
  EXPECT_FALSE(check_standard_structure(s).flag("identity_closed"));
  EXPECT_THROW(sip_to_display(s), Error);
}

TEST(Amnestic, AgreesWithUnivalenceOnCorpusAndRandom) {
  for (const auto& [name, d] : fx::displays()) {
    Report r = amnestic_iff_univalent_check(d);
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_EQ(r.flag("projection_amnestic"), oracle::is_amnestic(total_category(d).projection)) << name;
  }
  for (const DispCat& d : random_corpus()) {
    Report r = amnestic_iff_univalent_check(d);
    ASSERT_TRUE(r.passed());
    ASSERT_EQ(r.flag("projection_amnestic"), oracle::is_univalent_display(d));
  }
}

TEST(Amnestic, WIsoToOneIsNotAmnestic) {
  FunctorData F = fx::wiso_to_one();
  EXPECT_FALSE(is_amnestic(F).passed());
  EXPECT_FALSE(oracle::is_amnestic(F));
  EXPECT_TRUE(is_amnestic(identity_functor(fx::wiso())).passed());
}
