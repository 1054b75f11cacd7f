#include <gtest/gtest.h>

#include <numeric>

#include "dispcat/corpus.hpp"
#include "oracles.hpp"

using namespace dispcat;
namespace fx = dispcat::fixtures;

namespace {

const std::vector<std::pair<std::string, Graph>>& shapes() {
  static const std::vector<std::pair<std::string, Graph>> s{{"empty", empty_shape()},
                                                            {"single", single_node_shape()},
                                                            {"discrete2", discrete_two_shape()},
                                                            {"cospan", cospan_shape()}};
  return s;
}

}  // namespace

TEST(Limits, LimitingConesMatchOracle) {
  for (const auto& [name, c] : fx::categories()) {
    for (const auto& [sname, g] : shapes()) {
      for (const Diagram& dg : enumerate_diagrams(c, g)) {
        ASSERT_TRUE(check_diagram(dg).passed());
        EXPECT_EQ(limiting_cones(dg), oracle::limits(dg)) << name << " " << sname;
      }
    }
  }
}

TEST(Limits, Div12LimitsAreGcds) {
  FinCat c = fx::div12();
  auto top = find_limit(Diagram{empty_shape(), c, {}, {}});
  ASSERT_TRUE(top);
  EXPECT_EQ(c.object_id(top->vertex), "12");
  for (int x : fx::div12_elements()) {
    for (int y : fx::div12_elements()) {
      Diagram dg{discrete_two_shape(), c, {c.object(std::to_string(x)), c.object(std::to_string(y))}, {}};
      auto k = find_limit(dg);
      ASSERT_TRUE(k);
      EXPECT_EQ(c.object_id(k->vertex), std::to_string(std::gcd(x, y)));
    }
  }
}

TEST(Limits, IdentityConeOnSingleNodeIsLimiting) {
  for (const auto& [name, c] : fx::categories()) {
    for (ObjIx o = 0; o < c.num_objects(); ++o) {
      Diagram dg{single_node_shape(), c, {o}, {}};
      EXPECT_TRUE(is_limiting(dg, Cone{o, {c.identity(o)}}).passed()) << name;
    }
  }
}

TEST(Limits, NonMeetIsNotLimiting) {
  FinCat c = fx::div12();
  Diagram dg = fx::div12_cospan();
  Cone unit{c.object("1"), {fx::div_mor(c, 1, 4), fx::div_mor(c, 1, 12), fx::div_mor(c, 1, 6)}};
  EXPECT_TRUE(is_cone(dg, unit));
  EXPECT_FALSE(is_limiting(dg, unit).passed());
  Cone meet{c.object("2"), {fx::div_mor(c, 2, 4), fx::div_mor(c, 2, 12), fx::div_mor(c, 2, 6)}};
  EXPECT_TRUE(is_limiting(dg, meet).passed());
}

TEST(Limits, PullbackAgreesWithLimitingOnCospans) {
  for (const auto& [name, c] : fx::categories()) {
    for (const Diagram& dg : enumerate_diagrams(c, cospan_shape())) {
      for (ObjIx v = 0; v < c.num_objects(); ++v) {
        for (const Cone& k : cones_at(dg, v)) {
          Square s{dg.on_edge[0], dg.on_edge[1], k.legs[0], k.legs[2]};
          EXPECT_EQ(is_pullback(c, s).passed(), is_limiting(dg, k).passed()) << name;
        }
      }
    }
  }
}

TEST(Creation, AlgebrasCreateLimitsOfEveryShape) {
  for (const FunctorData& F : {fx::gcd6(), fx::lcm2(), fx::lcm3()}) {
    DispCat d = endofunctor_algebra_display(F);
    for (const auto& [sname, g] : shapes()) {
      Report r = creates_limits_of_shape(d, g);
      EXPECT_TRUE(r.passed()) << sname;
      EXPECT_GT(r.details["diagrams"].get<std::size_t>(), 0u) << sname;
    }
  }
  EXPECT_TRUE(creates_limits_of_shape(monad_algebra_display(fx::lcm2_monad()), cospan_shape()).passed());
}

TEST(Creation, EndofunctorsAreDistinctAndMonotone) {
  FunctorData a = fx::gcd6(), b = fx::lcm2(), c = fx::lcm3();
  EXPECT_NE(a.on_obj, b.on_obj);
  EXPECT_NE(b.on_obj, c.on_obj);
  EXPECT_NE(a.on_obj, c.on_obj);
  for (const FunctorData& F : {a, b, c}) EXPECT_TRUE(oracle::is_functor(F));
}

TEST(Creation, CreatedLimitProjectsExactly) {
  for (const FunctorData& F : {fx::gcd6(), fx::lcm2(), fx::lcm3()}) {
    DispCat d = endofunctor_algebra_display(F);
    TotalCategory t = total_category(d);
    for (const auto& [sname, g] : shapes()) {
      for (const Diagram& dg : enumerate_diagrams(t.cat, g)) {
        Diagram base = project_diagram(d, t, dg);
        for (const Cone& lambda : limiting_cones(base)) {
          std::optional<DispCone> w;
          ASSERT_TRUE(creates_limit(d, t, dg, lambda, &w).passed());
          ASSERT_TRUE(w);
          EXPECT_TRUE(oracle::creates(d, t, dg, lambda)) << sname;
          Cone k = total_limit_from_creation(d, t, dg, lambda, *w);
          Cone projected{t.projection.on_obj[k.vertex], {}};
          for (MorIx m : k.legs) projected.legs.push_back(t.projection.on_mor[m]);
          EXPECT_EQ(projected, lambda) << sname;
          EXPECT_TRUE(oracle::is_limit(dg, k)) << sname;
        }
      }
    }
  }
}

TEST(Creation, VerdictsAgreeWithOracleOnOtherDisplays) {
  for (const char* name : {"Slice_Two", "ConstTwoTwo", "FullSubDiv12", "Idempotent", "ElemsYonTwoB"}) {
    DispCat d;
    for (const auto& [n, v] : fx::displays()) {
      if (n == name) d = v;
    }
    TotalCategory t = total_category(d);
    for (const auto& [sname, g] : shapes()) {
      bool all = true;
      for (const Diagram& dg : enumerate_diagrams(t.cat, g)) {
        for (const Cone& lambda : oracle::limits(project_diagram(d, t, dg))) {
          const bool lib = creates_limit(d, t, dg, lambda).passed();
          EXPECT_EQ(lib, oracle::creates(d, t, dg, lambda)) << name << " " << sname;
          all = all && lib;
        }
      }
      EXPECT_EQ(creates_limits_of_shape(d, g).passed(), all) << name << " " << sname;
    }
  }
}

TEST(Creation, GcdAlgebraCospan) {
  DispCat d = endofunctor_algebra_display(fx::gcd6());
  TotalCategory t = total_category(d);
  Diagram dg = fx::gcd6_algebra_cospan();
  ASSERT_TRUE(check_diagram(dg).passed());
  Diagram base = project_diagram(d, t, dg);
  EXPECT_EQ(base, fx::div12_cospan());
  auto lambdas = limiting_cones(base);
  ASSERT_EQ(lambdas.size(), 1u);
  std::optional<DispCone> w;
  EXPECT_TRUE(creates_limit(d, t, dg, lambdas.front(), &w).passed());
}
