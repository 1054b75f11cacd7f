#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dispcat/compcat.hpp"
#include "dispcat/univalence.hpp"

/// The shipped fixture corpus, built programmatically.
namespace dispcat::fixtures {

/// A thin category from a reflexive, transitive relation; the arrow x -> y is
/// named by `name(x, y)`.
inline FinCat thin_category(const std::vector<std::string>& objs, const std::function<bool(std::size_t, std::size_t)>& leq,
                            const std::function<std::string(std::size_t, std::size_t)>& name) {
  CategoryBuilder b;
  for (const auto& o : objs) b.add_object(o);
  const std::size_t n = objs.size();
  std::vector<MorIx> m(n * n, kNone);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) {
        m[x * n + y] = b.identity_ref(static_cast<ObjIx>(x));
      } else if (leq(x, y)) {
        m[x * n + y] = b.add_morphism(name(x, y), static_cast<ObjIx>(x), static_cast<ObjIx>(y));
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || m[x * n + y] == kNone) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (y == z || m[y * n + z] == kNone) continue;
        b.set_composite(m[x * n + y], m[y * n + z], m[x * n + z]);
      }
    }
  }
  return b.build();
}

inline FinCat one() { return one_category(); }

inline FinCat two() {
  CategoryBuilder b;
  b.object("a").object("b").morphism("f", "a", "b");
  return b.build();
}

/// Two disjoint walking arrows; has no binary products.
inline FinCat two_plus_two() {
  CategoryBuilder b;
  b.object("a").object("b").object("c").object("d").morphism("f", "a", "b").morphism("g", "c", "d");
  return b.build();
}

inline FinCat wiso() {
  CategoryBuilder b;
  b.object("a").object("b").morphism("i", "a", "b").morphism("j", "b", "a");
  b.compose("i", "j", "id_a").compose("j", "i", "id_b");
  return b.build();
}

inline FinCat bz2() {
  CategoryBuilder b;
  b.object("o").morphism("s", "o", "o").compose("s", "s", "id_o");
  return b.build();
}

inline const std::vector<int>& div12_elements() {
  static const std::vector<int> v{1, 2, 3, 4, 6, 12};
  return v;
}

inline std::string div_arrow(int x, int y) { return "d" + std::to_string(x) + "_" + std::to_string(y); }

/// The divisors of 12 with x -> y iff x divides y; 12 is terminal, meets are gcd.
inline FinCat div12() {
  const auto& v = div12_elements();
  std::vector<std::string> objs;
  for (int x : v) objs.push_back(std::to_string(x));
  return thin_category(
      objs, [&](std::size_t i, std::size_t j) { return v[j] % v[i] == 0; },
      [&](std::size_t i, std::size_t j) { return div_arrow(v[i], v[j]); });
}

/// The arrow x -> y of Div12 (identity when x = y).
inline MorIx div_mor(const FinCat& c, int x, int y) {
  if (x == y) return c.identity(c.object(std::to_string(x)));
  return c.morphism_ix(div_arrow(x, y));
}

namespace detail {

/// Functions {0..n-1} -> {0..m-1} as value strings, in lexicographic order.
inline std::vector<std::string> functions(int n, int m) {
  std::vector<std::string> out{""};
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& s : out) {
      for (int v = 0; v < m; ++v) next.push_back(s + std::to_string(v));
    }
    out = std::move(next);
  }
  return out;
}

inline bool monotone(const std::string& vals) {
  return std::is_sorted(vals.begin(), vals.end());
}

inline std::string identity_values(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += std::to_string(i);
  return s;
}

/// Sets {}, {0}, {0,1} and the functions between them accepted by `keep`.
inline FinCat small_sets(const std::function<bool(const std::string&)>& keep) {
  CategoryBuilder b;
  for (int n = 0; n <= 2; ++n) b.add_object("s" + std::to_string(n));
  auto name = [](int n, int m, const std::string& vals) {
    return "f" + std::to_string(n) + std::to_string(m) + "_" + vals;
  };
  // (n, m, values) -> builder reference
  std::map<std::tuple<int, int, std::string>, MorIx> ref;
  for (int n = 0; n <= 2; ++n) {
    for (int m = 0; m <= 2; ++m) {
      for (const auto& vals : functions(n, m)) {
        if (!keep(vals)) continue;
        ref[{n, m, vals}] = n == m && vals == identity_values(n)
                                ? b.identity_ref(static_cast<ObjIx>(n))
                                : b.add_morphism(name(n, m, vals), static_cast<ObjIx>(n), static_cast<ObjIx>(m));
      }
    }
  }
  for (const auto& [k1, r1] : ref) {
    for (const auto& [k2, r2] : ref) {
      const auto& [n, m, v1] = k1;
      const auto& [m2, p, v2] = k2;
      if (m != m2 || CategoryBuilder::is_identity_ref(r1) || CategoryBuilder::is_identity_ref(r2)) continue;
      std::string vals;
      for (char c : v1) vals += v2[static_cast<std::size_t>(c - '0')];
      b.set_composite(r1, r2, ref.at({n, p, vals}));
    }
  }
  return b.build();
}

}  // namespace detail

/// Sets of size at most two, {} {0} {0,1}, with all functions. Morphisms are
/// `f<n><m>_<values>`.
inline FinCat finset2() {
  return detail::small_sets([](const std::string&) { return true; });
}

/// The wide subcategory of FinSet2 on monotone maps: a gaunt category on the
/// same representatives.
inline FinCat ord2() { return detail::small_sets(detail::monotone); }

inline std::vector<std::pair<std::string, FinCat>> categories() {
  return {{"One", one()},     {"Two", two()},     {"TwoPlusTwo", two_plus_two()}, {"WIso", wiso()},
          {"BZ2", bz2()},     {"Div12", div12()}, {"FinSet2", finset2()},         {"Ord2", ord2()}};
}

// ---------------------------------------------------------------------------
// Functors, monads

/// Endofunctor of Div12 given by an object map (monotone for divisibility).
inline FunctorData div12_endofunctor(const std::function<int(int)>& t) {
  FinCat c = div12();
  FunctorData F{c, c, std::vector<ObjIx>(c.num_objects()), std::vector<MorIx>(c.num_morphisms())};
  for (int x : div12_elements()) F.on_obj[c.object(std::to_string(x))] = c.object(std::to_string(t(x)));
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    int x = std::stoi(c.object_id(c.src(f))), y = std::stoi(c.object_id(c.dst(f)));
    F.on_mor[f] = div_mor(c, t(x), t(y));
  }
  return F;
}

inline FunctorData gcd6() { return div12_endofunctor([](int x) { return std::gcd(x, 6); }); }
inline FunctorData lcm2() { return div12_endofunctor([](int x) { return std::lcm(x, 2); }); }
inline FunctorData lcm3() { return div12_endofunctor([](int x) { return std::lcm(x, 3); }); }

/// The closure monad x |-> lcm(x, 2) on Div12; its algebras are the even divisors.
inline Monad lcm2_monad() {
  FunctorData T = lcm2();
  const FinCat& c = T.dom;
  NatTransData mu{compose_functors(T, T), T, {}};
  NatTransData eta{identity_functor(c), T, {}};
  mu.components.assign(c.num_objects(), kNone);
  eta.components.assign(c.num_objects(), kNone);
  for (int x : div12_elements()) {
    ObjIx o = c.object(std::to_string(x));
    int tx = std::lcm(x, 2);
    mu.components[o] = div_mor(c, tx, tx);
    eta.components[o] = div_mor(c, x, tx);
  }
  return {T, mu, eta};
}

inline FunctorData wiso_to_one() { return terminal_functor(wiso(), one()); }

// ---------------------------------------------------------------------------
// Presheaves

inline Presheaf yoneda_two_b() { return representable_presheaf(two(), two().object("b")); }

/// The two-element set with s acting by swapping.
inline Presheaf bz2_swap() {
  PresheafBuilder b(bz2());
  b.element("o", "x").element("o", "y").action("s", "x", "y").action("s", "y", "x");
  return b.build();
}

/// Ty(Γ) = divisors of Γ, restricted along Γ' | Γ by A |-> gcd(A, Γ').
inline Presheaf div12_divisors() {
  FinCat c = div12();
  PresheafBuilder b(c);
  for (int g : div12_elements()) {
    for (int a : div12_elements()) {
      if (g % a == 0) b.element(std::to_string(g), std::to_string(a));
    }
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    int g2 = std::stoi(c.object_id(c.src(f))), g = std::stoi(c.object_id(c.dst(f)));
    for (int a : div12_elements()) {
      if (g % a == 0) b.action(c.morphism_id(f), std::to_string(a), std::to_string(std::gcd(a, g2)));
    }
  }
  return b.build();
}

inline std::vector<std::pair<std::string, Presheaf>> presheaves() {
  return {{"YonTwoB", yoneda_two_b()},
          {"TermDiv12", terminal_presheaf(div12())},
          {"SwapBZ2", bz2_swap()},
          {"Divisors", div12_divisors()}};
}

// ---------------------------------------------------------------------------
// Categories with attributes

inline CwA div12_cwa() {
  FinCat c = div12();
  Presheaf ty = div12_divisors();
  CwA w{c, ty, {}, {}, {}};
  w.ext.resize(c.num_objects());
  w.proj.resize(c.num_objects());
  w.q.resize(c.num_morphisms());
  for (ObjIx g = 0; g < c.num_objects(); ++g) {
    int gi = std::stoi(c.object_id(g));
    for (const auto& a : ty.sets[g]) {
      w.ext[g].push_back(c.object(a));
      w.proj[g].push_back(div_mor(c, std::stoi(a), gi));
    }
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    int g2 = std::stoi(c.object_id(c.src(f)));
    for (const auto& a : ty.sets[c.dst(f)]) {
      int ai = std::stoi(a);
      w.q[f].push_back(div_mor(c, std::gcd(ai, g2), ai));
    }
  }
  return w;
}

namespace detail {

/// Singleton types with Γ.* = ext(Γ) and projection/substitution forced by thinness.
inline CwA div12_singleton_cwa(const std::function<int(int)>& ext) {
  FinCat c = div12();
  Presheaf ty = terminal_presheaf(c);
  CwA w{c, ty, {}, {}, {}};
  for (ObjIx g = 0; g < c.num_objects(); ++g) {
    int gi = std::stoi(c.object_id(g));
    w.ext.push_back({c.object(std::to_string(ext(gi)))});
    w.proj.push_back({div_mor(c, ext(gi), gi)});
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    int g2 = std::stoi(c.object_id(c.src(f))), g = std::stoi(c.object_id(c.dst(f)));
    w.q.push_back({div_mor(c, ext(g2), ext(g))});
  }
  return w;
}

}  // namespace detail

/// Γ.* = Γ with identity projections.
inline CwA trivial_cwa() {
  return detail::div12_singleton_cwa([](int g) { return g; });
}

/// Squares commute but Γ.* = 1 for Γ ≠ 12 breaks the pullback condition.
inline CwA non_pullback_cwa() {
  return detail::div12_singleton_cwa([](int g) { return g == 12 ? 12 : 1; });
}

inline std::vector<std::pair<std::string, CwA>> cwas() {
  return {{"DivCwA", div12_cwa()}, {"TrivialCwA", trivial_cwa()}, {"NonPullbackCwA", non_pullback_cwa()}};
}

// ---------------------------------------------------------------------------
// Standard structures

/// Binary operations on each object of Ord2, with H = homomorphism. An
/// operation on s<n> is named `m` followed by its values at (0,0), (0,1), ...
inline StandardStructure ord2_magmas() {
  FinCat c = ord2();
  StandardStructure s{c, std::vector<std::vector<std::string>>(c.num_objects()), {}};
  std::vector<std::vector<std::string>> vals(c.num_objects());
  for (ObjIx o = 0; o < c.num_objects(); ++o) {
    int n = std::stoi(c.object_id(o).substr(1));
    vals[o] = detail::functions(n * n, n);
    for (const auto& v : vals[o]) s.P[o].push_back("m" + v);
  }
  auto apply = [&](MorIx f, int x) -> int {
    if (c.is_identity(f)) return x;
    const std::string& id = c.morphism_id(f);
    return id[id.find('_') + 1 + static_cast<std::size_t>(x)] - '0';
  };
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    ObjIx a = c.src(f), b = c.dst(f);
    int n = std::stoi(c.object_id(a).substr(1));
    int m = std::stoi(c.object_id(b).substr(1));
    for (std::uint32_t i = 0; i < vals[a].size(); ++i) {
      for (std::uint32_t j = 0; j < vals[b].size(); ++j) {
        bool hom = true;
        for (int x = 0; x < n && hom; ++x) {
          for (int y = 0; y < n && hom; ++y) {
            int lhs = apply(f, vals[a][i][static_cast<std::size_t>(x * n + y)] - '0');
            int rhs = vals[b][j][static_cast<std::size_t>(apply(f, x) * m + apply(f, y))] - '0';
            hom = lhs == rhs;
          }
        }
        if (hom) s.H.insert({f, i, j});
      }
    }
  }
  return s;
}

/// Two structures on the point related both ways by the identity.
inline StandardStructure indiscrete_pair() {
  FinCat c = one();
  StandardStructure s{c, {{"p", "q"}}, {}};
  for (std::uint32_t i = 0; i < 2; ++i) {
    for (std::uint32_t j = 0; j < 2; ++j) s.H.insert({0, i, j});
  }
  return s;
}

inline std::vector<std::pair<std::string, StandardStructure>> structures() {
  return {{"Magmas", ord2_magmas()}, {"Indiscrete", indiscrete_pair()}};
}

// ---------------------------------------------------------------------------
// Displays

/// Over Two: an idempotent e on x and a lift u with e;u = u, so u factors
/// through itself twice and is not cartesian.
inline DispCat idempotent_display() {
  FinCat c = two();
  DispBuilder b(c);
  DObjIx x = b.add_dobj(c.object("a"), "x");
  DObjIx y = b.add_dobj(c.object("b"), "y");
  MorIx ida = c.identity(c.object("a"));
  DMorIx one_x = b.add_dmor(ida, x, x, "1");
  DMorIx e = b.add_dmor(ida, x, x, "e");
  DMorIx u = b.add_dmor(c.morphism_ix("f"), x, y, "u");
  DMorIx one_y = b.add_dmor(c.identity(c.object("b")), y, y, "1");
  b.set_did(x, one_x).set_did(y, one_y);
  b.set_dcomp(e, e, e).set_dcomp(e, u, u);
  return b.build();
}

inline std::vector<bool> select_objects(const FinCat& c, const std::vector<std::string>& ids) {
  std::vector<bool> s(c.num_objects(), false);
  for (const auto& id : ids) s[c.object(id)] = true;
  return s;
}

/// Every display in the corpus, paired with its declaration name.
inline std::vector<std::pair<std::string, DispCat>> displays() {
  FinCat d12 = div12();
  return {
      {"FullSubDiv12", full_sub_display(d12, select_objects(d12, {"1", "12"}))},
      {"FullSubAllDiv12", full_sub_display(d12, std::vector<bool>(d12.num_objects(), true))},
      {"ConstTwoTwo", constant_display(two(), two())},
      {"ConstWIso", constant_display(d12, wiso())},
      {"ConstBZ2", constant_display(one(), bz2())},
      {"ConstOverWIso", constant_display(wiso(), two())},
      {"ArrowTwo", arrow_display(two())},
      {"ArrowDiv12", arrow_display(d12)},
      {"Slice_Two", slice_display(two())},
      {"Slice_Div12", slice_display(d12)},
      {"Slice_BZ2", slice_display(bz2())},
      {"Coslice_Div12", coslice_display(d12)},
      {"SigmaSlice_Div12", slice_via_sigma(d12)},
      {"FAlgGcd6", endofunctor_algebra_display(gcd6())},
      {"FAlgLcm2", endofunctor_algebra_display(lcm2())},
      {"FAlgLcm3", endofunctor_algebra_display(lcm3())},
      {"FAlgWIso", endofunctor_algebra_display(identity_functor(wiso()))},
      {"MAlgLcm2", monad_algebra_display(lcm2_monad())},
      {"ElemsYonTwoB", presheaf_to_discrete_fibration(yoneda_two_b())},
      {"ElemsSwapBZ2", presheaf_to_discrete_fibration(bz2_swap())},
      {"ElemsDivisors", presheaf_to_discrete_fibration(div12_divisors())},
      {"MagmaOrd2", sip_to_display(ord2_magmas())},
      {"IndiscretePair", sip_to_display(indiscrete_pair())},
      {"Idempotent", idempotent_display()},
  };
}

}  // namespace dispcat::fixtures
