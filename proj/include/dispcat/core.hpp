#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dispcat/fincat.hpp"
#include "dispcat/report.hpp"

namespace dispcat {

/// Default cap on enumerated candidates (functors, transformations, cones...).
inline constexpr std::size_t kDefaultBound = 10000;

// ---------------------------------------------------------------------------
// Law checks

inline Report check_category_laws(const FinCat& c) {
  Report r("check_category_laws");
  const auto n = static_cast<MorIx>(c.num_morphisms());
  for (ObjIx a = 0; a < c.num_objects(); ++a) {
    MorIx id = c.identity(a);
    if (id == kNone || c.src(id) != a || c.dst(id) != a) {
      r.fail("identity", "identity of " + c.object_id(a) + " is not an endomorphism of it",
             {c.object_id(a)});
      return r;
    }
  }
  // Totality and typing, pairs in lexicographic order.
  for (MorIx f = 0; f < n; ++f) {
    for (MorIx g = 0; g < n; ++g) {
      auto h = c.compose(f, g);
      const bool composable = c.dst(f) == c.src(g);
      if (composable && !h) {
        r.fail("missing_composite", "no composite for " + c.morphism_id(f) + ";" + c.morphism_id(g),
               {c.morphism_id(f), c.morphism_id(g)});
        return r;
      }
      if (!composable && h) {
        r.fail("spurious_composite",
               "composite defined for non-composable " + c.morphism_id(f) + ";" + c.morphism_id(g),
               {c.morphism_id(f), c.morphism_id(g)});
        return r;
      }
      if (h && (c.src(*h) != c.src(f) || c.dst(*h) != c.dst(g))) {
        r.fail("composite_type",
               c.morphism_id(f) + ";" + c.morphism_id(g) + " = " + c.morphism_id(*h) +
                   " has the wrong source or target",
               {c.morphism_id(f), c.morphism_id(g), c.morphism_id(*h)});
        return r;
      }
    }
  }
  for (MorIx f = 0; f < n; ++f) {
    if (c.comp(c.identity(c.src(f)), f) != f || c.comp(f, c.identity(c.dst(f))) != f) {
      r.fail("unit_law", "unit law fails at " + c.morphism_id(f), {c.morphism_id(f)});
      return r;
    }
  }
  for (MorIx f = 0; f < n; ++f) {
    for (MorIx g : c.out_of(c.dst(f))) {
      MorIx fg = c.comp(f, g);
      for (MorIx h : c.out_of(c.dst(g))) {
        if (c.comp(fg, h) != c.comp(f, c.comp(g, h))) {
          r.fail("associativity",
                 "(" + c.morphism_id(f) + ";" + c.morphism_id(g) + ");" + c.morphism_id(h) +
                     " differs from " + c.morphism_id(f) + ";(" + c.morphism_id(g) + ";" +
                     c.morphism_id(h) + ")",
                 {c.morphism_id(f), c.morphism_id(g), c.morphism_id(h)});
          return r;
        }
      }
    }
  }
  return r;
}

inline Report check_functor_laws(const FunctorData& F) {
  Report r("check_functor_laws");
  const FinCat& C = F.dom;
  const FinCat& D = F.cod;
  if (F.on_obj.size() != C.num_objects() || F.on_mor.size() != C.num_morphisms()) {
    throw Error(ErrorCode::MalformedInput, "functor maps do not match the domain");
  }
  for (ObjIx a = 0; a < C.num_objects(); ++a) {
    if (F.on_obj[a] == kNone || F.on_obj[a] >= D.num_objects()) {
      r.fail("unmapped_object", "object " + C.object_id(a) + " has no image", {C.object_id(a)});
      return r;
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    MorIx g = F.on_mor[f];
    if (g == kNone || g >= D.num_morphisms()) {
      r.fail("unmapped_morphism", "morphism " + C.morphism_id(f) + " has no image",
             {C.morphism_id(f)});
      return r;
    }
    if (D.src(g) != F.on_obj[C.src(f)] || D.dst(g) != F.on_obj[C.dst(f)]) {
      r.fail("endpoints", "image of " + C.morphism_id(f) + " does not connect the images of its endpoints",
             {C.morphism_id(f), D.morphism_id(g)});
      return r;
    }
  }
  for (ObjIx a = 0; a < C.num_objects(); ++a) {
    if (F.on_mor[C.identity(a)] != D.identity(F.on_obj[a])) {
      r.fail("identity", "identity of " + C.object_id(a) + " is not preserved", {C.object_id(a)});
      return r;
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (MorIx g : C.out_of(C.dst(f))) {
      auto h = C.compose(f, g);
      auto img = D.compose(F.on_mor[f], F.on_mor[g]);
      if (!h || !img || F.on_mor[*h] != *img) {
        r.fail("composition",
               "composite " + C.morphism_id(f) + ";" + C.morphism_id(g) + " is not preserved",
               {C.morphism_id(f), C.morphism_id(g)});
        return r;
      }
    }
  }
  return r;
}

inline Report check_nat_trans(const NatTransData& a) {
  Report r("check_nat_trans");
  const FinCat& C = a.dom.dom;
  const FinCat& D = a.dom.cod;
  if (!(a.cod.dom == C) || !(a.cod.cod == D)) {
    throw Error(ErrorCode::BaseMismatch, "natural transformation between functors of different types");
  }
  if (a.components.size() != C.num_objects()) {
    throw Error(ErrorCode::MalformedInput, "component count does not match the domain");
  }
  for (ObjIx x = 0; x < C.num_objects(); ++x) {
    MorIx m = a.components[x];
    if (m == kNone || m >= D.num_morphisms() || D.src(m) != a.dom.on_obj[x] ||
        D.dst(m) != a.cod.on_obj[x]) {
      r.fail("component_type", "component at " + C.object_id(x) + " has the wrong type",
             {C.object_id(x)});
      return r;
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    ObjIx x = C.src(f), y = C.dst(f);
    if (D.comp(a.components[x], a.cod.on_mor[f]) != D.comp(a.dom.on_mor[f], a.components[y])) {
      r.fail("naturality", "naturality square fails at " + C.morphism_id(f), {C.morphism_id(f)});
      return r;
    }
  }
  return r;
}

inline Report check_presheaf_laws(const Presheaf& p) {
  Report r("check_presheaf_laws");
  const FinCat& C = p.base;
  if (p.sets.size() != C.num_objects() || p.restrict.size() != C.num_morphisms()) {
    throw Error(ErrorCode::MalformedInput, "presheaf tables do not match the base");
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    const auto& rf = p.restrict[f];
    if (rf.size() != p.sets[C.dst(f)].size()) {
      throw Error(ErrorCode::MalformedInput, "restriction along " + C.morphism_id(f) + " has the wrong size");
    }
    for (std::uint32_t e = 0; e < rf.size(); ++e) {
      if (rf[e] == kNone || rf[e] >= p.sets[C.src(f)].size()) {
        r.fail("restriction_undefined",
               "restriction along " + C.morphism_id(f) + " undefined at " + p.sets[C.dst(f)][e],
               {C.morphism_id(f), p.sets[C.dst(f)][e]});
        return r;
      }
    }
  }
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    const auto& rid = p.restrict[C.identity(c)];
    for (std::uint32_t e = 0; e < rid.size(); ++e) {
      if (rid[e] != e) {
        r.fail("identity", "restriction along the identity of " + C.object_id(c) + " moves " + p.sets[c][e],
               {C.object_id(c), p.sets[c][e]});
        return r;
      }
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (MorIx g : C.out_of(C.dst(f))) {
      MorIx fg = C.comp(f, g);
      for (std::uint32_t e = 0; e < p.sets[C.dst(g)].size(); ++e) {
        if (p.restrict[fg][e] != p.restrict[f][p.restrict[g][e]]) {
          r.fail("composition",
                 "restriction along " + C.morphism_id(f) + ";" + C.morphism_id(g) +
                     " disagrees with the composite of restrictions at " + p.sets[C.dst(g)][e],
                 {C.morphism_id(f), C.morphism_id(g), p.sets[C.dst(g)][e]});
          return r;
        }
      }
    }
  }
  return r;
}

inline Report check_presheaf_morphism(const PresheafMorphism& phi) {
  Report r("check_presheaf_morphism");
  const FinCat& C = phi.dom.base;
  if (!(phi.cod.base == C)) throw Error(ErrorCode::BaseMismatch, "presheaves over different bases");
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    const auto& comp = phi.components.at(c);
    if (comp.size() != phi.dom.sets[c].size()) {
      throw Error(ErrorCode::MalformedInput, "component size mismatch at " + C.object_id(c));
    }
    for (auto v : comp) {
      if (v >= phi.cod.sets[c].size()) {
        r.fail("component", "component at " + C.object_id(c) + " is not a function", {C.object_id(c)});
        return r;
      }
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    ObjIx a = C.src(f), b = C.dst(f);
    for (std::uint32_t e = 0; e < phi.dom.sets[b].size(); ++e) {
      if (phi.components[a][phi.dom.restrict[f][e]] != phi.cod.restrict[f][phi.components[b][e]]) {
        r.fail("naturality", "naturality fails at " + C.morphism_id(f), {C.morphism_id(f)});
        return r;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small constructions

/// The terminal category, with single object `pt`.
inline FinCat one_category() {
  CategoryBuilder b;
  b.object("pt");
  return b.build();
}

inline FunctorData identity_functor(const FinCat& c) {
  FunctorData F{c, c, {}, {}};
  F.on_obj.resize(c.num_objects());
  F.on_mor.resize(c.num_morphisms());
  std::iota(F.on_obj.begin(), F.on_obj.end(), ObjIx{0});
  std::iota(F.on_mor.begin(), F.on_mor.end(), MorIx{0});
  return F;
}

/// The unique functor to a one-object, one-morphism category.
inline FunctorData terminal_functor(const FinCat& c, const FinCat& one) {
  if (one.num_objects() != 1 || one.num_morphisms() != 1) {
    throw Error(ErrorCode::MalformedInput, "target is not a terminal category");
  }
  return FunctorData{c, one, std::vector<ObjIx>(c.num_objects(), 0),
                     std::vector<MorIx>(c.num_morphisms(), 0)};
}

/// F then G.
inline FunctorData compose_functors(const FunctorData& F, const FunctorData& G) {
  if (!(F.cod == G.dom)) throw Error(ErrorCode::BaseMismatch, "functors are not composable");
  FunctorData H{F.dom, G.cod, {}, {}};
  H.on_obj.reserve(F.on_obj.size());
  for (ObjIx x : F.on_obj) H.on_obj.push_back(G.on_obj.at(x));
  H.on_mor.reserve(F.on_mor.size());
  for (MorIx f : F.on_mor) H.on_mor.push_back(G.on_mor.at(f));
  return H;
}

/// Whiskering G∘α (α then G).
inline NatTransData whisker_right(const NatTransData& a, const FunctorData& G) {
  NatTransData out{compose_functors(a.dom, G), compose_functors(a.cod, G), {}};
  for (MorIx m : a.components) out.components.push_back(G.on_mor.at(m));
  return out;
}

/// Whiskering α∘F (F then α).
inline NatTransData whisker_left(const FunctorData& F, const NatTransData& a) {
  NatTransData out{compose_functors(F, a.dom), compose_functors(F, a.cod), {}};
  for (ObjIx x : F.on_obj) out.components.push_back(a.components.at(x));
  return out;
}

namespace detail {

/// Copies `c` into a builder with renamed objects and morphisms.
inline FinCat relabel(const FinCat& c, const std::function<std::string(ObjIx)>& obj_name,
                      const std::function<std::string(MorIx)>& mor_name) {
  CategoryBuilder b;
  for (ObjIx a = 0; a < c.num_objects(); ++a) b.add_object(obj_name(a));
  std::vector<MorIx> ref(c.num_morphisms());
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f) && c.identity(c.src(f)) == f) {
      b.set_identity_name(c.src(f), mor_name(f));
      ref[f] = b.identity_ref(c.src(f));
    } else {
      ref[f] = b.add_morphism(mor_name(f), c.src(f), c.dst(f));
    }
  }
  for (const auto& [f, g, h] : c.composition_entries()) b.set_composite(ref[f], ref[g], ref[h]);
  return b.build();
}

}  // namespace detail

inline FinCat relabel(const FinCat& c, const std::function<std::string(const std::string&)>& obj_name,
                      const std::function<std::string(const std::string&)>& mor_name) {
  return detail::relabel(
      c, [&](ObjIx a) { return obj_name(c.object_id(a)); },
      [&](MorIx f) { return mor_name(c.morphism_id(f)); });
}

/// Same objects, reversed morphisms: comp_op(f, g) = comp(g, f).
inline FinCat opposite(const FinCat& c) {
  CategoryBuilder b;
  for (ObjIx a = 0; a < c.num_objects(); ++a) b.add_object(c.object_id(a));
  std::vector<MorIx> ref(c.num_morphisms());
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f) && c.identity(c.src(f)) == f) {
      b.set_identity_name(c.src(f), c.morphism_id(f));
      ref[f] = b.identity_ref(c.src(f));
    } else {
      ref[f] = b.add_morphism(c.morphism_id(f), c.dst(f), c.src(f));
    }
  }
  for (const auto& [f, g, h] : c.composition_entries()) b.set_composite(ref[g], ref[f], ref[h]);
  return b.build();
}

/// Componentwise product; pairs are named `<left>|<right>`.
inline FinCat product(const FinCat& c, const FinCat& d) {
  CategoryBuilder b;
  const auto nc = static_cast<ObjIx>(c.num_objects()), nd = static_cast<ObjIx>(d.num_objects());
  for (ObjIx x = 0; x < nc; ++x) {
    for (ObjIx y = 0; y < nd; ++y) b.add_object(pair_name(c.object_id(x), d.object_id(y)));
  }
  const auto mc = static_cast<MorIx>(c.num_morphisms()), md = static_cast<MorIx>(d.num_morphisms());
  std::vector<MorIx> ref(static_cast<std::size_t>(mc) * md);
  for (MorIx f = 0; f < mc; ++f) {
    for (MorIx g = 0; g < md; ++g) {
      ObjIx s = c.src(f) * nd + d.src(g);
      ObjIx t = c.dst(f) * nd + d.dst(g);
      const bool ident = c.is_identity(f) && d.is_identity(g);
      if (ident) {
        b.set_identity_name(s, pair_name(c.morphism_id(f), d.morphism_id(g)));
        ref[f * md + g] = b.identity_ref(s);
      } else {
        ref[f * md + g] = b.add_morphism(pair_name(c.morphism_id(f), d.morphism_id(g)), s, t);
      }
    }
  }
  for (MorIx f = 0; f < mc; ++f) {
    for (MorIx g = 0; g < md; ++g) {
      for (MorIx f2 : c.out_of(c.dst(f))) {
        MorIx ff = c.comp(f, f2);
        for (MorIx g2 : d.out_of(d.dst(g))) {
          b.set_composite(ref[f * md + g], ref[f2 * md + g2], ref[ff * md + d.comp(g, g2)]);
        }
      }
    }
  }
  return b.build();
}

/// Projection functor from `product(c, d)` onto the left (`left = true`) or right factor.
inline FunctorData product_projection(const FinCat& c, const FinCat& d, const FinCat& prod, bool left) {
  FunctorData P{prod, left ? c : d, std::vector<ObjIx>(prod.num_objects()),
                std::vector<MorIx>(prod.num_morphisms())};
  for (ObjIx x = 0; x < c.num_objects(); ++x) {
    for (ObjIx y = 0; y < d.num_objects(); ++y) {
      P.on_obj[prod.object(pair_name(c.object_id(x), d.object_id(y)))] = left ? x : y;
    }
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    for (MorIx g = 0; g < d.num_morphisms(); ++g) {
      P.on_mor[prod.morphism_ix(pair_name(c.morphism_id(f), d.morphism_id(g)))] = left ? f : g;
    }
  }
  return P;
}

/// Full subcategory on the selected objects, keeping all ids.
inline FinCat full_subcategory(const FinCat& c, const std::vector<bool>& selected) {
  CategoryBuilder b;
  std::vector<ObjIx> ref(c.num_objects(), kNone);
  for (ObjIx a = 0; a < c.num_objects(); ++a) {
    if (selected.at(a)) ref[a] = b.add_object(c.object_id(a));
  }
  std::vector<MorIx> mref(c.num_morphisms(), kNone);
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (ref[c.src(f)] == kNone || ref[c.dst(f)] == kNone) continue;
    if (c.identity(c.src(f)) == f) {
      b.set_identity_name(ref[c.src(f)], c.morphism_id(f));
      mref[f] = b.identity_ref(ref[c.src(f)]);
    } else {
      mref[f] = b.add_morphism(c.morphism_id(f), ref[c.src(f)], ref[c.dst(f)]);
    }
  }
  for (const auto& [f, g, h] : c.composition_entries()) {
    if (mref[f] != kNone && mref[g] != kNone) b.set_composite(mref[f], mref[g], mref[h]);
  }
  return b.build();
}

/// The arrow category: objects are the morphisms of `c`, morphisms from f to g
/// are commuting squares (h, k) with f;k = h;g, named `<h>|<k>|<f>.<g>`.
inline FinCat arrow_category(const FinCat& c) {
  CategoryBuilder b;
  for (MorIx f = 0; f < c.num_morphisms(); ++f) b.add_object(c.morphism_id(f));
  struct Sq {
    MorIx h, k, f, g;
  };
  std::vector<Sq> squares;
  std::map<std::tuple<MorIx, MorIx, MorIx, MorIx>, MorIx> ref;
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    for (MorIx h : c.out_of(c.src(f))) {
      for (MorIx k : c.out_of(c.dst(f))) {
        for (MorIx g : c.hom(c.dst(h), c.dst(k))) {
          if (c.comp(f, k) != c.comp(h, g)) continue;
          std::string name = pair_name(pair_name(c.morphism_id(h), c.morphism_id(k)),
                                       c.morphism_id(f) + "." + c.morphism_id(g));
          MorIx m;
          if (f == g && c.is_identity(h) && c.is_identity(k)) {
            b.set_identity_name(f, name);
            m = b.identity_ref(f);
          } else {
            m = b.add_morphism(name, f, g);
          }
          ref.emplace(std::make_tuple(h, k, f, g), m);
          squares.push_back({h, k, f, g});
        }
      }
    }
  }
  for (const auto& s1 : squares) {
    for (const auto& s2 : squares) {
      if (s1.g != s2.f) continue;
      auto it = ref.find({c.comp(s1.h, s2.h), c.comp(s1.k, s2.k), s1.f, s2.g});
      b.set_composite(ref.at({s1.h, s1.k, s1.f, s1.g}), ref.at({s2.h, s2.k, s2.f, s2.g}), it->second);
    }
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Isomorphisms

/// The two-sided inverse of `f`, if any.
inline std::optional<MorIx> is_iso(const FinCat& c, MorIx f) {
  if (f >= c.num_morphisms()) throw Error(ErrorCode::UnknownMorphism, std::to_string(f));
  const ObjIx a = c.src(f), b = c.dst(f);
  for (MorIx g : c.hom(b, a)) {
    if (c.comp(f, g) == c.identity(a) && c.comp(g, f) == c.identity(b)) return g;
  }
  return std::nullopt;
}

/// All isomorphisms of `c`, in index order.
inline std::vector<MorIx> isomorphisms(const FinCat& c) {
  std::vector<MorIx> out;
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (is_iso(c, f)) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of functors and transformations

namespace detail {

inline std::string padded(std::size_t k, std::size_t count) {
  std::string s = std::to_string(k);
  std::string width = std::to_string(count == 0 ? 0 : count - 1);
  if (s.size() < width.size()) s.insert(0, width.size() - s.size(), '0');
  return s;
}

}  // namespace detail

/// All law-abiding functors c -> d in lexicographic order of their maps.
inline std::vector<FunctorData> enumerate_functors(const FinCat& c, const FinCat& d,
                                                   std::size_t bound = kDefaultBound) {
  std::vector<FunctorData> out;
  const std::size_t nobj = c.num_objects();
  if (nobj > 0 && d.num_objects() == 0) return out;

  // Non-identity morphisms, and the composition constraints checkable once
  // the later of the two factors is assigned.
  std::vector<MorIx> order;
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (!c.is_identity(f)) order.push_back(f);
  }
  std::vector<std::size_t> pos(c.num_morphisms(), kNone);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<std::vector<std::tuple<MorIx, MorIx, MorIx>>> checks(order.size());
  for (const auto& [f, g, h] : c.composition_entries()) {
    if (c.is_identity(f) || c.is_identity(g)) continue;
    std::size_t p = std::max(pos[f], pos[g]);
    if (!c.is_identity(h)) p = std::max(p, pos[h]);
    checks[p].emplace_back(f, g, h);
  }

  FunctorData F{c, d, std::vector<ObjIx>(nobj, 0), std::vector<MorIx>(c.num_morphisms(), kNone)};
  std::size_t visited = 0;
  std::function<void(std::size_t)> assign_mor = [&](std::size_t i) {
    if (i == order.size()) {
      out.push_back(F);
      if (out.size() > bound) {
        throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " functors");
      }
      return;
    }
    MorIx f = order[i];
    for (MorIx g : d.hom(F.on_obj[c.src(f)], F.on_obj[c.dst(f)])) {
      if (++visited > bound * 64) {
        throw Error(ErrorCode::ResourceLimit, "functor search exceeded its step budget");
      }
      F.on_mor[f] = g;
      bool ok = true;
      for (const auto& [a, b, h] : checks[i]) {
        if (d.compose(F.on_mor[a], F.on_mor[b]) != F.on_mor[h]) {
          ok = false;
          break;
        }
      }
      if (ok) assign_mor(i + 1);
    }
    F.on_mor[f] = kNone;
  };
  std::function<void(ObjIx)> assign_obj = [&](ObjIx x) {
    if (x == nobj) {
      for (ObjIx y = 0; y < nobj; ++y) F.on_mor[c.identity(y)] = d.identity(F.on_obj[y]);
      assign_mor(0);
      return;
    }
    for (ObjIx y = 0; y < d.num_objects(); ++y) {
      F.on_obj[x] = y;
      assign_obj(x + 1);
    }
  };
  assign_obj(0);
  return out;
}

/// All natural transformations F => G, in lexicographic order of components.
inline std::vector<NatTransData> enumerate_nat_trans(const FunctorData& F, const FunctorData& G,
                                                     std::size_t bound = kDefaultBound) {
  const FinCat& C = F.dom;
  const FinCat& D = F.cod;
  std::vector<NatTransData> out;
  NatTransData a{F, G, std::vector<MorIx>(C.num_objects(), kNone)};
  std::vector<std::vector<MorIx>> checks(C.num_objects());
  for (MorIx f = 0; f < C.num_morphisms(); ++f) checks[std::max(C.src(f), C.dst(f))].push_back(f);
  std::function<void(ObjIx)> go = [&](ObjIx x) {
    if (x == C.num_objects()) {
      out.push_back(a);
      if (out.size() > bound) {
        throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " transformations");
      }
      return;
    }
    for (MorIx m : D.hom(F.on_obj[x], G.on_obj[x])) {
      a.components[x] = m;
      bool ok = true;
      for (MorIx f : checks[x]) {
        if (D.comp(a.components[C.src(f)], G.on_mor[f]) != D.comp(F.on_mor[f], a.components[C.dst(f)])) {
          ok = false;
          break;
        }
      }
      if (ok) go(x + 1);
    }
    a.components[x] = kNone;
  };
  go(0);
  return out;
}

struct FunctorCategory {
  FinCat cat;
  std::vector<FunctorData> functors;         // indexed by object of `cat`
  std::vector<NatTransData> transformations;  // indexed by morphism of `cat`
};

/// The category of functors c -> d and natural transformations.
/// Functors are named `F<k>` (zero-padded, enumeration order); the identity
/// transformation on F is `id_F`, the others `nt_<F>_<G>_<k>`.
inline FunctorCategory functor_category(const FinCat& c, const FinCat& d,
                                        std::size_t bound = kDefaultBound) {
  auto functors = enumerate_functors(c, d, bound);
  const std::size_t nf = functors.size();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < nf; ++k) names.push_back("F" + detail::padded(k, nf));

  CategoryBuilder b;
  for (const auto& n : names) b.add_object(n);
  std::vector<NatTransData> all;
  std::vector<MorIx> ref;
  std::vector<std::string> mor_names;
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::vector<MorIx>, std::size_t>> lookup;
  std::size_t total = 0;
  for (std::size_t i = 0; i < nf; ++i) {
    for (std::size_t j = 0; j < nf; ++j) {
      auto nts = enumerate_nat_trans(functors[i], functors[j], bound);
      total += nts.size();
      if (total > bound) {
        throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " transformations");
      }
      std::size_t k = 0;
      for (auto& a : nts) {
        bool ident = i == j;
        if (ident) {
          for (ObjIx x = 0; x < c.num_objects(); ++x) ident = ident && d.is_identity(a.components[x]);
        }
        MorIx m;
        std::string name;
        if (ident) {
          name = identity_name(names[i]);
          m = b.identity_ref(static_cast<ObjIx>(i));
        } else {
          name = "nt_" + names[i] + "_" + names[j] + "_" + std::to_string(k++);
          m = b.add_morphism(name, static_cast<ObjIx>(i), static_cast<ObjIx>(j));
        }
        lookup[{i, j}][a.components] = all.size();
        ref.push_back(m);
        mor_names.push_back(name);
        all.push_back(std::move(a));
      }
    }
  }
  auto functor_index = [&](const FunctorData& F) {
    for (std::size_t i = 0; i < nf; ++i) {
      if (functors[i].on_obj == F.on_obj && functors[i].on_mor == F.on_mor) return i;
    }
    return std::size_t{kNone};
  };
  std::vector<std::size_t> src_of(all.size()), dst_of(all.size());
  for (std::size_t t = 0; t < all.size(); ++t) {
    src_of[t] = functor_index(all[t].dom);
    dst_of[t] = functor_index(all[t].cod);
  }
  for (std::size_t s = 0; s < all.size(); ++s) {
    for (std::size_t t = 0; t < all.size(); ++t) {
      if (dst_of[s] != src_of[t]) continue;
      std::vector<MorIx> comps(c.num_objects());
      for (ObjIx x = 0; x < c.num_objects(); ++x) comps[x] = d.comp(all[s].components[x], all[t].components[x]);
      std::size_t u = lookup.at({src_of[s], dst_of[t]}).at(comps);
      b.set_composite(ref[s], ref[t], ref[u]);
    }
  }
  FunctorCategory fc{b.build(), {}, {}};
  fc.functors.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) fc.functors[fc.cat.object(names[i])] = functors[i];
  fc.transformations.resize(all.size());
  for (std::size_t t = 0; t < all.size(); ++t) fc.transformations[fc.cat.morphism_ix(mor_names[t])] = all[t];
  return fc;
}

// ---------------------------------------------------------------------------
// Equivalence

/// Fully faithful and essentially surjective, decided by exhaustive hom counting.
inline Report check_equivalence(const FunctorData& F) {
  Report r("check_equivalence");
  const FinCat& C = F.dom;
  const FinCat& D = F.cod;
  bool faithful = true, full = true;
  for (ObjIx a = 0; a < C.num_objects(); ++a) {
    for (ObjIx b = 0; b < C.num_objects(); ++b) {
      auto src_hom = C.hom(a, b);
      auto dst_hom = D.hom(F.on_obj[a], F.on_obj[b]);
      std::vector<MorIx> images;
      for (MorIx f : src_hom) images.push_back(F.on_mor[f]);
      std::sort(images.begin(), images.end());
      bool inj = std::adjacent_find(images.begin(), images.end()) == images.end();
      images.erase(std::unique(images.begin(), images.end()), images.end());
      bool surj = images.size() == dst_hom.size();
      if (!inj && faithful) {
        faithful = false;
        r.fail("not_faithful", "two morphisms " + C.object_id(a) + " -> " + C.object_id(b) + " have the same image",
               {C.object_id(a), C.object_id(b)});
      }
      if (!surj && full) {
        full = false;
        r.fail("not_full", "some morphism " + D.object_id(F.on_obj[a]) + " -> " + D.object_id(F.on_obj[b]) +
                               " is not an image",
               {C.object_id(a), C.object_id(b)});
      }
    }
  }
  bool ess_surj = true;
  for (ObjIx y = 0; y < D.num_objects(); ++y) {
    bool found = false;
    for (ObjIx a = 0; a < C.num_objects() && !found; ++a) {
      for (MorIx i : D.hom(F.on_obj[a], y)) {
        if (is_iso(D, i)) {
          r.info("witness_iso", D.object_id(y) + " is isomorphic to the image of " + C.object_id(a),
                 {C.object_id(a), D.morphism_id(i)});
          found = true;
          break;
        }
      }
    }
    if (!found) {
      if (ess_surj) {
        r.fail("not_essentially_surjective", D.object_id(y) + " is not isomorphic to any image", {D.object_id(y)});
      }
      ess_surj = false;
    }
  }
  r.set("faithful", faithful);
  r.set("full", full);
  r.set("essentially_surjective", ess_surj);
  return r;
}

/// True iff F is bijective on objects and on morphisms.
inline bool is_isomorphism_of_categories(const FunctorData& F) {
  auto bij = [](const auto& map, std::size_t n) {
    if (map.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto v : map) {
      if (v >= n || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  };
  return bij(F.on_obj, F.cod.num_objects()) && bij(F.on_mor, F.cod.num_morphisms());
}

/// Hom(-, b) with elements named by morphism id.
inline Presheaf representable_presheaf(const FinCat& c, ObjIx b) {
  PresheafBuilder pb(c);
  for (ObjIx a = 0; a < c.num_objects(); ++a) {
    for (MorIx m : c.hom(a, b)) pb.element(c.object_id(a), c.morphism_id(m));
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    for (MorIx m : c.hom(c.dst(f), b)) pb.action(c.morphism_id(f), c.morphism_id(m), c.morphism_id(c.comp(f, m)));
  }
  return pb.build();
}

/// The presheaf with one element `tt` everywhere.
inline Presheaf terminal_presheaf(const FinCat& c) {
  PresheafBuilder pb(c);
  for (ObjIx a = 0; a < c.num_objects(); ++a) pb.element(c.object_id(a), "tt");
  for (MorIx f = 0; f < c.num_morphisms(); ++f) pb.action(c.morphism_id(f), "tt", "tt");
  return pb.build();
}

}  // namespace dispcat
