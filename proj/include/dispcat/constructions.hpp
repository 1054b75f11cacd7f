#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dispcat/displayed.hpp"

namespace dispcat {

// ---------------------------------------------------------------------------
// Reindexing and constant displays

/// Pullback of `d` along F : C' -> C. Objects over c' are those over F(c'),
/// morphisms over f' those over F(f'); ids are kept.
inline DispCat reindex(const DispCat& d, const FunctorData& F) {
  if (!(F.cod == d.base())) throw Error(ErrorCode::BaseMismatch, "functor does not land in the base of the display");
  const FinCat& C2 = F.dom;
  DispBuilder b(C2);
  // new index of the copy of displayed object x over c'
  std::vector<std::unordered_map<DObjIx, DObjIx>> obj_copy(C2.num_objects());
  for (ObjIx c = 0; c < C2.num_objects(); ++c) {
    for (DObjIx x : d.fibre(F.on_obj[c])) obj_copy[c][x] = b.add_dobj(c, d.dobj(x).id);
  }
  std::vector<std::unordered_map<DMorIx, DMorIx>> mor_copy(C2.num_morphisms());
  for (MorIx f = 0; f < C2.num_morphisms(); ++f) {
    for (DMorIx m : d.over(F.on_mor[f])) {
      const DMor& mm = d.dmor(m);
      mor_copy[f][m] = b.add_dmor(f, obj_copy[C2.src(f)].at(mm.src), obj_copy[C2.dst(f)].at(mm.dst), mm.id);
    }
  }
  for (ObjIx c = 0; c < C2.num_objects(); ++c) {
    for (auto [x, nx] : obj_copy[c]) b.set_did(nx, mor_copy[C2.identity(c)].at(d.did(x)));
  }
  for (MorIx f = 0; f < C2.num_morphisms(); ++f) {
    for (MorIx g : C2.out_of(C2.dst(f))) {
      MorIx fg = C2.comp(f, g);
      for (auto [m, nm] : mor_copy[f]) {
        for (DMorIx n : d.out_of(d.dmor(m).dst)) {
          auto it = mor_copy[g].find(n);
          if (it == mor_copy[g].end()) continue;
          auto h = d.dcompose(m, n);
          if (!h) continue;
          auto hit = mor_copy[fg].find(*h);
          if (hit != mor_copy[fg].end()) b.set_dcomp(nm, it->second, hit->second);
        }
      }
    }
  }
  return b.build();
}

/// The evident displayed functor from the reindexed display back to `d`, over F.
inline DispFunctor reindex_functor(const DispCat& d, const FunctorData& F, const DispCat& pulled) {
  DispFunctor G{F, pulled, d, std::vector<DObjIx>(pulled.num_dobjs()), std::vector<DMorIx>(pulled.num_dmors())};
  for (DObjIx x = 0; x < pulled.num_dobjs(); ++x) {
    G.on_dobj[x] = *d.find_dobj(F.on_obj[pulled.dobj(x).over], pulled.dobj(x).id);
  }
  for (DMorIx m = 0; m < pulled.num_dmors(); ++m) {
    G.on_dmor[m] = *d.find_dmor(F.on_mor[pulled.dmor(m).over], pulled.dmor(m).id);
  }
  return G;
}

inline DispFunctor reindex_functor(const DispCat& d, const FunctorData& F) {
  return reindex_functor(d, F, reindex(d, F));
}

/// A category seen as a display over the terminal category.
inline DispCat display_over_one(const FinCat& c, const FinCat& one) {
  if (one.num_objects() != 1 || one.num_morphisms() != 1) {
    throw Error(ErrorCode::MalformedInput, "base is not a terminal category");
  }
  DispBuilder b(one);
  for (ObjIx a = 0; a < c.num_objects(); ++a) b.add_dobj(0, c.object_id(a));
  for (MorIx f = 0; f < c.num_morphisms(); ++f) b.add_dmor(0, c.src(f), c.dst(f), c.morphism_id(f));
  for (ObjIx a = 0; a < c.num_objects(); ++a) b.set_did(a, c.identity(a));
  for (const auto& [f, g, h] : c.composition_entries()) b.set_dcomp(f, g, h);
  return b.build();
}

/// Constant display over `c` with fibre `c2`: the pullback along `c -> One`.
inline DispCat constant_display(const FinCat& c, const FinCat& c2) {
  FinCat one = one_category();
  return reindex(display_over_one(c2, one), terminal_functor(c, one));
}

/// total(constant_display(c, c2)) -> c × c2, strictly over c.
inline FunctorData constant_product_comparison(const FinCat& c, const FinCat& c2, const DispCat& dconst,
                                               const TotalCategory& total, const FinCat& prod) {
  FunctorData F{total.cat, prod, std::vector<ObjIx>(total.cat.num_objects()),
                std::vector<MorIx>(total.cat.num_morphisms())};
  for (ObjIx o = 0; o < total.cat.num_objects(); ++o) {
    const DObj& x = dconst.dobj(total.dobj_of_obj[o]);
    F.on_obj[o] = prod.object(pair_name(c.object_id(x.over), x.id));
  }
  for (MorIx f = 0; f < total.cat.num_morphisms(); ++f) {
    const DMor& m = dconst.dmor(total.dmor_of_mor[f]);
    F.on_mor[f] = prod.morphism_ix(pair_name(c.morphism_id(m.over), m.id));
  }
  (void)c2;
  return F;
}

// ---------------------------------------------------------------------------
// Sigma

/// Σ-category of `e` over `d`: `e` must be displayed over exactly
/// `total_category(d).cat`. Objects over c are pairs `<y>|<z>`, morphisms
/// over f are `<f̄>|<z̄>`.
inline DispCat sigma_display(const DispCat& d, const DispCat& e) {
  TotalCategory td = total_category(d);
  if (!(e.base() == td.cat)) {
    throw Error(ErrorCode::BaseMismatch, "second display is not over the total category of the first");
  }
  DispBuilder b(d.base());
  // Each object of e determines its y, and each morphism of e its f̄.
  std::vector<DObjIx> nobj(e.num_dobjs());
  for (DObjIx z = 0; z < e.num_dobjs(); ++z) {
    DObjIx y = td.dobj_of_obj[e.dobj(z).over];
    nobj[z] = b.add_dobj(d.dobj(y).over, pair_name(d.dobj(y).id, e.dobj(z).id));
  }
  std::vector<DMorIx> nmor(e.num_dmors());
  for (DMorIx zb = 0; zb < e.num_dmors(); ++zb) {
    DMorIx fb = td.dmor_of_mor[e.dmor(zb).over];
    nmor[zb] = b.add_dmor(d.dmor(fb).over, nobj[e.dmor(zb).src], nobj[e.dmor(zb).dst],
                          pair_name(d.dmor(fb).id, e.dmor(zb).id));
  }
  for (DObjIx z = 0; z < e.num_dobjs(); ++z) b.set_did(nobj[z], nmor[e.did(z)]);
  for (const auto& [a, bb, h] : e.composition_entries()) b.set_dcomp(nmor[a], nmor[bb], nmor[h]);
  return b.build();
}

/// total(e) -> total(Σ d e), over the base of d.
inline FunctorData sigma_comparison(const DispCat& d, const DispCat& e, const DispCat& sigma) {
  TotalCategory td = total_category(d);
  TotalCategory te = total_category(e);
  TotalCategory ts = total_category(sigma);
  FunctorData F{te.cat, ts.cat, std::vector<ObjIx>(te.cat.num_objects()), std::vector<MorIx>(te.cat.num_morphisms())};
  for (ObjIx o = 0; o < te.cat.num_objects(); ++o) {
    DObjIx z = te.dobj_of_obj[o];
    DObjIx y = td.dobj_of_obj[e.dobj(z).over];
    DObjIx s = *sigma.find_dobj(d.dobj(y).over, pair_name(d.dobj(y).id, e.dobj(z).id));
    F.on_obj[o] = ts.obj_of_dobj[s];
  }
  for (MorIx f = 0; f < te.cat.num_morphisms(); ++f) {
    DMorIx zb = te.dmor_of_mor[f];
    DMorIx fb = td.dmor_of_mor[e.dmor(zb).over];
    DMorIx s = *sigma.find_dmor(d.dmor(fb).over, pair_name(d.dmor(fb).id, e.dmor(zb).id));
    F.on_mor[f] = ts.mor_of_dmor[s];
  }
  return F;
}

// ---------------------------------------------------------------------------
// Full subcategories, arrows, slices

/// One object `tt` over each selected object and singleton families `{tt.tt}`
/// between them, named as in the category of elements of the terminal presheaf.
inline DispCat full_sub_display(const FinCat& c, const std::vector<bool>& selected) {
  DispBuilder b(c);
  std::vector<DObjIx> x(c.num_objects(), kNone);
  for (ObjIx a = 0; a < c.num_objects(); ++a) {
    if (selected.at(a)) x[a] = b.add_dobj(a, "tt");
  }
  std::vector<DMorIx> m(c.num_morphisms(), kNone);
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (x[c.src(f)] != kNone && x[c.dst(f)] != kNone) m[f] = b.add_dmor(f, x[c.src(f)], x[c.dst(f)], "tt.tt");
  }
  for (const auto& [f, g, h] : c.composition_entries()) {
    if (m[f] != kNone && m[g] != kNone) b.set_dcomp(m[f], m[g], m[h]);
  }
  return b.build();
}

/// Over `c × c`: objects over (x, y) are morphisms x -> y; the family over
/// (h, k) from f to g is `{f.g}` when f;k = h;g and empty otherwise.
inline DispCat arrow_display(const FinCat& c) {
  FinCat P = product(c, c);
  DispBuilder b(P);
  std::vector<DObjIx> x(c.num_morphisms());
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    x[f] = b.add_dobj(P.object(pair_name(c.object_id(c.src(f)), c.object_id(c.dst(f)))), c.morphism_id(f));
  }
  std::map<std::tuple<MorIx, MorIx, MorIx, MorIx>, DMorIx> sq;  // (h, k, f, g)
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    for (MorIx h : c.out_of(c.src(f))) {
      for (MorIx k : c.out_of(c.dst(f))) {
        MorIx over = P.morphism_ix(pair_name(c.morphism_id(h), c.morphism_id(k)));
        for (MorIx g : c.hom(c.dst(h), c.dst(k))) {
          if (c.comp(f, k) != c.comp(h, g)) continue;
          sq[{h, k, f, g}] = b.add_dmor(over, x[f], x[g], c.morphism_id(f) + "." + c.morphism_id(g));
        }
      }
    }
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    b.set_did(x[f], sq.at({c.identity(c.src(f)), c.identity(c.dst(f)), f, f}));
  }
  for (const auto& [k1, m1] : sq) {
    const auto& [h, k, f, g] = k1;
    for (MorIx h2 : c.out_of(c.dst(h))) {
      for (MorIx k2 : c.out_of(c.dst(k))) {
        for (MorIx g2 : c.hom(c.dst(h2), c.dst(k2))) {
          auto it = sq.find({h2, k2, g, g2});
          if (it == sq.end()) continue;
          b.set_dcomp(m1, it->second, sq.at({c.comp(h, h2), c.comp(k, k2), f, g2}));
        }
      }
    }
  }
  return b.build();
}

/// total(arrow_display(c)) -> arrow_category(c).
inline FunctorData arrow_comparison(const FinCat& c, const DispCat& arrows, const TotalCategory& t,
                                    const FinCat& arr) {
  FunctorData F{t.cat, arr, std::vector<ObjIx>(t.cat.num_objects()), std::vector<MorIx>(t.cat.num_morphisms())};
  for (ObjIx o = 0; o < t.cat.num_objects(); ++o) F.on_obj[o] = arr.object(arrows.dobj(t.dobj_of_obj[o]).id);
  for (MorIx f = 0; f < t.cat.num_morphisms(); ++f) F.on_mor[f] = arr.morphism_ix(t.cat.morphism_id(f));
  (void)c;
  return F;
}

namespace detail {

/// Shared body of the direct slice and coslice displays. For slices the
/// objects over b are the morphisms into b; for coslices those out of b.
inline DispCat slice_like(const FinCat& c, bool coslice) {
  DispBuilder b(c);
  std::vector<DObjIx> x(c.num_morphisms());
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    x[f] = b.add_dobj(coslice ? c.src(f) : c.dst(f), c.morphism_id(f));
  }
  // key (k, h, f, g)
  std::map<std::tuple<MorIx, MorIx, MorIx, MorIx>, DMorIx> tri;
  for (MorIx k = 0; k < c.num_morphisms(); ++k) {
    auto objs_src = coslice ? c.out_of(c.src(k)) : c.into(c.src(k));
    auto objs_dst = coslice ? c.out_of(c.dst(k)) : c.into(c.dst(k));
    for (MorIx f : objs_src) {
      for (MorIx g : objs_dst) {
        // slice: h : src f -> src g with h;g = f;k.  coslice: h : dst f -> dst g with f;h = k;g.
        auto hs = coslice ? c.hom(c.dst(f), c.dst(g)) : c.hom(c.src(f), c.src(g));
        for (MorIx h : hs) {
          bool ok = coslice ? c.comp(f, h) == c.comp(k, g) : c.comp(h, g) == c.comp(f, k);
          if (!ok) continue;
          tri[{k, h, f, g}] =
              b.add_dmor(k, x[f], x[g], pair_name(c.morphism_id(h), c.morphism_id(f) + "." + c.morphism_id(g)));
        }
      }
    }
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    ObjIx base_obj = coslice ? c.src(f) : c.dst(f);
    ObjIx other = coslice ? c.dst(f) : c.src(f);
    b.set_did(x[f], tri.at({c.identity(base_obj), c.identity(other), f, f}));
  }
  for (const auto& [key, m1] : tri) {
    const auto& [k, h, f, g] = key;
    for (MorIx k2 : c.out_of(c.dst(k))) {
      MorIx kk = c.comp(k, k2);
      auto nexts = coslice ? c.out_of(c.dst(k2)) : c.into(c.dst(k2));
      for (MorIx g2 : nexts) {
        auto h2s = coslice ? c.hom(c.dst(g), c.dst(g2)) : c.hom(c.src(g), c.src(g2));
        for (MorIx h2 : h2s) {
          auto it = tri.find({k2, h2, g, g2});
          if (it == tri.end()) continue;
          b.set_dcomp(m1, it->second, tri.at({kk, c.comp(h, h2), f, g2}));
        }
      }
    }
  }
  return b.build();
}

}  // namespace detail

/// Objects over b are morphisms f into b; morphisms over k : b -> b' from f
/// to g are the h with h;g = f;k, named `<h>|<f>.<g>`.
inline DispCat slice_display(const FinCat& c) { return detail::slice_like(c, false); }

/// Objects over a are morphisms f out of a; morphisms over k : a -> a' from
/// f to g are the h with f;h = k;g, named `<h>|<f>.<g>`.
inline DispCat coslice_display(const FinCat& c) { return detail::slice_like(c, true); }

namespace detail {

/// total(dconst_c(c)) -> c × c, optionally swapping the two components.
inline FunctorData const_total_to_square(const FinCat& c, const DispCat& dconst, const TotalCategory& t,
                                         const FinCat& P, bool swap) {
  FunctorData F{t.cat, P, std::vector<ObjIx>(t.cat.num_objects()), std::vector<MorIx>(t.cat.num_morphisms())};
  for (ObjIx o = 0; o < t.cat.num_objects(); ++o) {
    const DObj& y = dconst.dobj(t.dobj_of_obj[o]);
    const std::string& b = c.object_id(y.over);
    F.on_obj[o] = P.object(swap ? pair_name(y.id, b) : pair_name(b, y.id));
  }
  for (MorIx f = 0; f < t.cat.num_morphisms(); ++f) {
    const DMor& h = dconst.dmor(t.dmor_of_mor[f]);
    const std::string& k = c.morphism_id(h.over);
    F.on_mor[f] = P.morphism_ix(swap ? pair_name(h.id, k) : pair_name(k, h.id));
  }
  return F;
}

inline DispCat slice_like_via_sigma(const FinCat& c, bool coslice) {
  DispCat dconst = constant_display(c, c);
  TotalCategory t = total_category(dconst);
  DispCat arrows = arrow_display(c);
  FunctorData F = const_total_to_square(c, dconst, t, arrows.base(), !coslice);
  return sigma_display(dconst, reindex(arrows, F));
}

}  // namespace detail

/// The slice display rebuilt as Σ over the constant display of the arrow
/// display pulled back along the swap. Objects are `<a>|<f>`.
inline DispCat slice_via_sigma(const FinCat& c) { return detail::slice_like_via_sigma(c, false); }

/// The coslice display rebuilt through the unswapped comparison. Objects are `<y>|<f>`.
inline DispCat coslice_via_sigma(const FinCat& c) { return detail::slice_like_via_sigma(c, true); }

/// Displayed functor over the identity from the Σ-built slice (or coslice)
/// display to the direct one. Morphism ids agree between the two.
inline DispFunctor slice_comparison(const FinCat& c, const DispCat& via_sigma, const DispCat& direct, bool coslice) {
  DispFunctor G{identity_functor(c), via_sigma, direct, std::vector<DObjIx>(via_sigma.num_dobjs(), kNone),
                std::vector<DMorIx>(via_sigma.num_dmors(), kNone)};
  for (DObjIx x = 0; x < direct.num_dobjs(); ++x) {
    MorIx f = c.morphism_ix(direct.dobj(x).id);
    ObjIx other = coslice ? c.dst(f) : c.src(f);
    auto s = via_sigma.find_dobj(direct.dobj(x).over, pair_name(c.object_id(other), direct.dobj(x).id));
    if (!s) throw Error(ErrorCode::MalformedInput, "no Σ-slice object for " + direct.dobj_label(x));
    G.on_dobj[*s] = x;
  }
  for (DMorIx m = 0; m < direct.num_dmors(); ++m) {
    auto s = via_sigma.find_dmor(direct.dmor(m).over, direct.dmor(m).id);
    if (!s) throw Error(ErrorCode::MalformedInput, "no Σ-slice morphism for " + direct.dmor_label(m));
    G.on_dmor[*s] = m;
  }
  return G;
}

// ---------------------------------------------------------------------------
// Algebras

/// Objects over c are α : F c -> c; the family over f : a -> b from α to β
/// is `{α.β}` when α;f = F f;β.
inline DispCat endofunctor_algebra_display(const FunctorData& F) {
  if (!(F.dom == F.cod)) throw Error(ErrorCode::MalformedInput, "algebra display needs an endofunctor");
  const FinCat& C = F.dom;
  DispBuilder b(C);
  std::vector<DObjIx> x(C.num_morphisms(), kNone);
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (MorIx a : C.hom(F.on_obj[c], c)) x[a] = b.add_dobj(c, C.morphism_id(a));
  }
  std::map<std::tuple<MorIx, MorIx, MorIx>, DMorIx> hom;  // (f, α, β)
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    ObjIx s = C.src(f), t = C.dst(f);
    for (MorIx a : C.hom(F.on_obj[s], s)) {
      for (MorIx be : C.hom(F.on_obj[t], t)) {
        if (C.comp(a, f) != C.comp(F.on_mor[f], be)) continue;
        hom[{f, a, be}] = b.add_dmor(f, x[a], x[be], C.morphism_id(a) + "." + C.morphism_id(be));
      }
    }
  }
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (MorIx a : C.hom(F.on_obj[c], c)) b.set_did(x[a], hom.at({C.identity(c), a, a}));
  }
  for (const auto& [key, m] : hom) {
    const auto& [f, a, be] = key;
    for (MorIx g : C.out_of(C.dst(f))) {
      for (MorIx ga : C.hom(F.on_obj[C.dst(g)], C.dst(g))) {
        auto it = hom.find({g, be, ga});
        if (it != hom.end()) b.set_dcomp(m, it->second, hom.at({C.comp(f, g), a, ga}));
      }
    }
  }
  return b.build();
}

struct Monad {
  FunctorData T;
  NatTransData mu;   // T∘T => T
  NatTransData eta;  // Id => T

  friend bool operator==(const Monad&, const Monad&) = default;
};

inline Report check_monad(const Monad& m) {
  Report r("check_monad");
  const FinCat& C = m.T.dom;
  if (!(m.T.cod == C)) {
    r.fail("not_endofunctor", "T is not an endofunctor");
    return r;
  }
  r.absorb(check_functor_laws(m.T), "T");
  if (!r.passed()) return r;
  FunctorData TT = compose_functors(m.T, m.T);
  FunctorData Id = identity_functor(C);
  if (!(m.mu.dom == TT) || !(m.mu.cod == m.T)) {
    r.fail("mu_type", "multiplication is not a transformation T∘T => T");
    return r;
  }
  if (!(m.eta.dom == Id) || !(m.eta.cod == m.T)) {
    r.fail("eta_type", "unit is not a transformation Id => T");
    return r;
  }
  r.absorb(check_nat_trans(m.mu), "mu");
  r.absorb(check_nat_trans(m.eta), "eta");
  if (!r.passed()) return r;
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    const ObjIx tc = m.T.on_obj[c];
    const MorIx mu_c = m.mu.components[c];
    if (C.comp(m.T.on_mor[mu_c], mu_c) != C.comp(m.mu.components[tc], mu_c)) {
      r.fail("associativity", "T(μ);μ differs from μT;μ at " + C.object_id(c), {C.object_id(c)});
    }
    if (C.comp(m.eta.components[tc], mu_c) != C.identity(tc)) {
      r.fail("left_unit", "ηT;μ is not the identity at " + C.object_id(c), {C.object_id(c)});
    }
    if (C.comp(m.T.on_mor[m.eta.components[c]], mu_c) != C.identity(tc)) {
      r.fail("right_unit", "T(η);μ is not the identity at " + C.object_id(c), {C.object_id(c)});
    }
  }
  return r;
}

/// Whether the F-algebra α : T c -> c satisfies the monad-algebra laws.
inline bool is_monad_algebra(const Monad& m, ObjIx c, MorIx alpha) {
  const FinCat& C = m.T.dom;
  return C.comp(m.eta.components[c], alpha) == C.identity(c) &&
         C.comp(m.T.on_mor[alpha], alpha) == C.comp(m.mu.components[c], alpha);
}

/// Σ of the full-sub display of monad algebras over the endofunctor-algebra total.
inline DispCat monad_algebra_display(const Monad& m) {
  Report r = check_monad(m);
  if (!r.passed()) {
    std::string why = r.findings.empty() ? "monad law failure" : r.findings.front().message;
    throw Error(ErrorCode::NotAMonad, why);
  }
  DispCat alg = endofunctor_algebra_display(m.T);
  TotalCategory t = total_category(alg);
  std::vector<bool> selected(t.cat.num_objects());
  for (ObjIx o = 0; o < t.cat.num_objects(); ++o) {
    const DObj& x = alg.dobj(t.dobj_of_obj[o]);
    selected[o] = is_monad_algebra(m, x.over, m.T.dom.morphism_ix(x.id));
  }
  return sigma_display(alg, full_sub_display(t.cat, selected));
}

// ---------------------------------------------------------------------------
// Opposite display

/// Over the opposite base; each family is transposed and composition reversed.
inline DispCat op_display(const DispCat& d) {
  FinCat op = opposite(d.base());
  DispBuilder b(op);
  for (DObjIx x = 0; x < d.num_dobjs(); ++x) b.add_dobj(d.dobj(x).over, d.dobj(x).id);
  for (DMorIx m = 0; m < d.num_dmors(); ++m) {
    const DMor& mm = d.dmor(m);
    b.add_dmor(op.morphism_ix(d.base().morphism_id(mm.over)), mm.dst, mm.src, mm.id);
  }
  for (DObjIx x = 0; x < d.num_dobjs(); ++x) b.set_did(x, d.did(x));
  for (const auto& [a, bb, h] : d.composition_entries()) b.set_dcomp(bb, a, h);
  return b.build();
}

// ---------------------------------------------------------------------------
// Displayed isomorphisms

/// The displayed inverse of m over the inverse of its base morphism, if any.
inline std::optional<DMorIx> displayed_inverse(const DispCat& d, DMorIx m) {
  const DMor& mm = d.dmor(m);
  auto inv = is_iso(d.base(), mm.over);
  if (!inv) throw Error(ErrorCode::BaseNotIso, d.base().morphism_id(mm.over) + " is not an isomorphism");
  for (DMorIx n : d.family(*inv, mm.dst, mm.src)) {
    if (d.dcomp(m, n) == d.did(mm.src) && d.dcomp(n, m) == d.did(mm.dst)) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Displayed functor categories

namespace detail {

inline std::vector<DispFunctor> enumerate_disp_functors(const DispCat& D, const DispCat& E, const FunctorData& F,
                                                        std::size_t bound, std::size_t& budget) {
  std::vector<DispFunctor> out;
  DispFunctor G{F, D, E, std::vector<DObjIx>(D.num_dobjs(), kNone), std::vector<DMorIx>(D.num_dmors(), kNone)};
  std::vector<DMorIx> order;
  std::vector<bool> is_did(D.num_dmors(), false);
  for (DObjIx x = 0; x < D.num_dobjs(); ++x) is_did[D.did(x)] = true;
  for (DMorIx m = 0; m < D.num_dmors(); ++m) {
    if (!is_did[m]) order.push_back(m);
  }
  std::vector<std::size_t> pos(D.num_dmors(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i + 1;
  std::vector<std::vector<std::tuple<DMorIx, DMorIx, DMorIx>>> checks(order.size() + 1);
  for (const auto& [a, b, h] : D.composition_entries()) {
    checks[std::max({pos[a], pos[b], pos[h]})].emplace_back(a, b, h);
  }
  auto consistent = [&](std::size_t level) {
    for (const auto& [a, b, h] : checks[level]) {
      auto img = E.dcompose(G.on_dmor[a], G.on_dmor[b]);
      if (!img || *img != G.on_dmor[h]) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> go_mor = [&](std::size_t i) {
    if (i == order.size()) {
      out.push_back(G);
      if (out.size() > bound) {
        throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " displayed functors");
      }
      return;
    }
    DMorIx m = order[i];
    const DMor& mm = D.dmor(m);
    for (DMorIx n : E.family(F.on_mor[mm.over], G.on_dobj[mm.src], G.on_dobj[mm.dst])) {
      if (budget-- == 0) throw Error(ErrorCode::ResourceLimit, "displayed functor search exceeded its budget");
      G.on_dmor[m] = n;
      if (consistent(i + 1)) go_mor(i + 1);
    }
    G.on_dmor[m] = kNone;
  };
  std::function<void(DObjIx)> go_obj = [&](DObjIx x) {
    if (x == D.num_dobjs()) {
      for (DObjIx y = 0; y < D.num_dobjs(); ++y) G.on_dmor[D.did(y)] = E.did(G.on_dobj[y]);
      if (consistent(0)) go_mor(0);
      return;
    }
    for (DObjIx y : E.fibre(F.on_obj[D.dobj(x).over])) {
      if (budget-- == 0) throw Error(ErrorCode::ResourceLimit, "displayed functor search exceeded its budget");
      G.on_dobj[x] = y;
      go_obj(x + 1);
    }
    G.on_dobj[x] = kNone;
  };
  go_obj(0);
  return out;
}

}  // namespace detail

/// All displayed functors D -> E over F, in lexicographic order of their maps.
inline std::vector<DispFunctor> enumerate_disp_functors(const DispCat& D, const DispCat& E, const FunctorData& F,
                                                        std::size_t bound = kDefaultBound) {
  std::size_t budget = bound * 64;
  return detail::enumerate_disp_functors(D, E, F, bound, budget);
}

/// All displayed transformations G => G' over α.
inline std::vector<DispNatTrans> enumerate_disp_nat_trans(const DispFunctor& G, const DispFunctor& G2,
                                                          const NatTransData& alpha,
                                                          std::size_t bound = kDefaultBound) {
  const DispCat& D = G.dom;
  const DispCat& E = G.cod;
  std::vector<DispNatTrans> out;
  DispNatTrans b{alpha, G, G2, std::vector<DMorIx>(D.num_dobjs(), kNone)};
  std::vector<std::vector<DMorIx>> checks(D.num_dobjs());
  for (DMorIx m = 0; m < D.num_dmors(); ++m) checks[std::max(D.dmor(m).src, D.dmor(m).dst)].push_back(m);
  std::function<void(DObjIx)> go = [&](DObjIx x) {
    if (x == D.num_dobjs()) {
      out.push_back(b);
      if (out.size() > bound) {
        throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " displayed transformations");
      }
      return;
    }
    for (DMorIx n : E.family(alpha.components[D.dobj(x).over], G.on_dobj[x], G2.on_dobj[x])) {
      b.components[x] = n;
      bool ok = true;
      for (DMorIx m : checks[x]) {
        const DMor& mm = D.dmor(m);
        auto lhs = E.dcompose(G.on_dmor[m], b.components[mm.dst]);
        auto rhs = E.dcompose(b.components[mm.src], G2.on_dmor[m]);
        if (!lhs || !rhs || *lhs != *rhs) {
          ok = false;
          break;
        }
      }
      if (ok) go(x + 1);
    }
    b.components[x] = kNone;
  };
  go(0);
  return out;
}

struct DispFunctorCategory {
  FunctorCategory base;
  DispCat disp;
  std::vector<DispFunctor> functors;         // per displayed object
  std::vector<DispNatTrans> transformations;  // per displayed morphism
};

/// [D, D'] over [C, C']: displayed functors over each F, displayed
/// transformations over each α, composed pointwise. Objects over F are
/// `G<k>`; morphisms over α are `<G>.<G'>.<k>`.
inline DispFunctorCategory disp_functor_category(const DispCat& d, const DispCat& d2,
                                                 std::size_t bound = kDefaultBound) {
  FunctorCategory fc = functor_category(d.base(), d2.base(), bound);
  DispBuilder b(fc.cat);
  std::vector<DispFunctor> functors;
  std::vector<std::vector<DObjIx>> over(fc.cat.num_objects());
  std::size_t budget = bound * 64;
  for (ObjIx i = 0; i < fc.cat.num_objects(); ++i) {
    auto gs = detail::enumerate_disp_functors(d, d2, fc.functors[i], bound, budget);
    if (functors.size() + gs.size() > bound) {
      throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " displayed functors");
    }
    for (std::size_t k = 0; k < gs.size(); ++k) {
      over[i].push_back(b.add_dobj(i, "G" + detail::padded(k, gs.size())));
      functors.push_back(std::move(gs[k]));
    }
  }
  std::vector<DispNatTrans> nts;
  std::map<std::tuple<MorIx, DObjIx, DObjIx, std::vector<DMorIx>>, DMorIx> lookup;
  for (MorIx t = 0; t < fc.cat.num_morphisms(); ++t) {
    const ObjIx i = fc.cat.src(t), j = fc.cat.dst(t);
    const bool ident = fc.cat.identity(i) == t;
    for (DObjIx gx : over[i]) {
      for (DObjIx gy : over[j]) {
        auto bs = enumerate_disp_nat_trans(functors[gx], functors[gy], fc.transformations[t], bound);
        if (nts.size() + bs.size() > bound) {
          throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " displayed transformations");
        }
        for (std::size_t k = 0; k < bs.size(); ++k) {
          DMorIx m = b.add_dmor(t, gx, gy, b.dobj(gx).id + "." + b.dobj(gy).id + "." + std::to_string(k));
          lookup[{t, gx, gy, bs[k].components}] = m;
          if (ident && gx == gy) {
            bool all_id = true;
            for (DObjIx x = 0; x < d.num_dobjs(); ++x) all_id = all_id && bs[k].components[x] == d2.did(functors[gx].on_dobj[x]);
            if (all_id) b.set_did(gx, m);
          }
          nts.push_back(std::move(bs[k]));
        }
      }
    }
  }
  // pointwise composition
  std::vector<std::pair<DObjIx, DObjIx>> ends(nts.size());
  std::vector<MorIx> base_of(nts.size());
  for (const auto& [key, m] : lookup) {
    ends[m] = {std::get<1>(key), std::get<2>(key)};
    base_of[m] = std::get<0>(key);
  }
  for (DMorIx s = 0; s < nts.size(); ++s) {
    for (DMorIx t = 0; t < nts.size(); ++t) {
      if (ends[s].second != ends[t].first) continue;
      std::vector<DMorIx> comps(d.num_dobjs());
      for (DObjIx x = 0; x < d.num_dobjs(); ++x) comps[x] = d2.dcomp(nts[s].components[x], nts[t].components[x]);
      MorIx base = fc.cat.comp(base_of[s], base_of[t]);
      auto it = lookup.find({base, ends[s].first, ends[t].second, comps});
      if (it != lookup.end()) b.set_dcomp(s, t, it->second);
    }
  }
  DispFunctorCategory out{fc, b.build(), {}, {}};
  out.functors.resize(functors.size());
  for (DObjIx x = 0; x < functors.size(); ++x) {
    out.functors[*out.disp.find_dobj(b.dobj(x).over, b.dobj(x).id)] = functors[x];
  }
  out.transformations.resize(nts.size());
  for (DMorIx m = 0; m < nts.size(); ++m) {
    out.transformations[*out.disp.find_dmor(b.dmor(m).over, b.dmor(m).id)] = nts[m];
  }
  return out;
}

/// Iso in the displayed functor category versus componentwise displayed isos.
inline Report pointwise_iso_check(const DispNatTrans& beta, std::size_t bound = kDefaultBound) {
  Report r("pointwise_iso_check");
  const DispCat& D = beta.dom.dom;
  const DispCat& E = beta.dom.cod;
  const FinCat& C2 = E.base();
  Report nat = check_disp_nat_trans(beta);
  if (!nat.passed()) {
    r.absorb(nat, "naturality");
    r.verdict = Verdict::error;
    return r;
  }
  bool pointwise = true;
  bool base_iso = true;
  NatTransData inv{beta.base.cod, beta.base.dom, std::vector<MorIx>(beta.base.components.size())};
  for (ObjIx c = 0; c < beta.base.components.size(); ++c) {
    auto i = is_iso(C2, beta.base.components[c]);
    if (!i) {
      base_iso = false;
      break;
    }
    inv.components[c] = *i;
  }
  if (!base_iso) {
    pointwise = false;
  } else {
    for (DObjIx x = 0; x < D.num_dobjs() && pointwise; ++x) {
      if (!displayed_inverse(E, beta.components[x])) {
        pointwise = false;
        r.info("component_not_iso", "component at " + D.dobj_label(x) + " is not a displayed isomorphism",
               {D.dobj_label(x)});
      }
    }
  }
  bool functor_iso = false;
  if (base_iso) {
    for (const auto& g : enumerate_disp_nat_trans(beta.cod, beta.dom, inv, bound)) {
      bool ok = true;
      for (DObjIx x = 0; x < D.num_dobjs() && ok; ++x) {
        ok = E.dcomp(beta.components[x], g.components[x]) == E.did(beta.dom.on_dobj[x]) &&
             E.dcomp(g.components[x], beta.components[x]) == E.did(beta.cod.on_dobj[x]);
      }
      if (ok) {
        functor_iso = true;
        break;
      }
    }
  }
  r.set("base_iso", base_iso);
  r.set("iso_in_functor_category", functor_iso);
  r.set("pointwise_iso", pointwise);
  if (functor_iso != pointwise) {
    r.error("disagreement", "inverse search and componentwise check disagree");
  }
  return r;
}

}  // namespace dispcat
