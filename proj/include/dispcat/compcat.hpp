#pragma once

#include <string>
#include <vector>

#include "dispcat/fibrations.hpp"
#include "dispcat/limits.hpp"

namespace dispcat {

/// A split type-category over a finite base. For Γ and A ∈ Ty(Γ) (indexed
/// by position in `ty.sets[Γ]`): the extension Γ.A, the projection
/// π_A : Γ.A -> Γ, and for f : Γ' -> Γ the map f.A : Γ'.f*A -> Γ.A.
struct CwA {
  FinCat base;
  Presheaf ty;
  std::vector<std::vector<ObjIx>> ext;   // [Γ][A]
  std::vector<std::vector<MorIx>> proj;  // [Γ][A]
  std::vector<std::vector<MorIx>> q;     // [f][A ∈ Ty(dst f)]

  friend bool operator==(const CwA&, const CwA&) = default;
};

/// Well-typedness: Ty is a presheaf and every table entry has the right
/// source and target. Entries may not be missing.
inline Report check_cwa_typing(const CwA& w) {
  Report r("check_cwa_typing");
  const FinCat& C = w.base;
  const Presheaf& T = w.ty;
  if (!(T.base == C)) throw Error(ErrorCode::BaseMismatch, "types presheaf over a different base");
  r.absorb(check_presheaf_laws(T), "ty");
  if (!r.passed()) return r;
  auto label = [&](ObjIx g, std::uint32_t a) { return C.object_id(g) + "." + T.sets[g][a]; };
  for (ObjIx g = 0; g < C.num_objects(); ++g) {
    for (std::uint32_t a = 0; a < T.sets[g].size(); ++a) {
      MorIx p = w.proj[g][a];
      if (p >= C.num_morphisms() || w.ext[g][a] >= C.num_objects() || C.src(p) != w.ext[g][a] || C.dst(p) != g) {
        r.fail("projection_type", "projection of " + label(g, a) + " has the wrong type", {label(g, a)});
        return r;
      }
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    const ObjIx g2 = C.src(f), g = C.dst(f);
    for (std::uint32_t a = 0; a < T.sets[g].size(); ++a) {
      const std::uint32_t fa = T.restrict[f][a];
      const MorIx qa = w.q[f][a];
      const std::string where = C.morphism_id(f) + "." + T.sets[g][a];
      if (qa >= C.num_morphisms() || C.src(qa) != w.ext[g2][fa] || C.dst(qa) != w.ext[g][a]) {
        r.fail("substitution_type", where + " has the wrong type", {where});
        return r;
      }
    }
  }
  return r;
}

inline Report check_cwa(const CwA& w) {
  Report r("check_cwa");
  const FinCat& C = w.base;
  const Presheaf& T = w.ty;
  r.absorb(check_cwa_typing(w));
  if (!r.passed()) return r;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    const ObjIx g2 = C.src(f), g = C.dst(f);
    for (std::uint32_t a = 0; a < T.sets[g].size(); ++a) {
      const std::uint32_t fa = T.restrict[f][a];
      const MorIx qa = w.q[f][a];
      const std::string where = C.morphism_id(f) + "." + T.sets[g][a];
      if (C.comp(qa, w.proj[g][a]) != C.comp(w.proj[g2][fa], f)) {
        r.fail("square_commutes", "substitution square for " + where + " does not commute", {where});
        return r;
      }
      if (!is_pullback(C, Square{w.proj[g][a], f, qa, w.proj[g2][fa]}).passed()) {
        r.fail("square_pullback", "substitution square for " + where + " is not a pullback", {where});
        return r;
      }
    }
  }
  auto label = [&](ObjIx g, std::uint32_t a) { return C.object_id(g) + "." + T.sets[g][a]; };
  for (ObjIx g = 0; g < C.num_objects(); ++g) {
    for (std::uint32_t a = 0; a < T.sets[g].size(); ++a) {
      if (w.q[C.identity(g)][a] != C.identity(w.ext[g][a])) {
        r.fail("functorial_identity", "substitution along the identity is not the identity at " + label(g, a),
               {label(g, a)});
        return r;
      }
    }
  }
  for (const auto& [f, g, h] : C.composition_entries()) {
    for (std::uint32_t a = 0; a < T.sets[C.dst(g)].size(); ++a) {
      if (w.q[h][a] != C.comp(w.q[f][T.restrict[g][a]], w.q[g][a])) {
        std::string where = C.morphism_id(f) + ";" + C.morphism_id(g) + " at " + T.sets[C.dst(g)][a];
        r.fail("functorial_composite", "substitution is not functorial for " + where,
               {C.morphism_id(f), C.morphism_id(g), T.sets[C.dst(g)][a]});
        return r;
      }
    }
  }
  return r;
}

/// A fibration of types with a cleaving and a comprehension functor into the
/// slice display over the identity.
struct ComprehensionCat {
  FinCat base;
  DispCat types;
  Cleaving cleaving;
  DispCat slice;
  DispFunctor chi;
};

inline Report check_comprehension_cat(const ComprehensionCat& cc) {
  Report r("check_comprehension_cat");
  const FinCat& C = cc.base;
  if (!(cc.types.base() == C) || !(cc.slice == slice_display(C))) {
    r.fail("components", "types or slice display over a different base");
    return r;
  }
  r.absorb(check_displayed_laws(cc.types), "types");
  if (!(cc.chi.base == identity_functor(C)) || !(cc.chi.dom == cc.types) || !(cc.chi.cod == cc.slice)) {
    r.fail("chi_type", "comprehension is not a displayed functor types -> slice over the identity");
    return r;
  }
  r.absorb(check_disp_functor(cc.chi), "chi");
  if (!r.passed()) return r;
  for (const auto& [key, m] : cc.cleaving.lifts) {
    if (cc.types.dmor(m).over != key.first || cc.types.dmor(m).dst != key.second || !is_cartesian(cc.types, m)) {
      r.fail("cleaving", "cleaving entry " + cc.types.dmor_label(m) + " is not a cartesian lift",
             {cc.types.dmor_label(m)});
      return r;
    }
  }
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (DObjIx x : cc.types.fibre(c)) {
      if (!cc.cleaving.lift(C.identity(c), x)) {
        r.fail("cleaving", "cleaving is not total", {cc.types.dobj_label(x)});
        return r;
      }
    }
  }
  std::size_t cartesian = 0;
  for (DMorIx m = 0; m < cc.types.num_dmors(); ++m) {
    if (!is_cartesian(cc.types, m)) continue;
    ++cartesian;
    DMorIx img = cc.chi.on_dmor[m];
    if (!is_cartesian(cc.slice, img)) {
      r.fail("preserves_cartesian",
             cc.types.dmor_label(m) + " is cartesian but its image " + cc.slice.dmor_label(img) + " is not",
             {cc.types.dmor_label(m), cc.slice.dmor_label(img)});
      return r;
    }
  }
  // The triangle of total functors commutes strictly: pr ∘ χ = pr.
  TotalCategory tt = total_category(cc.types), ts = total_category(cc.slice);
  FunctorData tchi = total_functor(cc.chi, tt, ts);
  bool triangle = compose_functors(tchi, ts.projection) == tt.projection;
  if (!triangle) r.fail("triangle", "comprehension does not commute with the projections");
  r.set("cartesian_morphisms", cartesian);
  r.set("strict_triangle", triangle);
  return r;
}

/// Types become the discrete fibration of elements of Ty; χ sends A over Γ to
/// π_A and the lift over f to the square (f, f.A). With `validate` the CwA
/// is checked first.
inline ComprehensionCat compcat_from_cwa(const CwA& w, bool validate = true) {
  if (validate) {
    Report r = check_cwa(w);
    if (!r.passed()) {
      throw Error(ErrorCode::CwALawFailure, r.findings.empty() ? "CwA laws fail" : r.findings.back().message);
    }
  }
  const FinCat& C = w.base;
  DispCat types = presheaf_to_discrete_fibration(w.ty);
  DispCat slice = slice_display(C);
  ComprehensionCat cc{C, types, *canonical_cleaving(types), slice,
                      DispFunctor{identity_functor(C), types, slice, std::vector<DObjIx>(types.num_dobjs()),
                                  std::vector<DMorIx>(types.num_dmors())}};
  cc.cleaving.kind = CleavingKind::discrete;
  auto local = [&](DObjIx x) {
    auto fib = types.fibre(types.dobj(x).over);
    return static_cast<std::uint32_t>(std::find(fib.begin(), fib.end(), x) - fib.begin());
  };
  for (DObjIx x = 0; x < types.num_dobjs(); ++x) {
    ObjIx g = types.dobj(x).over;
    cc.chi.on_dobj[x] = *slice.find_dobj(g, C.morphism_id(w.proj[g][local(x)]));
  }
  for (DMorIx m = 0; m < types.num_dmors(); ++m) {
    const DMor& mm = types.dmor(m);
    const ObjIx g2 = C.src(mm.over), g = C.dst(mm.over);
    const std::uint32_t a = local(mm.dst), fa = local(mm.src);
    const std::string id = pair_name(C.morphism_id(w.q[mm.over][a]),
                                     C.morphism_id(w.proj[g2][fa]) + "." + C.morphism_id(w.proj[g][a]));
    auto img = slice.find_dmor(mm.over, id);
    if (!img) throw Error(ErrorCode::CwALawFailure, "substitution square for " + types.dmor_label(m) + " is not a slice morphism");
    cc.chi.on_dmor[m] = *img;
  }
  return cc;
}

}  // namespace dispcat
