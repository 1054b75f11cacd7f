#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dispcat/fibrations.hpp"
#include "dispcat/gaunt.hpp"

namespace dispcat {

/// Univalence of a display, decided fibrewise and cross-checked against the
/// direct reading: displayed isos over an identity are exactly the displayed
/// identities.
inline Report is_univalent_display(const DispCat& d) {
  Report r("is_univalent_display");
  const FinCat& C = d.base();
  bool fibrewise = true;
  for (ObjIx c = 0; c < C.num_objects() && fibrewise; ++c) {
    Report f = is_univalent_category(fibre_category(d, c));
    if (!f.passed()) {
      fibrewise = false;
      for (Finding fd : f.findings) {
        for (auto& w : fd.witnesses) w = C.object_id(c) + "/" + w;
        r.findings.push_back(std::move(fd));
      }
      r.verdict = Verdict::fail;
    }
  }
  bool direct = true;
  for (ObjIx c = 0; c < C.num_objects() && direct; ++c) {
    for (DMorIx m : d.over(C.identity(c))) {
      if (!displayed_inverse(d, m)) continue;
      const DMor& mm = d.dmor(m);
      if (mm.src != mm.dst || m != d.did(mm.src)) {
        direct = false;
        break;
      }
    }
  }
  r.set("fibrewise", fibrewise);
  r.set("direct", direct);
  if (fibrewise != direct) r.error("disagreement", "fibrewise and direct univalence verdicts differ");
  return r;
}

/// Base univalent and display univalent imply total univalent.
inline Report total_univalence_check(const DispCat& d) {
  Report r("total_univalence_check");
  bool base = is_univalent_category(d.base()).passed();
  bool disp = is_univalent_display(d).passed();
  Report tr = is_univalent_category(total_category(d).cat);
  bool total = tr.passed();
  r.set("base_univalent", base);
  r.set("display_univalent", disp);
  r.set("total_univalent", total);
  r.set("vacuous", !(base && disp));
  if (base && disp && !total) {
    r.absorb(tr, "total");
    r.error("implication_violated", "univalent base and display with a non-univalent total category");
  }
  return r;
}

/// For a univalent display: at most one cartesian lift everywhere, and a
/// unique cleaving when it is a weak fibration.
inline Report unique_cartesian_lifts_check(const DispCat& d, std::size_t bound = kDefaultBound) {
  Report r("unique_cartesian_lifts_check");
  Report u = is_univalent_display(d);
  if (!u.passed()) throw Error(ErrorCode::NotUnivalentDisplay, "display is not univalent");
  const FinCat& C = d.base();
  std::size_t max_lifts = 0;
  bool weak = true;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) {
      auto ls = cartesian_lifts(d, f, x);
      max_lifts = std::max(max_lifts, ls.size());
      if (ls.empty()) weak = false;
      if (ls.size() > 1) {
        r.error("multiple_lifts", std::to_string(ls.size()) + " cartesian lifts of " + C.morphism_id(f) + " into " +
                                      d.dobj_label(x),
                {C.morphism_id(f), d.dobj_label(x)});
      }
    }
  }
  r.set("max_lifts", max_lifts);
  r.set("weak_fibration", weak);
  if (weak) {
    std::size_t n = enumerate_cleavings(d, bound).size();
    r.set("cleavings", n);
    if (n != 1) r.error("cleaving_not_unique", std::to_string(n) + " cleavings of a univalent fibration");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Structure identity principle

/// Structures P(c) on each object and a predicate H(α, β, f) saying when f
/// is a structure-preserving map from α to β.
struct StandardStructure {
  FinCat base;
  std::vector<std::vector<std::string>> P;                     // per object
  std::set<std::tuple<MorIx, std::uint32_t, std::uint32_t>> H;  // (f, α, β)

  bool holds(MorIx f, std::uint32_t a, std::uint32_t b) const { return H.count({f, a, b}) != 0; }

  friend bool operator==(const StandardStructure&, const StandardStructure&) = default;
};

/// Items 2-4: identity closure, composition closure, antisymmetry of the
/// preorder α ≤ β iff H(α, β, id).
inline Report check_standard_structure(const StandardStructure& s) {
  Report r("check_standard_structure");
  const FinCat& C = s.base;
  bool ident = true, comp = true, antisym = true;
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (std::uint32_t a = 0; a < s.P[c].size(); ++a) {
      if (!s.holds(C.identity(c), a, a)) {
        if (ident) r.fail("identity_closure", "identity of " + C.object_id(c) + " does not preserve " + s.P[c][a],
                          {C.object_id(c), s.P[c][a]});
        ident = false;
      }
    }
  }
  for (const auto& [f, g, h] : C.composition_entries()) {
    const ObjIx a = C.src(f), b = C.dst(f), c = C.dst(g);
    for (std::uint32_t x = 0; x < s.P[a].size(); ++x) {
      for (std::uint32_t y = 0; y < s.P[b].size(); ++y) {
        if (!s.holds(f, x, y)) continue;
        for (std::uint32_t z = 0; z < s.P[c].size(); ++z) {
          if (s.holds(g, y, z) && !s.holds(h, x, z)) {
            if (comp) r.fail("composition_closure",
                             C.morphism_id(f) + ";" + C.morphism_id(g) + " does not preserve " + s.P[a][x] + " -> " +
                                 s.P[c][z],
                             {C.morphism_id(f), C.morphism_id(g), s.P[a][x], s.P[b][y], s.P[c][z]});
            comp = false;
          }
        }
      }
    }
  }
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    const MorIx id = C.identity(c);
    for (std::uint32_t a = 0; a < s.P[c].size(); ++a) {
      for (std::uint32_t b = a + 1; b < s.P[c].size(); ++b) {
        if (s.holds(id, a, b) && s.holds(id, b, a)) {
          if (antisym) r.fail("not_antisymmetric", s.P[c][a] + " and " + s.P[c][b] + " on " + C.object_id(c) +
                                                       " are related both ways",
                              {C.object_id(c), s.P[c][a], s.P[c][b]});
          antisym = false;
        }
      }
    }
  }
  r.set("identity_closed", ident);
  r.set("composition_closed", comp);
  r.set("antisymmetric", antisym);
  return r;
}

/// Objects over c are P(c); the family over f from α to β is `{α.β}` when H holds.
inline DispCat sip_to_display(const StandardStructure& s) {
  Report r = check_standard_structure(s);
  if (!r.flag("identity_closed") || !r.flag("composition_closed")) {
    throw Error(ErrorCode::NotClosed, r.findings.empty() ? "closure fails" : r.findings.front().message);
  }
  const FinCat& C = s.base;
  DispBuilder b(C);
  std::vector<std::vector<DObjIx>> x(C.num_objects());
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (const auto& p : s.P[c]) x[c].push_back(b.add_dobj(c, p));
  }
  std::map<std::tuple<MorIx, std::uint32_t, std::uint32_t>, DMorIx> m;
  for (const auto& [f, a, bb] : s.H) {
    m[{f, a, bb}] = b.add_dmor(f, x[C.src(f)][a], x[C.dst(f)][bb], s.P[C.src(f)][a] + "." + s.P[C.dst(f)][bb]);
  }
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (std::uint32_t a = 0; a < s.P[c].size(); ++a) b.set_did(x[c][a], m.at({C.identity(c), a, a}));
  }
  for (const auto& [k1, m1] : m) {
    const auto& [f, a, bb] = k1;
    for (MorIx g : C.out_of(C.dst(f))) {
      for (std::uint32_t cc = 0; cc < s.P[C.dst(g)].size(); ++cc) {
        auto it = m.find({g, bb, cc});
        if (it != m.end()) b.set_dcomp(m1, it->second, m.at({C.comp(f, g), a, cc}));
      }
    }
  }
  return b.build();
}

/// Antisymmetry agrees with univalence of the display, and (for a univalent
/// base) the total category is then univalent.
inline Report sip_univalence_check(const StandardStructure& s) {
  Report r("sip_univalence_check");
  Report st = check_standard_structure(s);
  DispCat d = sip_to_display(s);
  bool antisym = st.flag("antisymmetric");
  bool disp = is_univalent_display(d).passed();
  bool base = is_univalent_category(s.base).passed();
  r.set("antisymmetric", antisym);
  r.set("display_univalent", disp);
  r.set("base_univalent", base);
  if (antisym != disp) r.error("disagreement", "antisymmetry and display univalence differ");
  if (!antisym) {
    for (const auto& f : st.findings) {
      if (f.code == "not_antisymmetric") r.fail(f.code, f.message, f.witnesses);
    }
  }
  if (base && disp) {
    bool total = is_univalent_category(total_category(d).cat).passed();
    r.set("total_univalent", total);
    if (!total) r.error("corollary_violated", "univalent base and structure with a non-univalent total category");
  }
  return r;
}

/// Algebra structures for an endofunctor: P(c) = hom(F c, c), H(α, β, f) iff α;f = F f;β.
inline StandardStructure falg_structure(const FunctorData& F) {
  const FinCat& C = F.dom;
  StandardStructure s{C, std::vector<std::vector<std::string>>(C.num_objects()), {}};
  std::vector<std::vector<MorIx>> alg(C.num_objects());
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (MorIx a : C.hom(F.on_obj[c], c)) alg[c].push_back(a);
    std::sort(alg[c].begin(), alg[c].end(), [&](MorIx x, MorIx y) { return C.morphism_id(x) < C.morphism_id(y); });
    for (MorIx a : alg[c]) s.P[c].push_back(C.morphism_id(a));
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    const ObjIx a = C.src(f), b = C.dst(f);
    for (std::uint32_t i = 0; i < alg[a].size(); ++i) {
      for (std::uint32_t j = 0; j < alg[b].size(); ++j) {
        if (C.comp(alg[a][i], f) == C.comp(F.on_mor[f], alg[b][j])) s.H.insert({f, i, j});
      }
    }
  }
  return s;
}

/// Monad algebras as a standard structure, named as in the monad-algebra display.
inline StandardStructure monad_structure(const Monad& m) {
  const FinCat& C = m.T.dom;
  StandardStructure base = falg_structure(m.T);
  StandardStructure s{C, std::vector<std::vector<std::string>>(C.num_objects()), {}};
  std::vector<std::vector<std::uint32_t>> keep(C.num_objects());
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (std::uint32_t i = 0; i < base.P[c].size(); ++i) {
      if (is_monad_algebra(m, c, C.morphism_ix(base.P[c][i]))) {
        keep[c].push_back(i);
        s.P[c].push_back(pair_name(base.P[c][i], "tt"));
      }
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    const auto& ka = keep[C.src(f)];
    const auto& kb = keep[C.dst(f)];
    for (std::uint32_t i = 0; i < ka.size(); ++i) {
      for (std::uint32_t j = 0; j < kb.size(); ++j) {
        if (base.holds(f, ka[i], kb[j])) s.H.insert({f, i, j});
      }
    }
  }
  return s;
}

namespace detail {

/// Same objects and same family sizes, matching objects by (over, id).
inline bool same_shape(const DispCat& a, const DispCat& b) {
  if (!(a.base() == b.base()) || a.num_dobjs() != b.num_dobjs() || a.num_dmors() != b.num_dmors()) return false;
  for (DObjIx x = 0; x < a.num_dobjs(); ++x) {
    if (a.dobj(x).over != b.dobj(x).over || a.dobj(x).id != b.dobj(x).id) return false;
  }
  const FinCat& C = a.base();
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : a.fibre(C.src(f))) {
      for (DObjIx y : a.fibre(C.dst(f))) {
        if (a.family(f, x, y).size() != b.family(f, x, y).size()) return false;
      }
    }
  }
  return true;
}

inline Report algebra_univalence(const DispCat& alg, const StandardStructure& s, const char* cmd) {
  Report r(cmd);
  Report st = check_standard_structure(s);
  r.absorb(st, "structure");
  Report u = is_univalent_display(alg);
  r.absorb(u, "display");
  bool matches = same_shape(alg, sip_to_display(s));
  r.set("structure_presentation_matches", matches);
  r.set("display_univalent", u.passed());
  if (!matches) r.error("presentation_mismatch", "the structure does not present the algebra display");
  return r;
}

}  // namespace detail

inline Report algebra_display_univalence(const FunctorData& F) {
  return detail::algebra_univalence(endofunctor_algebra_display(F), falg_structure(F), "algebra_display_univalence");
}

inline Report algebra_display_univalence(const Monad& m) {
  return detail::algebra_univalence(monad_algebra_display(m), monad_structure(m), "algebra_display_univalence");
}

// ---------------------------------------------------------------------------
// Amnestic functors

/// Every iso i of the domain is an identity exactly when F i is.
inline Report is_amnestic(const FunctorData& F) {
  Report r("is_amnestic");
  const FinCat& C = F.dom;
  for (MorIx i : isomorphisms(C)) {
    bool a = is_identity_morphism(C, i);
    bool b = is_identity_morphism(F.cod, F.on_mor[i]);
    if (a != b) {
      r.fail("iso_identity_mismatch",
             C.morphism_id(i) + (a ? " is" : " is not") + " an identity but its image " +
                 F.cod.morphism_id(F.on_mor[i]) + (b ? " is" : " is not"),
             {C.morphism_id(i)});
      return r;
    }
  }
  return r;
}

inline Report amnestic_iff_univalent_check(const DispCat& d) {
  Report r("amnestic_iff_univalent_check");
  bool univ = is_univalent_display(d).passed();
  Report am = is_amnestic(total_category(d).projection);
  r.set("display_univalent", univ);
  r.set("projection_amnestic", am.passed());
  if (univ != am.passed()) r.error("disagreement", "univalence and amnesticity of the projection differ");
  return r;
}

}  // namespace dispcat
