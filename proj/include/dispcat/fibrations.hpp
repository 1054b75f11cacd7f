#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dispcat/constructions.hpp"
#include "dispcat/gaunt.hpp"
#include "dispcat/limits.hpp"

namespace dispcat {

/// A probe (g, d'', h̄) against f̄ : d' -> d over f, with g : c'' -> c' and
/// h̄ : d'' -> d over g;f.
struct Probe {
  MorIx g = 0;
  DObjIx source = 0;
  DMorIx h = 0;

  friend bool operator==(const Probe&, const Probe&) = default;
};

struct ProbeFactor {
  Probe probe;
  DMorIx factor = 0;  // the unique ḡ with ḡ;f̄ = h̄
};

struct CartesianWitness {
  DMorIx fbar = 0;
  std::vector<ProbeFactor> factors;
};

struct CartesianResult {
  std::optional<CartesianWitness> witness;
  std::optional<Probe> failing;
  std::size_t factorisations = 0;  // count at the failing probe

  explicit operator bool() const { return witness.has_value(); }
};

inline std::string probe_label(const DispCat& d, const Probe& p) {
  return "(" + d.base().morphism_id(p.g) + ", " + d.dobj_label(p.source) + ", " + d.dmor_label(p.h) + ")";
}

/// Decides cartesianness by enumerating probes in (g, d'', h̄) order.
inline CartesianResult is_cartesian(const DispCat& d, DMorIx fbar) {
  if (fbar >= d.num_dmors()) throw Error(ErrorCode::UnknownMorphism, std::to_string(fbar));
  const FinCat& C = d.base();
  const DMor& m = d.dmor(fbar);
  const ObjIx c1 = C.src(m.over);
  CartesianResult out;
  CartesianWitness w{fbar, {}};
  std::vector<MorIx> gs(C.into(c1).begin(), C.into(c1).end());
  std::sort(gs.begin(), gs.end());
  std::unordered_map<DMorIx, std::pair<std::size_t, DMorIx>> hits;
  for (MorIx g : gs) {
    const MorIx gf = C.comp(g, m.over);
    for (DObjIx s : d.fibre(C.src(g))) {
      hits.clear();
      for (DMorIx gb : d.family(g, s, m.src)) {
        auto& slot = hits[d.dcomp(gb, fbar)];
        if (slot.first++ == 0) slot.second = gb;
      }
      for (DMorIx h : d.family(gf, s, m.dst)) {
        auto it = hits.find(h);
        std::size_t n = it == hits.end() ? 0 : it->second.first;
        if (n != 1) {
          out.failing = Probe{g, s, h};
          out.factorisations = n;
          return out;
        }
        w.factors.push_back({Probe{g, s, h}, it->second.second});
      }
    }
  }
  out.witness = std::move(w);
  return out;
}

struct Lift {
  DObjIx source = 0;
  DMorIx fbar = 0;

  friend bool operator==(const Lift&, const Lift&) = default;
};

/// All cartesian lifts of f into dd, in order of the lifted morphism.
inline std::vector<Lift> cartesian_lifts(const DispCat& d, MorIx f, DObjIx dd) {
  if (f >= d.base().num_morphisms()) throw Error(ErrorCode::UnknownMorphism, std::to_string(f));
  if (dd >= d.num_dobjs()) throw Error(ErrorCode::UnknownObject, std::to_string(dd));
  if (d.dobj(dd).over != d.base().dst(f)) {
    throw Error(ErrorCode::MalformedInput, d.dobj_label(dd) + " is not over the target of " + d.base().morphism_id(f));
  }
  std::vector<Lift> out;
  for (DMorIx m : d.over(f)) {
    if (d.dmor(m).dst == dd && is_cartesian(d, m)) out.push_back({d.dmor(m).src, m});
  }
  return out;
}

enum class CleavingKind { general, split, iso, discrete };

inline const char* to_string(CleavingKind k) {
  switch (k) {
    case CleavingKind::general: return "general";
    case CleavingKind::split: return "split";
    case CleavingKind::iso: return "iso";
    case CleavingKind::discrete: return "discrete";
  }
  return "general";
}

/// A choice of lift for each (f, d) with f ranging over the domain of the
/// cleaving (all morphisms, or only isomorphisms for the iso kind).
struct Cleaving {
  CleavingKind kind = CleavingKind::general;
  std::map<std::pair<MorIx, DObjIx>, DMorIx> lifts;

  std::optional<DMorIx> lift(MorIx f, DObjIx dd) const {
    auto it = lifts.find({f, dd});
    if (it == lifts.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Cleaving&, const Cleaving&) = default;
};

/// Checks the two split equations for a cleaving defined on all morphisms.
inline Report check_split(const DispCat& d, const Cleaving& cl) {
  Report r("check_split");
  const FinCat& C = d.base();
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (DObjIx x : d.fibre(c)) {
      auto l = cl.lift(C.identity(c), x);
      if (!l || *l != d.did(x)) {
        r.fail("identity_lift", "lift of the identity at " + d.dobj_label(x) + " is not the displayed identity",
               {d.dobj_label(x)});
        return r;
      }
    }
  }
  for (const auto& [f, g, fg] : C.composition_entries()) {
    for (DObjIx x : d.fibre(C.dst(g))) {
      auto lg = cl.lift(g, x);
      if (!lg) continue;
      auto lf = cl.lift(f, d.dmor(*lg).src);
      auto lfg = cl.lift(fg, x);
      if (!lf || !lfg || d.dcomp(*lf, *lg) != *lfg) {
        r.fail("composite_lift",
               "lift of " + C.morphism_id(fg) + " at " + d.dobj_label(x) + " is not the composite of lifts",
               {C.morphism_id(f), C.morphism_id(g), d.dobj_label(x)});
        return r;
      }
    }
  }
  return r;
}

struct SplitSearch {
  std::optional<Cleaving> cleaving;
  bool exhaustive = true;  // false when the budget ran out
  std::size_t steps = 0;
};

/// Backtracking search for a split cleaving among all cartesian lifts,
/// trying choices in lift order (so the canonical cleaving first).
inline SplitSearch find_split_cleaving(const DispCat& d, std::size_t bound = kDefaultBound) {
  const FinCat& C = d.base();
  std::vector<std::pair<MorIx, DObjIx>> keys;
  std::vector<std::vector<DMorIx>> choices;
  std::map<std::pair<MorIx, DObjIx>, std::size_t> pos;
  SplitSearch out;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) {
      std::vector<DMorIx> ls;
      if (C.identity(C.dst(f)) == f) {
        ls.push_back(d.did(x));
      } else {
        for (const Lift& l : cartesian_lifts(d, f, x)) ls.push_back(l.fbar);
      }
      if (ls.empty()) return out;  // not even a weak fibration
      pos[{f, x}] = keys.size();
      keys.push_back({f, x});
      choices.push_back(std::move(ls));
    }
  }
  struct Eq {
    MorIx f, g, fg;
    DObjIx x;
  };
  std::vector<Eq> eqs;
  for (const auto& [f, g, fg] : C.composition_entries()) {
    for (DObjIx x : d.fibre(C.dst(g))) eqs.push_back({f, g, fg, x});
  }
  std::vector<DMorIx> chosen(keys.size(), kNone);
  // An equation is checked as soon as its three lifts are chosen.
  auto consistent = [&](std::size_t level) {
    for (const Eq& e : eqs) {
      std::size_t pg = pos.at({e.g, e.x}), pfg = pos.at({e.fg, e.x});
      if (pg > level || pfg > level) continue;
      std::size_t pf = pos.at({e.f, d.dmor(chosen[pg]).src});
      if (pf > level) continue;
      if (d.dcomp(chosen[pf], chosen[pg]) != chosen[pfg]) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == keys.size()) {
      Cleaving cl{CleavingKind::split, {}};
      for (std::size_t k = 0; k < keys.size(); ++k) cl.lifts[keys[k]] = chosen[k];
      out.cleaving = std::move(cl);
      return true;
    }
    for (DMorIx m : choices[i]) {
      if (++out.steps > bound) {
        out.exhaustive = false;
        return true;
      }
      chosen[i] = m;
      if (consistent(i) && go(i + 1)) return true;
    }
    chosen[i] = kNone;
    return false;
  };
  go(0);
  return out;
}

/// Number of cleavings (product of lift counts), saturating at `cap`.
inline std::size_t count_cleavings(const DispCat& d, std::size_t cap = static_cast<std::size_t>(-1)) {
  const FinCat& C = d.base();
  std::size_t n = 1;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) {
      std::size_t k = cartesian_lifts(d, f, x).size();
      if (k == 0) return 0;
      n = n > cap / k ? cap : n * k;
    }
  }
  return n;
}

/// Lists every cleaving by exhausting lift choices.
inline std::vector<Cleaving> enumerate_cleavings(const DispCat& d, std::size_t bound = kDefaultBound) {
  const FinCat& C = d.base();
  std::vector<std::pair<MorIx, DObjIx>> keys;
  std::vector<std::vector<Lift>> choices;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) {
      keys.push_back({f, x});
      choices.push_back(cartesian_lifts(d, f, x));
    }
  }
  std::vector<Cleaving> out;
  Cleaving cur;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == keys.size()) {
      out.push_back(cur);
      if (out.size() > bound) throw Error(ErrorCode::ResourceLimit, "more than " + std::to_string(bound) + " cleavings");
      return;
    }
    for (const Lift& l : choices[i]) {
      cur.lifts[keys[i]] = l.fbar;
      go(i + 1);
    }
    cur.lifts.erase(keys[i]);
  };
  go(0);
  return out;
}

/// The first cartesian lift for every (f, d), if all exist.
inline std::optional<Cleaving> canonical_cleaving(const DispCat& d, std::optional<std::pair<MorIx, DObjIx>>* missing = nullptr) {
  const FinCat& C = d.base();
  Cleaving cl;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) {
      auto ls = cartesian_lifts(d, f, x);
      if (ls.empty()) {
        if (missing) *missing = std::pair{f, x};
        return std::nullopt;
      }
      cl.lifts[{f, x}] = ls.front().fbar;
    }
  }
  return cl;
}

/// Opcartesian in d iff cartesian in the opposite display.
inline CartesianResult is_opcartesian(const DispCat& d, DMorIx fbar) {
  DispCat op = op_display(d);
  const DMor& m = d.dmor(fbar);
  auto t = op.find_dmor(op.base().morphism_ix(d.base().morphism_id(m.over)), m.id);
  return is_cartesian(op, *t);
}

// ---------------------------------------------------------------------------
// Displayed isomorphisms and isofibrations

struct DispIso {
  DMorIx fbar = 0;
  DMorIx inverse = 0;
};

inline std::optional<DispIso> is_displayed_iso(const DispCat& d, DMorIx fbar) {
  if (fbar >= d.num_dmors()) throw Error(ErrorCode::UnknownMorphism, std::to_string(fbar));
  auto inv = displayed_inverse(d, fbar);
  if (!inv) return std::nullopt;
  return DispIso{fbar, *inv};
}

struct IsoCleavingResult {
  std::optional<Cleaving> cleaving;
  std::optional<std::pair<MorIx, DObjIx>> missing;  // base iso and target without an iso lift
};

/// A displayed-iso lift for every base isomorphism and target, first in order.
inline IsoCleavingResult find_iso_cleaving(const DispCat& d) {
  const FinCat& C = d.base();
  IsoCleavingResult out;
  Cleaving cl{CleavingKind::iso, {}};
  for (MorIx i : isomorphisms(C)) {
    for (DObjIx x : d.fibre(C.dst(i))) {
      std::optional<DMorIx> found;
      for (DMorIx m : d.over(i)) {
        if (d.dmor(m).dst == x && displayed_inverse(d, m)) {
          found = m;
          break;
        }
      }
      if (!found) {
        out.missing = std::pair{i, x};
        return out;
      }
      cl.lifts[{i, x}] = *found;
    }
  }
  out.cleaving = std::move(cl);
  return out;
}

/// Over a univalent base every iso is an identity; lift each to the displayed identity.
inline Cleaving iso_cleaving_from_gaunt_base(const DispCat& d) {
  const FinCat& C = d.base();
  Report g = is_univalent_category(C);
  if (!g.passed()) {
    throw Error(ErrorCode::BaseNotUnivalent,
                g.findings.empty() ? "base is not univalent" : g.findings.front().message);
  }
  Cleaving cl{CleavingKind::iso, {}};
  for (MorIx i : isomorphisms(C)) {
    for (DObjIx x : d.fibre(C.dst(i))) cl.lifts[{i, x}] = d.did(x);
  }
  return cl;
}

// ---------------------------------------------------------------------------
// Discrete fibrations and presheaves

/// Exactly one (d', f̄) over each (f, d); on success also confirms that all
/// lifts are cartesian and the induced cleaving is split.
inline Report is_discrete_fibration(const DispCat& d) {
  Report r("is_discrete_fibration");
  const FinCat& C = d.base();
  Cleaving cl{CleavingKind::discrete, {}};
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) {
      std::vector<DMorIx> into;
      for (DMorIx m : d.over(f)) {
        if (d.dmor(m).dst == x) into.push_back(m);
      }
      if (into.size() != 1) {
        std::vector<std::string> w{C.morphism_id(f), d.dobj_label(x)};
        for (DMorIx m : into) w.push_back(d.dmor_label(m));
        r.fail(into.empty() ? "no_lift" : "multiple_lifts",
               std::to_string(into.size()) + " morphisms over " + C.morphism_id(f) + " into " + d.dobj_label(x), w);
        return r;
      }
      cl.lifts[{f, x}] = into.front();
    }
  }
  bool cartesian = true;
  for (const auto& [key, m] : cl.lifts) {
    if (!is_cartesian(d, m)) {
      cartesian = false;
      r.error("lift_not_cartesian", d.dmor_label(m) + " is the unique lift but not cartesian", {d.dmor_label(m)});
      break;
    }
  }
  Report split = check_split(d, cl);
  if (!split.passed()) {
    r.absorb(split, "split");
    r.verdict = Verdict::error;
  }
  r.set("lifts_cartesian", cartesian);
  r.set("split", split.passed());
  return r;
}

/// The category of elements: D_c is P(c); the lift of f into e is `<e'>.<e>`
/// with e' the restriction of e along f.
inline DispCat presheaf_to_discrete_fibration(const Presheaf& p) {
  Report laws = check_presheaf_laws(p);
  if (!laws.passed()) {
    throw Error(ErrorCode::MalformedInput,
                "presheaf laws fail: " + (laws.findings.empty() ? std::string() : laws.findings.front().message));
  }
  const FinCat& C = p.base;
  DispBuilder b(C);
  std::vector<std::vector<DObjIx>> x(C.num_objects());
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (const auto& e : p.sets[c]) x[c].push_back(b.add_dobj(c, e));
  }
  std::vector<std::vector<DMorIx>> lift(C.num_morphisms());
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    const ObjIx a = C.src(f), bb = C.dst(f);
    for (std::uint32_t i = 0; i < p.sets[bb].size(); ++i) {
      std::uint32_t j = p.restrict[f][i];
      lift[f].push_back(b.add_dmor(f, x[a][j], x[bb][i], p.sets[a][j] + "." + p.sets[bb][i]));
    }
  }
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (std::uint32_t i = 0; i < p.sets[c].size(); ++i) b.set_did(x[c][i], lift[C.identity(c)][i]);
  }
  for (const auto& [f, g, h] : C.composition_entries()) {
    for (std::uint32_t i = 0; i < p.sets[C.dst(g)].size(); ++i) {
      std::uint32_t j = p.restrict[g][i];
      b.set_dcomp(lift[f][j], lift[g][i], lift[h][i]);
    }
  }
  return b.build();
}

inline Presheaf discrete_fibration_to_presheaf(const DispCat& d) {
  Report r = is_discrete_fibration(d);
  if (!r.passed()) {
    throw Error(ErrorCode::NotDiscrete, r.findings.empty() ? "not a discrete fibration" : r.findings.front().message);
  }
  const FinCat& C = d.base();
  Presheaf p{C, std::vector<std::vector<std::string>>(C.num_objects()), {}};
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    for (DObjIx x : d.fibre(c)) p.sets[c].push_back(d.dobj(x).id);
  }
  auto local = [&](DObjIx x) {
    auto fib = d.fibre(d.dobj(x).over);
    return static_cast<std::uint32_t>(std::find(fib.begin(), fib.end(), x) - fib.begin());
  };
  p.restrict.resize(C.num_morphisms());
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.dst(f))) {
      for (DMorIx m : d.over(f)) {
        if (d.dmor(m).dst == x) p.restrict[f].push_back(local(d.dmor(m).src));
      }
    }
  }
  return p;
}

/// A presheaf morphism as a displayed functor over the identity between elements.
inline DispFunctor presheaf_morphism_to_disp_functor(const PresheafMorphism& phi, const DispCat& dom,
                                                     const DispCat& cod) {
  const FinCat& C = phi.dom.base;
  DispFunctor G{identity_functor(C), dom, cod, std::vector<DObjIx>(dom.num_dobjs()),
                std::vector<DMorIx>(dom.num_dmors())};
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    auto fib = dom.fibre(c);
    auto cfib = cod.fibre(c);
    for (std::size_t i = 0; i < fib.size(); ++i) G.on_dobj[fib[i]] = cfib[phi.components[c][i]];
  }
  for (DMorIx m = 0; m < dom.num_dmors(); ++m) {
    const DMor& mm = dom.dmor(m);
    auto fam = cod.family(mm.over, G.on_dobj[mm.src], G.on_dobj[mm.dst]);
    if (fam.size() != 1) throw Error(ErrorCode::MalformedInput, "presheaf morphism is not natural");
    G.on_dmor[m] = fam.front();
  }
  return G;
}

inline PresheafMorphism disp_functor_to_presheaf_morphism(const DispFunctor& G, const Presheaf& dom,
                                                          const Presheaf& cod) {
  const FinCat& C = dom.base;
  PresheafMorphism phi{dom, cod, std::vector<std::vector<std::uint32_t>>(C.num_objects())};
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    auto cfib = G.cod.fibre(c);
    for (DObjIx x : G.dom.fibre(c)) {
      auto it = std::find(cfib.begin(), cfib.end(), G.on_dobj[x]);
      phi.components[c].push_back(static_cast<std::uint32_t>(it - cfib.begin()));
    }
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Cartesian maps in the slice display

/// The commuting square of a slice morphism h over k from f : a -> b to g : a' -> b'.
inline Square slice_square(const FinCat& c, const DispCat& slice, DMorIx m) {
  const DMor& mm = slice.dmor(m);
  MorIx f = c.morphism_ix(slice.dobj(mm.src).id);
  MorIx g = c.morphism_ix(slice.dobj(mm.dst).id);
  const std::string suffix = slice.dobj(mm.src).id + "." + slice.dobj(mm.dst).id;
  for (MorIx h : c.hom(c.src(f), c.src(g))) {
    if (pair_name(c.morphism_id(h), suffix) == mm.id) return Square{mm.over, g, f, h};
  }
  throw Error(ErrorCode::MalformedInput, slice.dmor_label(m) + " is not a slice morphism");
}

/// Cartesian in the slice display versus pullback of the underlying square.
inline Report cartesian_iff_pullback(const FinCat& c, const DispCat& slice, DMorIx m) {
  Report r("cartesian_iff_pullback");
  if (!(slice.base() == c) || m >= slice.num_dmors()) throw Error(ErrorCode::MalformedInput, "not a slice morphism");
  bool cart = static_cast<bool>(is_cartesian(slice, m));
  bool pb = is_pullback(c, slice_square(c, slice, m)).passed();
  r.set("cartesian", cart);
  r.set("pullback", pb);
  if (cart != pb) r.error("disagreement", "cartesian and pullback verdicts differ", {slice.dmor_label(m)});
  return r;
}

inline Report cartesian_iff_pullback(const FinCat& c, DMorIx m) {
  return cartesian_iff_pullback(c, slice_display(c), m);
}

// ---------------------------------------------------------------------------
// Classification

inline Report classify_fibration(const DispCat& d, std::size_t bound = kDefaultBound) {
  Report r("classify_fibration");
  std::optional<std::pair<MorIx, DObjIx>> missing;
  auto cl = canonical_cleaving(d, &missing);
  r.set("weak_fibration", cl.has_value());
  r.set("cloven", cl.has_value());
  r.set("fibres_are_sets", true);
  if (cl) {
    Report split = check_split(d, *cl);
    r.set("canonical_split", split.passed());
    SplitSearch s = find_split_cleaving(d, bound);
    r.set("split_cleaving_found", s.cleaving.has_value() && s.exhaustive);
    r.set("split_search", s.exhaustive ? "exhaustive" : "bound " + std::to_string(bound));
    if (!s.exhaustive) r.note("no split cleaving found (bound " + std::to_string(bound) + ")");
    r.set("split", s.cleaving.has_value() && s.exhaustive);
    r.set("cleavings", count_cleavings(d, bound + 1));
    nlohmann::json lifts = nlohmann::json::object();
    for (const auto& [key, m] : cl->lifts) {
      lifts[d.base().morphism_id(key.first) + " @ " + d.dobj_label(key.second)] = d.dmor_label(m);
    }
    r.set("canonical_cleaving", std::move(lifts));
  } else {
    r.fail("missing_lift",
           "no cartesian lift of " + d.base().morphism_id(missing->first) + " into " + d.dobj_label(missing->second),
           {d.base().morphism_id(missing->first), d.dobj_label(missing->second)});
  }
  r.set("weak_opfibration", canonical_cleaving(op_display(d)).has_value());
  r.set("discrete", is_discrete_fibration(d).passed());
  return r;
}

}  // namespace dispcat
