#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dispcat/core.hpp"

namespace dispcat {

using DObjIx = std::uint32_t;
using DMorIx = std::uint32_t;

/// A displayed object: an element of the family over base object `over`.
struct DObj {
  ObjIx over = kNone;
  std::string id;

  friend bool operator==(const DObj&, const DObj&) = default;
};

/// A displayed morphism from `src` to `dst` over the base morphism `over`.
struct DMor {
  MorIx over = kNone;
  DObjIx src = kNone;
  DObjIx dst = kNone;
  std::string id;

  friend bool operator==(const DMor&, const DMor&) = default;
};

namespace detail {

struct FamilyKey {
  MorIx f;
  DObjIx x;
  DObjIx y;
  friend bool operator==(const FamilyKey&, const FamilyKey&) = default;
};

struct FamilyKeyHash {
  std::size_t operator()(const FamilyKey& k) const noexcept {
    std::uint64_t h = k.f;
    h = h * 0x9E3779B97F4A7C15ull ^ k.x;
    h = h * 0x9E3779B97F4A7C15ull ^ k.y;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct DispCatData {
  FinCat base;
  std::vector<DObj> dobjs;  // sorted by (over, id)
  std::vector<DMor> dmors;  // sorted by (over, id)
  std::vector<DMorIx> did;  // per displayed object
  std::unordered_map<std::uint64_t, DMorIx> dcomp;

  std::vector<std::vector<DObjIx>> fibres;
  std::vector<std::vector<DMorIx>> over;
  std::vector<std::vector<DMorIx>> out_of;
  std::vector<std::vector<DMorIx>> into;
  std::unordered_map<FamilyKey, std::vector<DMorIx>, FamilyKeyHash> families;
  std::vector<std::unordered_map<std::string, DObjIx>> dobj_index;  // per base object
  std::vector<std::unordered_map<std::string, DMorIx>> dmor_index;  // per base morphism

  void index() {
    fibres.assign(base.num_objects(), {});
    over.assign(base.num_morphisms(), {});
    out_of.assign(dobjs.size(), {});
    into.assign(dobjs.size(), {});
    families.clear();
    dobj_index.assign(base.num_objects(), {});
    dmor_index.assign(base.num_morphisms(), {});
    for (DObjIx x = 0; x < dobjs.size(); ++x) {
      fibres[dobjs[x].over].push_back(x);
      dobj_index[dobjs[x].over].emplace(dobjs[x].id, x);
    }
    for (DMorIx m = 0; m < dmors.size(); ++m) {
      const auto& mm = dmors[m];
      over[mm.over].push_back(m);
      out_of[mm.src].push_back(m);
      into[mm.dst].push_back(m);
      families[{mm.over, mm.src, mm.dst}].push_back(m);
      dmor_index[mm.over].emplace(mm.id, m);
    }
  }
};

}  // namespace detail

/// A displayed category over a finite base.
///
/// Hom families are keyed by base morphism index, so the displayed
/// identity and composition laws are plain equalities between displayed
/// morphism indices. Displayed objects are identified by (base object, id)
/// and displayed morphisms by (base morphism, id); both are kept sorted in
/// that order. Immutable; copies share storage.
class DispCat {
 public:
  DispCat() : d_(std::make_shared<detail::DispCatData>()) {}

  const FinCat& base() const { return d_->base; }
  std::size_t num_dobjs() const { return d_->dobjs.size(); }
  std::size_t num_dmors() const { return d_->dmors.size(); }
  const std::vector<DObj>& dobjs() const { return d_->dobjs; }
  const std::vector<DMor>& dmors() const { return d_->dmors; }
  const DObj& dobj(DObjIx x) const { return d_->dobjs.at(x); }
  const DMor& dmor(DMorIx m) const { return d_->dmors.at(m); }

  std::span<const DObjIx> fibre(ObjIx c) const { return d_->fibres.at(c); }
  std::span<const DMorIx> over(MorIx f) const { return d_->over.at(f); }
  std::span<const DMorIx> out_of(DObjIx x) const { return d_->out_of.at(x); }
  std::span<const DMorIx> into(DObjIx y) const { return d_->into.at(y); }

  /// Displayed morphisms from x to y over f, sorted by id.
  std::span<const DMorIx> family(MorIx f, DObjIx x, DObjIx y) const {
    auto it = d_->families.find({f, x, y});
    if (it == d_->families.end()) return {};
    return it->second;
  }

  DMorIx did(DObjIx x) const { return d_->did.at(x); }

  std::optional<DMorIx> dcompose(DMorIx a, DMorIx b) const {
    auto it = d_->dcomp.find(pair_key(a, b));
    if (it == d_->dcomp.end()) return std::nullopt;
    return it->second;
  }

  DMorIx dcomp(DMorIx a, DMorIx b) const {
    auto it = d_->dcomp.find(pair_key(a, b));
    if (it == d_->dcomp.end()) {
      throw Error(ErrorCode::MalformedInput,
                  "no displayed composite for (" + dmor_label(a) + ", " + dmor_label(b) + ")");
    }
    return it->second;
  }

  std::optional<DObjIx> find_dobj(ObjIx c, std::string_view id) const {
    const auto& ix = d_->dobj_index.at(c);
    auto it = ix.find(std::string(id));
    if (it == ix.end()) return std::nullopt;
    return it->second;
  }

  std::optional<DMorIx> find_dmor(MorIx f, std::string_view id) const {
    const auto& ix = d_->dmor_index.at(f);
    auto it = ix.find(std::string(id));
    if (it == ix.end()) return std::nullopt;
    return it->second;
  }

  DObjIx dobj_ix(std::string_view c, std::string_view id) const {
    if (auto x = find_dobj(base().object(c), id)) return *x;
    throw Error(ErrorCode::UnknownObject, std::string(c) + "/" + std::string(id));
  }

  DMorIx dmor_ix(std::string_view f, std::string_view id) const {
    if (auto m = find_dmor(base().morphism_ix(f), id)) return *m;
    throw Error(ErrorCode::UnknownMorphism, std::string(f) + "/" + std::string(id));
  }

  /// `<base object>/<id>`, unambiguous across fibres.
  std::string dobj_label(DObjIx x) const {
    return base().object_id(dobj(x).over) + "/" + dobj(x).id;
  }
  std::string dmor_label(DMorIx m) const {
    return base().morphism_id(dmor(m).over) + "/" + dmor(m).id;
  }

  std::vector<std::tuple<DMorIx, DMorIx, DMorIx>> composition_entries() const {
    std::vector<std::tuple<DMorIx, DMorIx, DMorIx>> out;
    out.reserve(d_->dcomp.size());
    for (const auto& [k, h] : d_->dcomp) {
      out.emplace_back(static_cast<DMorIx>(k >> 32), static_cast<DMorIx>(k & 0xffffffffu), h);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  DispCat with_dcomp(DMorIx a, DMorIx b, std::optional<DMorIx> h) const {
    auto data = std::make_shared<detail::DispCatData>(*d_);
    if (h) {
      data->dcomp[pair_key(a, b)] = *h;
    } else {
      data->dcomp.erase(pair_key(a, b));
    }
    return DispCat(std::move(data));
  }

  friend bool operator==(const DispCat& a, const DispCat& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->base == b.d_->base && a.d_->dobjs == b.d_->dobjs && a.d_->dmors == b.d_->dmors &&
           a.d_->did == b.d_->did && a.d_->dcomp == b.d_->dcomp;
  }

 private:
  explicit DispCat(std::shared_ptr<const detail::DispCatData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::DispCatData> d_;

  friend class DispBuilder;
};

/// Accumulates a displayed category and sorts it into a DispCat.
///
/// A displayed identity may be omitted when the identity family at the
/// object is a singleton. Composition entries are stored as given; the law
/// checker reports missing or ill-typed ones.
class DispBuilder {
 public:
  explicit DispBuilder(FinCat base) : base_(std::move(base)) {
    dobj_index_.resize(base_.num_objects());
    dmor_index_.resize(base_.num_morphisms());
  }

  const FinCat& base() const { return base_; }

  DObjIx add_dobj(ObjIx over, std::string id) {
    if (over >= base_.num_objects()) throw Error(ErrorCode::UnknownObject, std::to_string(over));
    if (dobj_index_[over].count(id)) {
      throw Error(ErrorCode::MalformedInput,
                  "duplicate displayed object '" + id + "' over " + base_.object_id(over));
    }
    auto ix = static_cast<DObjIx>(dobjs_.size());
    dobj_index_[over].emplace(id, ix);
    dobjs_.push_back({over, std::move(id)});
    did_.push_back(kNone);
    return ix;
  }

  DMorIx add_dmor(MorIx over, DObjIx src, DObjIx dst, std::string id) {
    if (over >= base_.num_morphisms()) throw Error(ErrorCode::UnknownMorphism, std::to_string(over));
    if (src >= dobjs_.size() || dst >= dobjs_.size()) {
      throw Error(ErrorCode::MalformedInput, "displayed morphism '" + id + "' has an unknown endpoint");
    }
    if (dobjs_[src].over != base_.src(over) || dobjs_[dst].over != base_.dst(over)) {
      throw Error(ErrorCode::MalformedInput, "endpoints of displayed morphism '" + id +
                                                 "' do not lie over the endpoints of " + base_.morphism_id(over));
    }
    if (dmor_index_[over].count(id)) {
      throw Error(ErrorCode::MalformedInput,
                  "duplicate displayed morphism '" + id + "' over " + base_.morphism_id(over));
    }
    auto ix = static_cast<DMorIx>(dmors_.size());
    dmor_index_[over].emplace(id, ix);
    dmors_.push_back({over, src, dst, std::move(id)});
    return ix;
  }

  std::optional<DObjIx> find_dobj(ObjIx over, std::string_view id) const {
    auto it = dobj_index_.at(over).find(std::string(id));
    if (it == dobj_index_[over].end()) return std::nullopt;
    return it->second;
  }

  std::optional<DMorIx> find_dmor(MorIx over, std::string_view id) const {
    auto it = dmor_index_.at(over).find(std::string(id));
    if (it == dmor_index_[over].end()) return std::nullopt;
    return it->second;
  }

  const DObj& dobj(DObjIx x) const { return dobjs_.at(x); }
  const DMor& dmor(DMorIx m) const { return dmors_.at(m); }
  std::size_t num_dobjs() const { return dobjs_.size(); }
  std::size_t num_dmors() const { return dmors_.size(); }

  DispBuilder& set_did(DObjIx x, DMorIx m) {
    did_.at(x) = m;
    return *this;
  }
  DispBuilder& set_dcomp(DMorIx a, DMorIx b, DMorIx h) {
    comps_.emplace_back(a, b, h);
    return *this;
  }

  DispCat build() const {
    auto data = std::make_shared<detail::DispCatData>();
    data->base = base_;
    std::vector<DObjIx> xo(dobjs_.size());
    std::iota(xo.begin(), xo.end(), DObjIx{0});
    std::sort(xo.begin(), xo.end(), [&](DObjIx a, DObjIx b) {
      return std::tie(dobjs_[a].over, dobjs_[a].id) < std::tie(dobjs_[b].over, dobjs_[b].id);
    });
    std::vector<DObjIx> xnew(dobjs_.size());
    for (DObjIx i = 0; i < xo.size(); ++i) xnew[xo[i]] = i;
    std::vector<DMorIx> mo(dmors_.size());
    std::iota(mo.begin(), mo.end(), DMorIx{0});
    std::sort(mo.begin(), mo.end(), [&](DMorIx a, DMorIx b) {
      return std::tie(dmors_[a].over, dmors_[a].id) < std::tie(dmors_[b].over, dmors_[b].id);
    });
    std::vector<DMorIx> mnew(dmors_.size());
    for (DMorIx i = 0; i < mo.size(); ++i) mnew[mo[i]] = i;

    for (DObjIx i : xo) data->dobjs.push_back(dobjs_[i]);
    for (DMorIx i : mo) {
      DMor m = dmors_[i];
      m.src = xnew[m.src];
      m.dst = xnew[m.dst];
      data->dmors.push_back(std::move(m));
    }
    data->did.assign(dobjs_.size(), kNone);
    for (DObjIx x = 0; x < dobjs_.size(); ++x) {
      if (did_[x] != kNone) data->did[xnew[x]] = mnew.at(did_[x]);
    }
    for (const auto& [a, b, h] : comps_) data->dcomp[pair_key(mnew.at(a), mnew.at(b))] = mnew.at(h);
    data->index();

    for (DObjIx x = 0; x < data->dobjs.size(); ++x) {
      const ObjIx c = data->dobjs[x].over;
      const MorIx idc = base_.identity(c);
      auto it = data->families.find({idc, x, x});
      const std::size_t n = it == data->families.end() ? 0 : it->second.size();
      DMorIx& i = data->did[x];
      if (i == kNone) {
        if (n != 1) {
          throw Error(ErrorCode::MalformedInput, "no displayed identity for " + base_.object_id(c) + "/" +
                                                     data->dobjs[x].id);
        }
        i = it->second.front();
      } else {
        const auto& m = data->dmors[i];
        if (m.over != idc || m.src != x || m.dst != x) {
          throw Error(ErrorCode::MalformedInput, "displayed identity of " + base_.object_id(c) + "/" +
                                                     data->dobjs[x].id + " is not in the identity family");
        }
      }
    }
    // Composites with displayed identities, never overriding explicit entries.
    for (DMorIx m = 0; m < data->dmors.size(); ++m) {
      const auto& mm = data->dmors[m];
      data->dcomp.emplace(pair_key(data->did[mm.src], m), m);
      data->dcomp.emplace(pair_key(m, data->did[mm.dst]), m);
    }
    return DispCat(std::move(data));
  }

 private:
  FinCat base_;
  std::vector<DObj> dobjs_;
  std::vector<DMor> dmors_;
  std::vector<DMorIx> did_;
  std::vector<std::tuple<DMorIx, DMorIx, DMorIx>> comps_;
  std::vector<std::unordered_map<std::string, DObjIx>> dobj_index_;
  std::vector<std::unordered_map<std::string, DMorIx>> dmor_index_;
};

/// A displayed functor over `base`, as maps on displayed objects and morphisms.
struct DispFunctor {
  FunctorData base;
  DispCat dom;
  DispCat cod;
  std::vector<DObjIx> on_dobj;
  std::vector<DMorIx> on_dmor;

  friend bool operator==(const DispFunctor&, const DispFunctor&) = default;
};

/// A displayed natural transformation over `base`; one component per
/// displayed object of `dom.dom`.
struct DispNatTrans {
  NatTransData base;
  DispFunctor dom;
  DispFunctor cod;
  std::vector<DMorIx> components;

  friend bool operator==(const DispNatTrans&, const DispNatTrans&) = default;
};

// ---------------------------------------------------------------------------

inline Report check_displayed_laws(const DispCat& d) {
  Report r("check_displayed_laws");
  const FinCat& C = d.base();
  Report base = check_category_laws(C);
  if (!base.passed()) {
    r.absorb(base, "base");
    return r;
  }
  for (DObjIx x = 0; x < d.num_dobjs(); ++x) {
    DMorIx i = d.did(x);
    const DMor& m = d.dmor(i);
    if (m.over != C.identity(d.dobj(x).over) || m.src != x || m.dst != x) {
      throw Error(ErrorCode::MalformedInput, "displayed identity of " + d.dobj_label(x) + " is ill-typed");
    }
  }
  // Totality and typing.
  for (DMorIx a = 0; a < d.num_dmors(); ++a) {
    for (DMorIx b : d.out_of(d.dmor(a).dst)) {
      auto h = d.dcompose(a, b);
      if (!h) {
        r.fail("missing_composite", "no displayed composite for " + d.dmor_label(a) + ";" + d.dmor_label(b),
               {d.dmor_label(a), d.dmor_label(b)});
        return r;
      }
      const DMor& hm = d.dmor(*h);
      if (hm.over != C.comp(d.dmor(a).over, d.dmor(b).over) || hm.src != d.dmor(a).src ||
          hm.dst != d.dmor(b).dst) {
        r.fail("composite_type",
               d.dmor_label(a) + ";" + d.dmor_label(b) + " = " + d.dmor_label(*h) +
                   " is not in the family over the composite",
               {d.dmor_label(a), d.dmor_label(b), d.dmor_label(*h)});
        return r;
      }
    }
  }
  for (const auto& [a, b, h] : d.composition_entries()) {
    if (d.dmor(a).dst != d.dmor(b).src) {
      r.fail("spurious_composite",
             "displayed composite given for non-composable " + d.dmor_label(a) + ";" + d.dmor_label(b),
             {d.dmor_label(a), d.dmor_label(b)});
      return r;
    }
  }
  for (DMorIx a = 0; a < d.num_dmors(); ++a) {
    const DMor& m = d.dmor(a);
    if (d.dcomp(a, d.did(m.dst)) != a) {
      r.fail("right_unit", d.dmor_label(a) + ";1 differs from " + d.dmor_label(a), {d.dmor_label(a)});
      return r;
    }
    if (d.dcomp(d.did(m.src), a) != a) {
      r.fail("left_unit", "1;" + d.dmor_label(a) + " differs from " + d.dmor_label(a), {d.dmor_label(a)});
      return r;
    }
  }
  for (DMorIx a = 0; a < d.num_dmors(); ++a) {
    for (DMorIx b : d.out_of(d.dmor(a).dst)) {
      DMorIx ab = d.dcomp(a, b);
      for (DMorIx c : d.out_of(d.dmor(b).dst)) {
        if (d.dcomp(ab, c) != d.dcomp(a, d.dcomp(b, c))) {
          r.fail("associativity", "displayed associativity fails at " + d.dmor_label(a) + ", " + d.dmor_label(b) +
                                      ", " + d.dmor_label(c),
                 {d.dmor_label(a), d.dmor_label(b), d.dmor_label(c)});
          return r;
        }
      }
    }
  }
  return r;
}

/// The total category with index maps to and from the display.
struct TotalCategory {
  FinCat cat;
  FunctorData projection;
  std::vector<ObjIx> obj_of_dobj;
  std::vector<MorIx> mor_of_dmor;
  std::vector<DObjIx> dobj_of_obj;
  std::vector<DMorIx> dmor_of_mor;
};

/// Pairs (c, x) and (f, f̄), named `<c>|<x>` and `<f>|<f̄>`.
inline TotalCategory total_category(const DispCat& d) {
  const FinCat& C = d.base();
  CategoryBuilder b;
  for (DObjIx x = 0; x < d.num_dobjs(); ++x) b.add_object(pair_name(C.object_id(d.dobj(x).over), d.dobj(x).id));
  std::vector<MorIx> ref(d.num_dmors(), kNone);
  std::vector<std::string> names(d.num_dmors());
  for (DMorIx m = 0; m < d.num_dmors(); ++m) {
    const DMor& mm = d.dmor(m);
    names[m] = pair_name(C.morphism_id(mm.over), mm.id);
    if (d.did(mm.src) == m) {
      b.set_identity_name(mm.src, names[m]);
      ref[m] = b.identity_ref(mm.src);
    } else {
      ref[m] = b.add_morphism(names[m], mm.src, mm.dst);
    }
  }
  for (const auto& [a, bb, h] : d.composition_entries()) b.set_composite(ref[a], ref[bb], ref[h]);

  TotalCategory t{b.build(), {}, {}, {}, {}, {}};
  t.obj_of_dobj.resize(d.num_dobjs());
  t.dobj_of_obj.resize(d.num_dobjs());
  for (DObjIx x = 0; x < d.num_dobjs(); ++x) {
    ObjIx o = t.cat.object(pair_name(C.object_id(d.dobj(x).over), d.dobj(x).id));
    t.obj_of_dobj[x] = o;
    t.dobj_of_obj[o] = x;
  }
  t.mor_of_dmor.resize(d.num_dmors());
  t.dmor_of_mor.resize(d.num_dmors());
  for (DMorIx m = 0; m < d.num_dmors(); ++m) {
    MorIx f = t.cat.morphism_ix(names[m]);
    t.mor_of_dmor[m] = f;
    t.dmor_of_mor[f] = m;
  }
  t.projection = FunctorData{t.cat, C, std::vector<ObjIx>(t.cat.num_objects()),
                             std::vector<MorIx>(t.cat.num_morphisms())};
  for (ObjIx o = 0; o < t.cat.num_objects(); ++o) t.projection.on_obj[o] = d.dobj(t.dobj_of_obj[o]).over;
  for (MorIx f = 0; f < t.cat.num_morphisms(); ++f) t.projection.on_mor[f] = d.dmor(t.dmor_of_mor[f]).over;
  return t;
}

/// Objects over c and morphisms over its identity.
inline FinCat fibre_category(const DispCat& d, ObjIx c) {
  const FinCat& C = d.base();
  if (c >= C.num_objects()) throw Error(ErrorCode::UnknownObject, std::to_string(c));
  const MorIx idc = C.identity(c);
  CategoryBuilder b;
  std::vector<ObjIx> local(d.num_dobjs(), kNone);
  for (DObjIx x : d.fibre(c)) local[x] = b.add_object(d.dobj(x).id);
  std::vector<MorIx> ref(d.num_dmors(), kNone);
  for (DMorIx m : d.over(idc)) {
    const DMor& mm = d.dmor(m);
    if (d.did(mm.src) == m) {
      b.set_identity_name(local[mm.src], mm.id);
      ref[m] = b.identity_ref(local[mm.src]);
    } else {
      ref[m] = b.add_morphism(mm.id, local[mm.src], local[mm.dst]);
    }
  }
  for (DMorIx a : d.over(idc)) {
    for (DMorIx bb : d.out_of(d.dmor(a).dst)) {
      if (d.dmor(bb).over != idc) continue;
      if (auto h = d.dcompose(a, bb); h && ref[*h] != kNone) b.set_composite(ref[a], ref[bb], ref[*h]);
    }
  }
  return b.build();
}

inline FinCat fibre_category(const DispCat& d, std::string_view c) {
  return fibre_category(d, d.base().object(c));
}

/// Hom-family cardinality conditions versus direct hom counting on the projection.
inline Report projection_properties(const DispCat& d) {
  Report r("projection_properties");
  const FinCat& C = d.base();
  bool prop = true, inhabited = true;
  std::string big, empty;
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (DObjIx x : d.fibre(C.src(f))) {
      for (DObjIx y : d.fibre(C.dst(f))) {
        std::size_t n = d.family(f, x, y).size();
        if (n > 1 && prop) {
          prop = false;
          big = C.morphism_id(f) + " from " + d.dobj_label(x) + " to " + d.dobj_label(y);
        }
        if (n == 0 && inhabited) {
          inhabited = false;
          empty = C.morphism_id(f) + " from " + d.dobj_label(x) + " to " + d.dobj_label(y);
        }
      }
    }
  }
  const bool contractible = prop && inhabited;
  // Direct count: the projection on each hom of the total category.
  auto t = total_category(d);
  bool faithful = true, full = true;
  for (ObjIx a = 0; a < t.cat.num_objects(); ++a) {
    for (ObjIx b = 0; b < t.cat.num_objects(); ++b) {
      ObjIx pa = t.projection.on_obj[a], pb = t.projection.on_obj[b];
      std::vector<MorIx> images;
      for (MorIx f : t.cat.hom(a, b)) images.push_back(t.projection.on_mor[f]);
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) faithful = false;
      images.erase(std::unique(images.begin(), images.end()), images.end());
      if (images.size() != C.hom(pa, pb).size()) full = false;
    }
  }
  const bool fully_faithful = faithful && full;
  r.set("families_propositional", prop);
  r.set("families_inhabited", inhabited);
  r.set("families_contractible", contractible);
  r.set("faithful", faithful);
  r.set("full", full);
  r.set("fully_faithful", fully_faithful);
  if (!prop) r.info("family_not_propositional", "more than one displayed morphism over " + big);
  if (!inhabited) r.info("family_empty", "no displayed morphism over " + empty);
  if (prop != faithful || inhabited != full || contractible != fully_faithful) {
    r.error("disagreement", "family cardinalities disagree with direct hom counting on the projection");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Displayed functors and transformations

inline Report check_disp_functor(const DispFunctor& G) {
  Report r("check_disp_functor");
  const DispCat& D = G.dom;
  const DispCat& E = G.cod;
  if (!(G.base.dom == D.base()) || !(G.base.cod == E.base())) {
    throw Error(ErrorCode::MalformedInput, "base functor does not connect the bases of the displays");
  }
  Report bf = check_functor_laws(G.base);
  if (!bf.passed()) {
    r.absorb(bf, "base");
    return r;
  }
  if (G.on_dobj.size() != D.num_dobjs() || G.on_dmor.size() != D.num_dmors()) {
    throw Error(ErrorCode::MalformedInput, "displayed functor maps do not match the domain");
  }
  for (DObjIx x = 0; x < D.num_dobjs(); ++x) {
    DObjIx y = G.on_dobj[x];
    if (y >= E.num_dobjs() || E.dobj(y).over != G.base.on_obj[D.dobj(x).over]) {
      r.fail("object", "image of " + D.dobj_label(x) + " does not lie over the image of its base object",
             {D.dobj_label(x)});
      return r;
    }
  }
  for (DMorIx m = 0; m < D.num_dmors(); ++m) {
    DMorIx n = G.on_dmor[m];
    const DMor& mm = D.dmor(m);
    if (n >= E.num_dmors() || E.dmor(n).over != G.base.on_mor[mm.over] || E.dmor(n).src != G.on_dobj[mm.src] ||
        E.dmor(n).dst != G.on_dobj[mm.dst]) {
      r.fail("morphism", "image of " + D.dmor_label(m) + " is not in the family over the image",
             {D.dmor_label(m)});
      return r;
    }
  }
  for (DObjIx x = 0; x < D.num_dobjs(); ++x) {
    if (G.on_dmor[D.did(x)] != E.did(G.on_dobj[x])) {
      r.fail("identity", "displayed identity of " + D.dobj_label(x) + " is not preserved", {D.dobj_label(x)});
      return r;
    }
  }
  for (DMorIx a = 0; a < D.num_dmors(); ++a) {
    for (DMorIx b : D.out_of(D.dmor(a).dst)) {
      auto img = E.dcompose(G.on_dmor[a], G.on_dmor[b]);
      if (!img || *img != G.on_dmor[D.dcomp(a, b)]) {
        r.fail("composition", "displayed composite " + D.dmor_label(a) + ";" + D.dmor_label(b) + " is not preserved",
               {D.dmor_label(a), D.dmor_label(b)});
        return r;
      }
    }
  }
  return r;
}

/// The functor on total categories induced by G.
inline FunctorData total_functor(const DispFunctor& G, const TotalCategory& tdom, const TotalCategory& tcod) {
  FunctorData F{tdom.cat, tcod.cat, std::vector<ObjIx>(tdom.cat.num_objects()),
                std::vector<MorIx>(tdom.cat.num_morphisms())};
  for (ObjIx o = 0; o < tdom.cat.num_objects(); ++o) F.on_obj[o] = tcod.obj_of_dobj[G.on_dobj[tdom.dobj_of_obj[o]]];
  for (MorIx f = 0; f < tdom.cat.num_morphisms(); ++f) {
    F.on_mor[f] = tcod.mor_of_dmor[G.on_dmor[tdom.dmor_of_mor[f]]];
  }
  return F;
}

inline FunctorData total_functor(const DispFunctor& G) {
  return total_functor(G, total_category(G.dom), total_category(G.cod));
}

/// The restriction of G to the fibre over c, landing in the fibre over F(c).
inline FunctorData fibre_functor(const DispFunctor& G, ObjIx c) {
  const DispCat& D = G.dom;
  const DispCat& E = G.cod;
  const ObjIx fc = G.base.on_obj.at(c);
  FinCat src = fibre_category(D, c);
  FinCat dst = fibre_category(E, fc);
  FunctorData F{src, dst, std::vector<ObjIx>(src.num_objects()), std::vector<MorIx>(src.num_morphisms())};
  for (DObjIx x : D.fibre(c)) F.on_obj[src.object(D.dobj(x).id)] = dst.object(E.dobj(G.on_dobj[x]).id);
  for (DMorIx m : D.over(D.base().identity(c))) {
    F.on_mor[src.morphism_ix(D.dmor(m).id)] = dst.morphism_ix(E.dmor(G.on_dmor[m]).id);
  }
  return F;
}

inline DispFunctor identity_disp_functor(const DispCat& d) {
  DispFunctor G{identity_functor(d.base()), d, d, std::vector<DObjIx>(d.num_dobjs()),
                std::vector<DMorIx>(d.num_dmors())};
  std::iota(G.on_dobj.begin(), G.on_dobj.end(), DObjIx{0});
  std::iota(G.on_dmor.begin(), G.on_dmor.end(), DMorIx{0});
  return G;
}

inline Report check_disp_nat_trans(const DispNatTrans& b) {
  Report r("check_disp_nat_trans");
  Report base = check_nat_trans(b.base);
  if (!base.passed()) {
    r.absorb(base, "base");
    return r;
  }
  const DispCat& D = b.dom.dom;
  const DispCat& E = b.dom.cod;
  if (b.components.size() != D.num_dobjs()) {
    throw Error(ErrorCode::MalformedInput, "component count does not match the domain display");
  }
  for (DObjIx x = 0; x < D.num_dobjs(); ++x) {
    DMorIx m = b.components[x];
    const ObjIx c = D.dobj(x).over;
    if (m >= E.num_dmors() || E.dmor(m).over != b.base.components[c] || E.dmor(m).src != b.dom.on_dobj[x] ||
        E.dmor(m).dst != b.cod.on_dobj[x]) {
      r.fail("component_type", "component at " + D.dobj_label(x) + " is not over the base component",
             {D.dobj_label(x)});
      return r;
    }
  }
  for (DMorIx m = 0; m < D.num_dmors(); ++m) {
    const DMor& mm = D.dmor(m);
    auto lhs = E.dcompose(b.dom.on_dmor[m], b.components[mm.dst]);
    auto rhs = E.dcompose(b.components[mm.src], b.cod.on_dmor[m]);
    if (!lhs || !rhs || *lhs != *rhs) {
      r.fail("naturality", "displayed naturality fails at " + D.dmor_label(m), {D.dmor_label(m)});
      return r;
    }
  }
  return r;
}

}  // namespace dispcat
