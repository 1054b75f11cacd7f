#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dispcat/error.hpp"

namespace dispcat {

using ObjIx = std::uint32_t;
using MorIx = std::uint32_t;
inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Name given to the identity of an object when none is specified.
inline std::string identity_name(std::string_view object) { return "id_" + std::string(object); }

/// Name of a pair object or morphism in products, totals and sigma displays.
inline std::string pair_name(std::string_view left, std::string_view right) {
  std::string s;
  s.reserve(left.size() + right.size() + 1);
  s.append(left).push_back('|');
  s.append(right);
  return s;
}

struct Morph {
  std::string id;
  ObjIx src = kNone;
  ObjIx dst = kNone;

  friend bool operator==(const Morph&, const Morph&) = default;
};

namespace detail {

struct FinCatData {
  std::vector<std::string> objects;  // sorted
  std::vector<Morph> morphisms;      // sorted by id
  std::vector<MorIx> identity;       // per object
  std::unordered_map<std::uint64_t, MorIx> comp;
  std::unordered_map<std::string, ObjIx> object_index;
  std::unordered_map<std::string, MorIx> morphism_index;
  std::vector<std::vector<MorIx>> homs;  // [a * n + b]
  std::vector<std::vector<MorIx>> into;
  std::vector<std::vector<MorIx>> out_of;
  std::vector<bool> is_identity;

  void index() {
    object_index.clear();
    morphism_index.clear();
    for (ObjIx i = 0; i < objects.size(); ++i) object_index.emplace(objects[i], i);
    for (MorIx i = 0; i < morphisms.size(); ++i) morphism_index.emplace(morphisms[i].id, i);
    const std::size_t n = objects.size();
    homs.assign(n * n, {});
    into.assign(n, {});
    out_of.assign(n, {});
    for (MorIx m = 0; m < morphisms.size(); ++m) {
      const auto& mm = morphisms[m];
      homs[mm.src * n + mm.dst].push_back(m);
      into[mm.dst].push_back(m);
      out_of[mm.src].push_back(m);
    }
    is_identity.assign(morphisms.size(), false);
    for (MorIx id : identity) {
      if (id != kNone) is_identity[id] = true;
    }
  }
};

}  // namespace detail

/// A finite category given by explicit tables.
///
/// Objects and morphisms are kept sorted by id, so index order is
/// lexicographic id order and every search over indices is deterministic.
/// Identities are ordinary morphisms; the composition table covers all
/// defined composites including those with identities. Composition is in
/// diagrammatic order: `compose(f, g)` is "f then g".
///
/// A FinCat is an immutable value. Copies share storage.
class FinCat {
 public:
  FinCat() : d_(std::make_shared<detail::FinCatData>()) {}

  std::size_t num_objects() const { return d_->objects.size(); }
  std::size_t num_morphisms() const { return d_->morphisms.size(); }
  const std::vector<std::string>& objects() const { return d_->objects; }
  const std::vector<Morph>& morphisms() const { return d_->morphisms; }

  const std::string& object_id(ObjIx c) const { return d_->objects.at(c); }
  const Morph& morphism(MorIx f) const { return d_->morphisms.at(f); }
  const std::string& morphism_id(MorIx f) const { return d_->morphisms.at(f).id; }
  ObjIx src(MorIx f) const { return d_->morphisms[f].src; }
  ObjIx dst(MorIx f) const { return d_->morphisms[f].dst; }
  MorIx identity(ObjIx c) const { return d_->identity.at(c); }
  bool is_identity(MorIx f) const { return d_->is_identity.at(f); }

  std::optional<MorIx> compose(MorIx f, MorIx g) const {
    auto it = d_->comp.find(pair_key(f, g));
    if (it == d_->comp.end()) return std::nullopt;
    return it->second;
  }

  /// Composite of a composable pair; MalformedInput if the table lacks it.
  MorIx comp(MorIx f, MorIx g) const {
    auto it = d_->comp.find(pair_key(f, g));
    if (it == d_->comp.end()) {
      throw Error(ErrorCode::MalformedInput,
                  "no composite for (" + morphism_id(f) + ", " + morphism_id(g) + ")");
    }
    return it->second;
  }

  std::optional<ObjIx> find_object(std::string_view id) const {
    auto it = d_->object_index.find(std::string(id));
    if (it == d_->object_index.end()) return std::nullopt;
    return it->second;
  }
  std::optional<MorIx> find_morphism(std::string_view id) const {
    auto it = d_->morphism_index.find(std::string(id));
    if (it == d_->morphism_index.end()) return std::nullopt;
    return it->second;
  }
  ObjIx object(std::string_view id) const {
    if (auto c = find_object(id)) return *c;
    throw Error(ErrorCode::UnknownObject, std::string(id));
  }
  MorIx morphism_ix(std::string_view id) const {
    if (auto f = find_morphism(id)) return *f;
    throw Error(ErrorCode::UnknownMorphism, std::string(id));
  }

  std::span<const MorIx> hom(ObjIx a, ObjIx b) const {
    return d_->homs[static_cast<std::size_t>(a) * num_objects() + b];
  }
  std::span<const MorIx> into(ObjIx b) const { return d_->into[b]; }
  std::span<const MorIx> out_of(ObjIx a) const { return d_->out_of[a]; }

  /// Raw composition entries (f, g, f;g), sorted by index.
  std::vector<std::tuple<MorIx, MorIx, MorIx>> composition_entries() const {
    std::vector<std::tuple<MorIx, MorIx, MorIx>> out;
    out.reserve(d_->comp.size());
    for (const auto& [k, h] : d_->comp) {
      out.emplace_back(static_cast<MorIx>(k >> 32), static_cast<MorIx>(k & 0xffffffffu), h);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Copy with a single composition entry replaced (or removed when `h` is empty).
  FinCat with_composite(MorIx f, MorIx g, std::optional<MorIx> h) const {
    auto data = std::make_shared<detail::FinCatData>(*d_);
    if (h) {
      data->comp[pair_key(f, g)] = *h;
    } else {
      data->comp.erase(pair_key(f, g));
    }
    return FinCat(std::move(data));
  }

  bool same_storage(const FinCat& other) const { return d_ == other.d_; }

  friend bool operator==(const FinCat& a, const FinCat& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->objects == b.d_->objects && a.d_->morphisms == b.d_->morphisms &&
           a.d_->identity == b.d_->identity && a.d_->comp == b.d_->comp;
  }

 private:
  explicit FinCat(std::shared_ptr<const detail::FinCatData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FinCatData> d_;

  friend class CategoryBuilder;
};

/// Accumulates a category description and sorts it into a FinCat.
///
/// Objects and morphisms may be added by name or through the provisional
/// indices returned by `add_*`. Identities are created automatically with
/// the `id_<object>` name unless `set_identity_name` overrides it, and the
/// identity composites are filled in unless given explicitly. `build()`
/// rejects unresolved or duplicate ids but does not check the category laws.
class CategoryBuilder {
 public:
  ObjIx add_object(std::string id) {
    if (object_index_.count(id)) {
      throw Error(ErrorCode::MalformedInput, "duplicate object id '" + id + "'");
    }
    auto ix = static_cast<ObjIx>(objects_.size());
    object_index_.emplace(id, ix);
    objects_.push_back(std::move(id));
    identity_names_.emplace_back();
    return ix;
  }

  CategoryBuilder& object(std::string id) {
    add_object(std::move(id));
    return *this;
  }

  MorIx add_morphism(std::string id, ObjIx src, ObjIx dst) {
    if (src >= objects_.size() || dst >= objects_.size()) {
      throw Error(ErrorCode::MalformedInput, "morphism '" + id + "' has an unknown endpoint");
    }
    if (morphism_index_.count(id)) {
      throw Error(ErrorCode::MalformedInput, "duplicate morphism id '" + id + "'");
    }
    auto ix = static_cast<MorIx>(morphisms_.size());
    morphism_index_.emplace(id, ix);
    morphisms_.push_back({std::move(id), src, dst});
    return ix;
  }

  CategoryBuilder& morphism(std::string id, std::string_view src, std::string_view dst) {
    add_morphism(std::move(id), object_ref(src), object_ref(dst));
    return *this;
  }

  /// Uses `id` as the identity of `c` instead of `id_<c>`.
  CategoryBuilder& set_identity_name(ObjIx c, std::string id) {
    identity_names_.at(c) = std::move(id);
    return *this;
  }

  /// Records f;g = h on provisional indices. Identity indices come from `identity_ref`.
  CategoryBuilder& set_composite(MorIx f, MorIx g, MorIx h) {
    comps_.emplace_back(f, g, h);
    return *this;
  }

  CategoryBuilder& compose(std::string_view f, std::string_view g, std::string_view h) {
    return set_composite(morphism_ref(f), morphism_ref(g), morphism_ref(h));
  }

  std::size_t num_objects() const { return objects_.size(); }

  /// Provisional index of the identity of `c`, usable in `set_composite`.
  MorIx identity_ref(ObjIx c) const { return static_cast<MorIx>(kIdentityBase + c); }
  static bool is_identity_ref(MorIx m) { return m >= kIdentityBase; }

  /// The id the identity of `c` will carry.
  std::string identity_label_of(ObjIx c) const { return identity_label(c); }

  ObjIx object_ref(std::string_view id) const {
    auto it = object_index_.find(std::string(id));
    if (it == object_index_.end()) {
      throw Error(ErrorCode::MalformedInput, "unknown object '" + std::string(id) + "'");
    }
    return it->second;
  }

  MorIx morphism_ref(std::string_view id) const {
    auto it = morphism_index_.find(std::string(id));
    if (it != morphism_index_.end()) return it->second;
    for (ObjIx c = 0; c < objects_.size(); ++c) {
      if (identity_label(c) == id) return identity_ref(c);
    }
    throw Error(ErrorCode::MalformedInput, "unknown morphism '" + std::string(id) + "'");
  }

  FinCat build() const {
    auto data = std::make_shared<detail::FinCatData>();
    // All morphisms, identities last, then sort by name.
    std::vector<Morph> all = morphisms_;
    for (ObjIx c = 0; c < objects_.size(); ++c) all.push_back({identity_label(c), c, c});
    const auto n_plain = static_cast<MorIx>(morphisms_.size());
    auto provisional = [&](MorIx m) -> MorIx {
      if (m >= kIdentityBase) return n_plain + (m - kIdentityBase);
      return m;
    };

    std::vector<ObjIx> obj_order(objects_.size());
    std::iota(obj_order.begin(), obj_order.end(), ObjIx{0});
    std::sort(obj_order.begin(), obj_order.end(),
              [&](ObjIx a, ObjIx b) { return objects_[a] < objects_[b]; });
    std::vector<ObjIx> obj_new(objects_.size());
    for (ObjIx i = 0; i < obj_order.size(); ++i) obj_new[obj_order[i]] = i;

    std::vector<MorIx> mor_order(all.size());
    std::iota(mor_order.begin(), mor_order.end(), MorIx{0});
    std::sort(mor_order.begin(), mor_order.end(),
              [&](MorIx a, MorIx b) { return all[a].id < all[b].id; });
    for (std::size_t i = 1; i < mor_order.size(); ++i) {
      if (all[mor_order[i]].id == all[mor_order[i - 1]].id) {
        throw Error(ErrorCode::MalformedInput, "duplicate morphism id '" + all[mor_order[i]].id + "'");
      }
    }
    std::vector<MorIx> mor_new(all.size());
    for (MorIx i = 0; i < mor_order.size(); ++i) mor_new[mor_order[i]] = i;

    data->objects.reserve(objects_.size());
    for (ObjIx i : obj_order) data->objects.push_back(objects_[i]);
    data->morphisms.reserve(all.size());
    for (MorIx i : mor_order) {
      data->morphisms.push_back({all[i].id, obj_new[all[i].src], obj_new[all[i].dst]});
    }
    data->identity.assign(objects_.size(), kNone);
    for (ObjIx c = 0; c < objects_.size(); ++c) data->identity[obj_new[c]] = mor_new[n_plain + c];

    for (const auto& [f, g, h] : comps_) {
      MorIx ff = mor_new.at(provisional(f));
      MorIx gg = mor_new.at(provisional(g));
      MorIx hh = mor_new.at(provisional(h));
      data->comp[pair_key(ff, gg)] = hh;
    }
    // Identity closure, never overriding explicit entries.
    for (MorIx m = 0; m < data->morphisms.size(); ++m) {
      const auto& mm = data->morphisms[m];
      data->comp.emplace(pair_key(data->identity[mm.src], m), m);
      data->comp.emplace(pair_key(m, data->identity[mm.dst]), m);
    }
    data->index();
    return FinCat(std::move(data));
  }

 private:
  static constexpr MorIx kIdentityBase = 0x80000000u;

  std::string identity_label(ObjIx c) const {
    return identity_names_[c].empty() ? identity_name(objects_[c]) : identity_names_[c];
  }

  std::vector<std::string> objects_;
  std::vector<std::string> identity_names_;
  std::vector<Morph> morphisms_;
  std::vector<std::tuple<MorIx, MorIx, MorIx>> comps_;
  std::unordered_map<std::string, ObjIx> object_index_;
  std::unordered_map<std::string, MorIx> morphism_index_;
};

/// A functor between finite categories, as object and morphism maps.
/// Unmapped entries hold `kNone` and are reported by the law checker.
struct FunctorData {
  FinCat dom;
  FinCat cod;
  std::vector<ObjIx> on_obj;
  std::vector<MorIx> on_mor;

  friend bool operator==(const FunctorData&, const FunctorData&) = default;
};

struct NatTransData {
  FunctorData dom;
  FunctorData cod;
  std::vector<MorIx> components;  // per object of dom.dom

  friend bool operator==(const NatTransData&, const NatTransData&) = default;
};

/// A contravariant set-valued functor. `restrict[f][i]` is the index, in the
/// set over src(f), of the restriction of the i-th element over dst(f).
struct Presheaf {
  FinCat base;
  std::vector<std::vector<std::string>> sets;        // per object, sorted
  std::vector<std::vector<std::uint32_t>> restrict;  // per morphism

  std::optional<std::uint32_t> find_element(ObjIx c, std::string_view id) const {
    const auto& s = sets.at(c);
    auto it = std::lower_bound(s.begin(), s.end(), id);
    if (it == s.end() || *it != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - s.begin());
  }

  friend bool operator==(const Presheaf&, const Presheaf&) = default;
};

/// A morphism of presheaves: per object, a function between the sets.
struct PresheafMorphism {
  Presheaf dom;
  Presheaf cod;
  std::vector<std::vector<std::uint32_t>> components;

  friend bool operator==(const PresheafMorphism&, const PresheafMorphism&) = default;
};

/// Builds functor data from id maps. Identities map to identities unless given.
inline FunctorData make_functor(const FinCat& dom, const FinCat& cod,
                                const std::vector<std::pair<std::string, std::string>>& objs,
                                const std::vector<std::pair<std::string, std::string>>& mors) {
  FunctorData F{dom, cod, std::vector<ObjIx>(dom.num_objects(), kNone),
                std::vector<MorIx>(dom.num_morphisms(), kNone)};
  for (const auto& [a, b] : objs) F.on_obj[dom.object(a)] = cod.object(b);
  for (const auto& [f, g] : mors) F.on_mor[dom.morphism_ix(f)] = cod.morphism_ix(g);
  for (ObjIx c = 0; c < dom.num_objects(); ++c) {
    MorIx id = dom.identity(c);
    if (F.on_mor[id] == kNone && F.on_obj[c] != kNone) F.on_mor[id] = cod.identity(F.on_obj[c]);
  }
  return F;
}

/// Builds a presheaf from element lists and restriction maps given by id.
/// Restrictions along identities are filled in when absent.
class PresheafBuilder {
 public:
  explicit PresheafBuilder(FinCat base) : base_(std::move(base)) {
    sets_.resize(base_.num_objects());
  }

  PresheafBuilder& element(std::string_view object, std::string id) {
    sets_[base_.object(object)].push_back(std::move(id));
    return *this;
  }

  PresheafBuilder& action(std::string_view morphism, std::string from, std::string to) {
    actions_.push_back({base_.morphism_ix(morphism), std::move(from), std::move(to)});
    return *this;
  }

  Presheaf build() const {
    Presheaf p{base_, sets_, {}};
    for (auto& s : p.sets) {
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw Error(ErrorCode::MalformedInput, "duplicate presheaf element");
      }
    }
    p.restrict.resize(base_.num_morphisms());
    for (MorIx f = 0; f < base_.num_morphisms(); ++f) {
      p.restrict[f].assign(p.sets[base_.dst(f)].size(), kNone);
    }
    for (const auto& a : actions_) {
      auto from = p.find_element(base_.dst(a.f), a.from);
      auto to = p.find_element(base_.src(a.f), a.to);
      if (!from || !to) {
        throw Error(ErrorCode::MalformedInput,
                    "restriction along '" + base_.morphism_id(a.f) + "' names an unknown element");
      }
      p.restrict[a.f][*from] = *to;
    }
    for (ObjIx c = 0; c < base_.num_objects(); ++c) {
      auto& r = p.restrict[base_.identity(c)];
      for (std::uint32_t i = 0; i < r.size(); ++i) {
        if (r[i] == kNone) r[i] = i;
      }
    }
    return p;
  }

 private:
  struct Action {
    MorIx f;
    std::string from;
    std::string to;
  };
  FinCat base_;
  std::vector<std::vector<std::string>> sets_;
  std::vector<Action> actions_;
};

}  // namespace dispcat
