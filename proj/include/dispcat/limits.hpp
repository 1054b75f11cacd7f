#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dispcat/displayed.hpp"

namespace dispcat {

struct GraphEdge {
  std::string id;
  std::uint32_t src = 0;
  std::uint32_t dst = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// A diagram shape: named nodes and edges between them (not a category).
struct Graph {
  std::vector<std::string> nodes;
  std::vector<GraphEdge> edges;

  std::uint32_t node(std::string_view id) const {
    for (std::uint32_t j = 0; j < nodes.size(); ++j) {
      if (nodes[j] == id) return j;
    }
    throw Error(ErrorCode::UnknownObject, "no node '" + std::string(id) + "'");
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

inline Graph empty_shape() { return {}; }
inline Graph single_node_shape() { return {{"j"}, {}}; }
inline Graph discrete_two_shape() { return {{"l", "r"}, {}}; }
/// l -> m <- r
inline Graph cospan_shape() { return {{"l", "m", "r"}, {{"el", 0, 1}, {"er", 2, 1}}}; }

struct Diagram {
  Graph shape;
  FinCat target;
  std::vector<ObjIx> on_node;
  std::vector<MorIx> on_edge;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

struct Cone {
  ObjIx vertex = 0;
  std::vector<MorIx> legs;  // per node

  friend bool operator==(const Cone&, const Cone&) = default;
};

/// A cone in the total category given as a base cone plus displayed data.
struct DispCone {
  Cone base;
  DObjIx vertex = 0;
  std::vector<DMorIx> legs;

  friend bool operator==(const DispCone&, const DispCone&) = default;
};

inline Report check_diagram(const Diagram& dg) {
  Report r("check_diagram");
  const FinCat& c = dg.target;
  if (dg.on_node.size() != dg.shape.nodes.size() || dg.on_edge.size() != dg.shape.edges.size()) {
    r.fail("incomplete", "diagram does not map every node and edge");
    return r;
  }
  for (std::size_t e = 0; e < dg.shape.edges.size(); ++e) {
    const GraphEdge& ge = dg.shape.edges[e];
    MorIx f = dg.on_edge[e];
    if (f >= c.num_morphisms() || c.src(f) != dg.on_node[ge.src] || c.dst(f) != dg.on_node[ge.dst]) {
      r.fail("edge_type", "edge '" + ge.id + "' is not sent to a morphism between its endpoints", {ge.id});
    }
  }
  return r;
}

inline bool is_cone(const Diagram& dg, const Cone& k) {
  const FinCat& c = dg.target;
  if (k.legs.size() != dg.shape.nodes.size()) return false;
  for (std::size_t j = 0; j < k.legs.size(); ++j) {
    if (c.src(k.legs[j]) != k.vertex || c.dst(k.legs[j]) != dg.on_node[j]) return false;
  }
  for (std::size_t e = 0; e < dg.shape.edges.size(); ++e) {
    const GraphEdge& ge = dg.shape.edges[e];
    if (c.comp(k.legs[ge.src], dg.on_edge[e]) != k.legs[ge.dst]) return false;
  }
  return true;
}

/// All cones with the given vertex, in lexicographic order of their legs.
inline std::vector<Cone> cones_at(const Diagram& dg, ObjIx v) {
  const FinCat& c = dg.target;
  const std::size_t n = dg.shape.nodes.size();
  std::vector<std::vector<std::size_t>> checks(n);
  for (std::size_t e = 0; e < dg.shape.edges.size(); ++e) {
    const GraphEdge& ge = dg.shape.edges[e];
    checks[std::max(ge.src, ge.dst)].push_back(e);
  }
  std::vector<Cone> out;
  Cone k{v, std::vector<MorIx>(n, kNone)};
  std::function<void(std::size_t)> go = [&](std::size_t j) {
    if (j == n) {
      out.push_back(k);
      return;
    }
    for (MorIx f : c.hom(v, dg.on_node[j])) {
      k.legs[j] = f;
      bool ok = true;
      for (std::size_t e : checks[j]) {
        const GraphEdge& ge = dg.shape.edges[e];
        if (c.comp(k.legs[ge.src], dg.on_edge[e]) != k.legs[ge.dst]) {
          ok = false;
          break;
        }
      }
      if (ok) go(j + 1);
    }
    k.legs[j] = kNone;
  };
  go(0);
  return out;
}

namespace detail {

inline std::string cone_label(const FinCat& c, const Cone& k) {
  std::string s = c.object_id(k.vertex) + "[";
  for (std::size_t j = 0; j < k.legs.size(); ++j) {
    if (j) s += ",";
    s += c.morphism_id(k.legs[j]);
  }
  return s + "]";
}

}  // namespace detail

/// Every cone factors through `k` by exactly one morphism.
inline Report is_limiting(const Diagram& dg, const Cone& k) {
  Report r("is_limiting");
  const FinCat& c = dg.target;
  if (!check_diagram(dg).passed() || !is_cone(dg, k)) {
    throw Error(ErrorCode::MalformedInput, "not a cone over the diagram");
  }
  for (ObjIx v = 0; v < c.num_objects(); ++v) {
    for (const Cone& other : cones_at(dg, v)) {
      std::size_t count = 0;
      for (MorIx u : c.hom(v, k.vertex)) {
        bool ok = true;
        for (std::size_t j = 0; j < k.legs.size() && ok; ++j) ok = c.comp(u, k.legs[j]) == other.legs[j];
        count += ok;
      }
      if (count != 1) {
        r.fail(count == 0 ? "no_factorisation" : "multiple_factorisations",
               "cone " + detail::cone_label(c, other) + " factors " + std::to_string(count) + " times",
               {detail::cone_label(c, other)});
        return r;
      }
    }
  }
  return r;
}

inline Report is_limiting(const FinCat& c, const Diagram& dg, const Cone& k) {
  if (!(dg.target == c)) throw Error(ErrorCode::BaseMismatch, "diagram lives in another category");
  return is_limiting(dg, k);
}

/// All limiting cones, in order of vertex then legs.
inline std::vector<Cone> limiting_cones(const Diagram& dg, std::size_t bound = kDefaultBound) {
  std::vector<Cone> out;
  std::size_t seen = 0;
  for (ObjIx v = 0; v < dg.target.num_objects(); ++v) {
    for (const Cone& k : cones_at(dg, v)) {
      if (++seen > bound * 64) throw Error(ErrorCode::ResourceLimit, "limit search exceeded its budget");
      if (is_limiting(dg, k).passed()) out.push_back(k);
    }
  }
  return out;
}

/// The first limiting cone in order of vertex then legs.
inline std::optional<Cone> find_limit(const Diagram& dg, std::size_t bound = kDefaultBound) {
  std::size_t seen = 0;
  for (ObjIx v = 0; v < dg.target.num_objects(); ++v) {
    for (const Cone& k : cones_at(dg, v)) {
      if (++seen > bound * 64) throw Error(ErrorCode::ResourceLimit, "limit search exceeded its budget");
      if (is_limiting(dg, k).passed()) return k;
    }
  }
  return std::nullopt;
}

/// A commuting square p;f = q;g presented as a cone over the cospan f, g.
struct Square {
  MorIx f = 0;  // l -> m
  MorIx g = 0;  // r -> m
  MorIx p = 0;  // apex -> l
  MorIx q = 0;  // apex -> r
};

inline Diagram cospan_diagram(const FinCat& c, MorIx f, MorIx g) {
  if (c.dst(f) != c.dst(g)) throw Error(ErrorCode::MalformedInput, "not a cospan");
  return {cospan_shape(), c, {c.src(f), c.dst(f), c.src(g)}, {f, g}};
}

inline Report is_pullback(const FinCat& c, const Square& s) {
  Diagram dg = cospan_diagram(c, s.f, s.g);
  if (c.src(s.p) != c.src(s.q) || c.dst(s.p) != c.src(s.f) || c.dst(s.q) != c.src(s.g) ||
      c.comp(s.p, s.f) != c.comp(s.q, s.g)) {
    throw Error(ErrorCode::MalformedInput, "square does not commute");
  }
  Report r = is_limiting(dg, Cone{c.src(s.p), {s.p, c.comp(s.p, s.f), s.q}});
  r.command = "is_pullback";
  return r;
}

// ---------------------------------------------------------------------------
// Creation of limits

/// Image of a diagram in the total category under the projection.
inline Diagram project_diagram(const DispCat& d, const TotalCategory& t, const Diagram& dg) {
  Diagram out{dg.shape, d.base(), {}, {}};
  for (ObjIx o : dg.on_node) out.on_node.push_back(t.projection.on_obj[o]);
  for (MorIx f : dg.on_edge) out.on_edge.push_back(t.projection.on_mor[f]);
  return out;
}

/// All displayed cones over the base cone `lambda` for a diagram in total(d).
inline std::vector<DispCone> displayed_cones_over(const DispCat& d, const TotalCategory& t, const Diagram& dg,
                                                  const Cone& lambda) {
  const std::size_t n = dg.shape.nodes.size();
  std::vector<DObjIx> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = t.dobj_of_obj[dg.on_node[j]];
  std::vector<std::vector<std::size_t>> checks(n);
  for (std::size_t e = 0; e < dg.shape.edges.size(); ++e) {
    const GraphEdge& ge = dg.shape.edges[e];
    checks[std::max(ge.src, ge.dst)].push_back(e);
  }
  std::vector<DispCone> out;
  DispCone k{lambda, 0, std::vector<DMorIx>(n, kNone)};
  std::function<void(std::size_t)> go = [&](std::size_t j) {
    if (j == n) {
      out.push_back(k);
      return;
    }
    for (DMorIx m : d.family(lambda.legs[j], k.vertex, x[j])) {
      k.legs[j] = m;
      bool ok = true;
      for (std::size_t e : checks[j]) {
        const GraphEdge& ge = dg.shape.edges[e];
        auto h = d.dcompose(k.legs[ge.src], t.dmor_of_mor[dg.on_edge[e]]);
        if (!h || *h != k.legs[ge.dst]) {
          ok = false;
          break;
        }
      }
      if (ok) go(j + 1);
    }
    k.legs[j] = kNone;
  };
  for (DObjIx v : d.fibre(lambda.vertex)) {
    k.vertex = v;
    go(0);
  }
  return out;
}

inline Cone total_cone(const TotalCategory& t, const DispCone& k) {
  Cone out{t.obj_of_dobj[k.vertex], {}};
  for (DMorIx m : k.legs) out.legs.push_back(t.mor_of_dmor[m]);
  return out;
}

inline std::string disp_cone_label(const DispCat& d, const DispCone& k) {
  std::string s = d.dobj_label(k.vertex) + "[";
  for (std::size_t j = 0; j < k.legs.size(); ++j) {
    if (j) s += ",";
    s += d.dmor_label(k.legs[j]);
  }
  return s + "]";
}

/// `d` creates the limit of `dg` (a diagram in total(d)) over `lambda`: there
/// is exactly one displayed cone over `lambda`, and it is limiting in total(d).
inline Report creates_limit(const DispCat& d, const TotalCategory& t, const Diagram& dg, const Cone& lambda,
                            std::optional<DispCone>* witness = nullptr) {
  Report r("creates_limit");
  if (!(dg.target == t.cat)) throw Error(ErrorCode::BaseMismatch, "diagram is not in the total category");
  Diagram base = project_diagram(d, t, dg);
  if (!is_cone(base, lambda) || !is_limiting(base, lambda).passed()) {
    throw Error(ErrorCode::NotLimiting, "base cone is not limiting");
  }
  auto cones = displayed_cones_over(d, t, dg, lambda);
  r.set("displayed_cones", cones.size());
  if (cones.size() != 1) {
    std::vector<std::string> w;
    for (const auto& k : cones) w.push_back(disp_cone_label(d, k));
    r.fail(cones.empty() ? "no_displayed_cone" : "multiple_displayed_cones",
           std::to_string(cones.size()) + " displayed cones over " + detail::cone_label(d.base(), lambda), w);
    return r;
  }
  Report lim = is_limiting(dg, total_cone(t, cones[0]));
  if (!lim.passed()) {
    r.absorb(lim, "total");
    r.fail("not_limiting_in_total", "the displayed cone is not limiting in the total category",
           {disp_cone_label(d, cones[0])});
    return r;
  }
  r.info("created_cone", "unique displayed cone", {disp_cone_label(d, cones[0])});
  if (witness) *witness = cones[0];
  return r;
}

/// The total cone of a creation witness; checks it is limiting and projects to `lambda`.
inline Cone total_limit_from_creation(const DispCat& d, const TotalCategory& t, const Diagram& dg,
                                      const Cone& lambda, const DispCone& witness) {
  if (!(witness.base == lambda) || witness.legs.size() != lambda.legs.size()) {
    throw Error(ErrorCode::InvalidWitness, "witness lies over a different cone");
  }
  if (witness.vertex >= d.num_dobjs() || d.dobj(witness.vertex).over != lambda.vertex) {
    throw Error(ErrorCode::InvalidWitness, "witness vertex is not over the base vertex");
  }
  for (std::size_t j = 0; j < witness.legs.size(); ++j) {
    DMorIx m = witness.legs[j];
    if (m >= d.num_dmors() || d.dmor(m).over != lambda.legs[j]) {
      throw Error(ErrorCode::InvalidWitness, "witness leg is not over the base leg");
    }
  }
  Cone k = total_cone(t, witness);
  if (!is_cone(dg, k)) throw Error(ErrorCode::InvalidWitness, "witness is not a cone");
  if (!is_limiting(dg, k).passed()) throw Error(ErrorCode::InvalidWitness, "witness is not limiting");
  Cone projected{t.projection.on_obj[k.vertex], {}};
  for (MorIx f : k.legs) projected.legs.push_back(t.projection.on_mor[f]);
  if (!(projected == lambda)) throw Error(ErrorCode::InvalidWitness, "projection does not recover the base cone");
  return k;
}

/// All diagrams of the given shape in `c`, in lexicographic order.
inline std::vector<Diagram> enumerate_diagrams(const FinCat& c, const Graph& shape,
                                               std::size_t bound = kDefaultBound) {
  std::vector<Diagram> out;
  Diagram dg{shape, c, std::vector<ObjIx>(shape.nodes.size()), std::vector<MorIx>(shape.edges.size())};
  std::function<void(std::size_t)> go_edge = [&](std::size_t e) {
    if (e == shape.edges.size()) {
      out.push_back(dg);
      if (out.size() > bound * 64) throw Error(ErrorCode::ResourceLimit, "too many diagrams");
      return;
    }
    for (MorIx f : c.hom(dg.on_node[shape.edges[e].src], dg.on_node[shape.edges[e].dst])) {
      dg.on_edge[e] = f;
      go_edge(e + 1);
    }
  };
  std::function<void(std::size_t)> go_node = [&](std::size_t j) {
    if (j == shape.nodes.size()) {
      go_edge(0);
      return;
    }
    for (ObjIx o = 0; o < c.num_objects(); ++o) {
      dg.on_node[j] = o;
      go_node(j + 1);
    }
  };
  go_node(0);
  return out;
}

/// Exhaustively runs creates_limit on every diagram of the shape in total(d)
/// and every limiting cone over its projection; each created cone is also
/// passed through total_limit_from_creation.
inline Report creates_limits_of_shape(const DispCat& d, const Graph& shape, std::size_t bound = kDefaultBound) {
  Report r("creates_limits_of_shape");
  TotalCategory t = total_category(d);
  std::size_t diagrams = 0, cones = 0, without_limit = 0, created = 0;
  for (const Diagram& dg : enumerate_diagrams(t.cat, shape, bound)) {
    ++diagrams;
    Diagram base = project_diagram(d, t, dg);
    auto lambdas = limiting_cones(base, bound);
    if (lambdas.empty()) ++without_limit;
    for (const Cone& lambda : lambdas) {
      ++cones;
      std::optional<DispCone> w;
      Report one = creates_limit(d, t, dg, lambda, &w);
      if (!one.passed()) {
        std::vector<std::string> where;
        for (std::size_t j = 0; j < dg.on_node.size(); ++j) where.push_back(t.cat.object_id(dg.on_node[j]));
        r.absorb(one, "diagram");
        r.fail("not_created", "limit over " + detail::cone_label(d.base(), lambda) + " is not created", where);
        r.set("diagrams", diagrams);
        r.set("base_limits", cones);
        return r;
      }
      total_limit_from_creation(d, t, dg, lambda, *w);
      ++created;
    }
  }
  r.set("diagrams", diagrams);
  r.set("base_limits", cones);
  r.set("created", created);
  r.set("diagrams_without_base_limit", without_limit);
  return r;
}

}  // namespace dispcat
