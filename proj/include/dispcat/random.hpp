#pragma once

#include <random>
#include <string>
#include <vector>

#include "dispcat/constructions.hpp"
#include "dispcat/fixtures.hpp"

namespace dispcat::random {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Reflexive transitive closure of a relation on n points, row-major.
inline std::vector<bool> preorder_closure(std::vector<bool> r, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k * n + j]) r[i * n + j] = true;
      }
    }
  }
  return r;
}

/// A random preorder on 1..max_objects points with at most max_morphisms arrows.
inline FinCat random_preorder(Rng& rng, std::size_t max_objects = 4, std::size_t max_morphisms = 10) {
  for (;;) {
    const std::size_t n = uniform(rng, 1, max_objects);
    const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    std::vector<bool> r(n * n, false);
    for (std::size_t i = 0; i < n * n; ++i) r[i] = coin(rng, p);
    r = preorder_closure(std::move(r), n);
    std::size_t arrows = 0;
    for (bool b : r) arrows += b;
    if (arrows > max_morphisms) continue;
    std::vector<std::string> objs;
    for (std::size_t i = 0; i < n; ++i) objs.push_back("o" + std::to_string(i));
    return fixtures::thin_category(
        objs, [&](std::size_t i, std::size_t j) { return static_cast<bool>(r[i * n + j]); },
        [](std::size_t i, std::size_t j) { return "r" + std::to_string(i) + "_" + std::to_string(j); });
  }
}

/// A thin display over a thin base: a random preorder on the total objects
/// that lies over the base order. Fibres have up to `max_fibre` objects.
inline DispCat random_thin_display(Rng& rng, const FinCat& base, std::size_t max_fibre = 3) {
  std::vector<ObjIx> over;
  std::vector<std::string> ids;
  for (ObjIx c = 0; c < base.num_objects(); ++c) {
    std::size_t k = uniform(rng, 0, max_fibre);
    for (std::size_t i = 0; i < k; ++i) {
      over.push_back(c);
      ids.push_back("x" + std::to_string(i));
    }
  }
  const std::size_t n = over.size();
  const double p = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
  std::vector<bool> r(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!base.hom(over[i], over[j]).empty()) r[i * n + j] = coin(rng, p);
    }
  }
  r = preorder_closure(std::move(r), n);
  DispBuilder b(base);
  std::vector<DObjIx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b.add_dobj(over[i], ids[i]);
  std::vector<DMorIx> m(n * n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i * n + j]) m[i * n + j] = b.add_dmor(base.hom(over[i], over[j]).front(), x[i], x[j], ids[i] + "." + ids[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!r[i * n + j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (r[j * n + k]) b.set_dcomp(m[i * n + j], m[j * n + k], m[i * n + k]);
      }
    }
  }
  return b.build();
}

/// Small categories used as random fibres and non-thin bases.
inline FinCat random_small_category(Rng& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0: return fixtures::one();
    case 1: return fixtures::two();
    case 2: return fixtures::wiso();
    case 3: return fixtures::bz2();
    default: return random_preorder(rng, 3, 6);
  }
}

/// A random display: thin over a random preorder most of the time, otherwise
/// a constant display with a non-thin base or fibre.
inline DispCat random_display(Rng& rng) {
  if (coin(rng, 0.7)) {
    FinCat base = random_preorder(rng);
    return random_thin_display(rng, base);
  }
  FinCat base = coin(rng, 0.5) ? random_small_category(rng) : random_preorder(rng, 3, 6);
  return constant_display(base, random_small_category(rng));
}

}  // namespace dispcat::random
