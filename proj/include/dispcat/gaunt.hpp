#pragma once

#include "dispcat/core.hpp"

namespace dispcat {

/// Set-level identity test: src = dst and f is the identity there.
inline bool is_identity_morphism(const FinCat& c, MorIx f) {
  if (f >= c.num_morphisms()) throw Error(ErrorCode::UnknownMorphism, std::to_string(f));
  return c.src(f) == c.dst(f) && c.identity(c.src(f)) == f;
}

/// Univalence at set level: no isomorphism between distinct objects and no
/// non-identity automorphism.
inline Report is_univalent_category(const FinCat& c) {
  Report r("is_univalent_category");
  bool distinct_iso_free = true;
  bool automorphisms_trivial = true;
  for (MorIx f : isomorphisms(c)) {
    if (c.src(f) != c.dst(f)) {
      if (distinct_iso_free) {
        r.fail("iso_between_distinct_objects",
               c.morphism_id(f) + " is an isomorphism " + c.object_id(c.src(f)) + " -> " + c.object_id(c.dst(f)),
               {c.morphism_id(f)});
      }
      distinct_iso_free = false;
    } else if (!is_identity_morphism(c, f)) {
      if (automorphisms_trivial) {
        r.fail("nontrivial_automorphism", c.morphism_id(f) + " is a non-identity automorphism",
               {c.morphism_id(f)});
      }
      automorphisms_trivial = false;
    }
  }
  r.set("distinct_objects_iso_free", distinct_iso_free);
  r.set("automorphisms_trivial", automorphisms_trivial);
  return r;
}

}  // namespace dispcat
