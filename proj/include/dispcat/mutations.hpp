#pragma once

#include <string>
#include <vector>

#include "dispcat/core.hpp"
#include "dispcat/displayed.hpp"

namespace dispcat {

/// Outcome of checking every single-entry mutation of a composition table:
/// each entry deleted, and each entry redirected to every other morphism.
struct MutationSurvey {
  std::size_t composable_pairs = 0;
  std::size_t entries = 0;
  std::size_t mutants = 0;
  std::size_t rejected = 0;
  std::vector<std::string> accepted;  // "f;g := h" for mutants that pass the laws

  bool all_rejected() const { return rejected == mutants; }
};

/// Composable pairs of non-identity morphisms.
inline std::size_t composable_pairs(const FinCat& c) {
  std::size_t n = 0;
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (MorIx g : c.out_of(c.dst(f))) n += !c.is_identity(g);
  }
  return n;
}

/// Composable pairs of displayed morphisms that are not displayed identities.
inline std::size_t composable_pairs(const DispCat& d) {
  std::vector<bool> is_did(d.num_dmors(), false);
  for (DObjIx x = 0; x < d.num_dobjs(); ++x) is_did[d.did(x)] = true;
  std::size_t n = 0;
  for (DMorIx a = 0; a < d.num_dmors(); ++a) {
    if (is_did[a]) continue;
    for (DMorIx b : d.out_of(d.dmor(a).dst)) n += !is_did[b];
  }
  return n;
}

inline MutationSurvey survey_mutations(const FinCat& c) {
  MutationSurvey s;
  s.composable_pairs = composable_pairs(c);
  const auto entries = c.composition_entries();
  s.entries = entries.size();
  auto record = [&](const FinCat& m, MorIx f, MorIx g, const std::string& h) {
    ++s.mutants;
    if (check_category_laws(m).passed()) {
      s.accepted.push_back(c.morphism_id(f) + ";" + c.morphism_id(g) + " := " + h);
    } else {
      ++s.rejected;
    }
  };
  for (const auto& [f, g, h] : entries) {
    record(c.with_composite(f, g, std::nullopt), f, g, "(none)");
    for (MorIx h2 = 0; h2 < c.num_morphisms(); ++h2) {
      if (h2 != h) record(c.with_composite(f, g, h2), f, g, c.morphism_id(h2));
    }
  }
  return s;
}

/// Survey of a lawful display. A redirected entry whose new target lies
/// outside the family over the base composite, or a deleted entry, fails the
/// totality and typing laws, so only well-typed redirections are re-checked.
/// `full` re-checks every mutant instead.
inline MutationSurvey survey_mutations(const DispCat& d, bool full = false) {
  MutationSurvey s;
  s.composable_pairs = composable_pairs(d);
  const auto entries = d.composition_entries();
  s.entries = entries.size();
  const FinCat& C = d.base();
  auto record = [&](DMorIx a, DMorIx b, std::optional<DMorIx> h2) {
    ++s.mutants;
    bool lawful;
    if (full) {
      lawful = check_displayed_laws(d.with_dcomp(a, b, h2)).passed();
    } else if (!h2) {
      lawful = false;
    } else {
      const DMor& m = d.dmor(*h2);
      const bool typed = m.over == C.comp(d.dmor(a).over, d.dmor(b).over) && m.src == d.dmor(a).src &&
                         m.dst == d.dmor(b).dst;
      lawful = typed && check_displayed_laws(d.with_dcomp(a, b, h2)).passed();
    }
    if (lawful) {
      s.accepted.push_back(d.dmor_label(a) + ";" + d.dmor_label(b) + " := " + (h2 ? d.dmor_label(*h2) : "(none)"));
    } else {
      ++s.rejected;
    }
  };
  for (const auto& [a, b, h] : entries) {
    record(a, b, std::nullopt);
    for (DMorIx h2 = 0; h2 < d.num_dmors(); ++h2) {
      if (h2 != h) record(a, b, h2);
    }
  }
  return s;
}

}  // namespace dispcat
