#pragma once

// A family of implications "enforces homogeneity" (is nice) when every
// transaction that violates none of them either witnesses all of them or
// covers none of them. Equivalently, reading the implications classically,
// each antecedent X_i forces the whole attribute set U = X_1Y_1...X_kY_k.

#include "pentail/attr_set.hpp"
#include "pentail/errors.hpp"
#include "pentail/implication.hpp"

#include <span>

namespace pentail {

/// Least superset of `start` closed under X_i ⊆ C ⇒ Y_i ⊆ C.
inline AttrSet horn_closure(AttrSet start, std::span<const PartialImplication> rules) {
  AttrSet closed = start;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      if (r.antecedent.subset_of(closed) && !r.consequent.subset_of(closed)) {
        closed |= r.consequent;
        changed = true;
      }
    }
  }
  return closed;
}

inline bool enforces_homogeneity(std::span<const PartialImplication> rules) {
  const AttrSet all = occurring(rules);
  for (const auto& r : rules)
    if (!all.subset_of(horn_closure(r.antecedent, rules))) return false;
  return true;
}

/// Checks the definition directly over every Z ⊆ occurring attributes.
inline bool brute_force_homogeneity(std::span<const PartialImplication> rules,
                                    std::size_t attribute_cap = kMaxAttributes) {
  const AttrSet all = occurring(rules);
  if (all.size() > attribute_cap) throw ResourceError("too many attributes for exhaustive enumeration");
  bool nice = true;
  for_each_subset(all, [&](AttrSet z) {
    if (!nice) return;
    bool any_violated = false, any_witnessed = false, any_uncovered = false;
    for (const auto& r : rules) {
      switch (cover_status(z, r)) {
        case CoverStatus::Violated: any_violated = true; break;
        case CoverStatus::Witnessed: any_witnessed = true; break;
        case CoverStatus::NotCovered: any_uncovered = true; break;
      }
    }
    if (!any_violated && any_witnessed && any_uncovered) nice = false;
  });
  return nice;
}

/// X_1 ⊆ X_2Y_2 and X_2 ⊆ X_1Y_1.
inline bool two_premise_nicety(const PartialImplication& a, const PartialImplication& b) {
  return a.antecedent.subset_of(b.both()) && b.antecedent.subset_of(a.both());
}

}  // namespace pentail
