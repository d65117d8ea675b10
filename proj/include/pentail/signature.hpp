#pragma once

#include "pentail/attr_set.hpp"
#include "pentail/errors.hpp"
#include "pentail/implication.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pentail {

struct Limits {
  /// Ceiling on attributes occurring in one enumeration (2^n transactions).
  std::size_t attribute_cap = kDefaultAttributeCap;
  /// Above this premise count the automatic dispatcher skips the 2^k subset
  /// searches of the characterisations and solves the LP directly.
  std::size_t characterization_max_premises = 12;
};

inline void require_attribute_cap(AttrSet attributes, const Limits& limits) {
  const std::size_t cap = std::min(limits.attribute_cap, kMaxAttributes);
  if (attributes.size() > cap)
    throw ResourceError(std::to_string(attributes.size()) + " occurring attributes exceed the cap of " +
                        std::to_string(cap));
}

/// Cover status of one transaction against every premise and (optionally)
/// the conclusion. Transactions sharing a signature contribute identical LP
/// rows and columns.
struct ConstraintSignature {
  std::vector<CoverStatus> premises;
  CoverStatus conclusion = CoverStatus::NotCovered;

  bool witnessed(std::size_t i) const { return premises[i] == CoverStatus::Witnessed; }
  bool violated(std::size_t i) const { return premises[i] == CoverStatus::Violated; }

  auto operator<=>(const ConstraintSignature&) const = default;
};

struct SignatureRow {
  ConstraintSignature signature;
  AttrSet representative;  // first transaction (in bitmask order) producing it
};

inline ConstraintSignature signature_of(AttrSet z, std::span<const PartialImplication> premises,
                                        const PartialImplication& conclusion) {
  ConstraintSignature s;
  s.premises.reserve(premises.size());
  for (const auto& p : premises) s.premises.push_back(cover_status(z, p));
  s.conclusion = cover_status(z, conclusion);
  return s;
}

/// Distinct signatures over all Z ⊆ `universe`, in order of first appearance.
/// Transactions for which `keep(Z)` is false are skipped.
template <typename Keep>
std::vector<SignatureRow> distinct_signatures(AttrSet universe, std::span<const PartialImplication> premises,
                                              const PartialImplication& conclusion, const Limits& limits,
                                              Keep&& keep) {
  require_attribute_cap(universe, limits);
  std::vector<SignatureRow> rows;
  std::map<ConstraintSignature, std::size_t> seen;
  for_each_subset(universe, [&](AttrSet z) {
    if (!keep(z)) return;
    auto sig = signature_of(z, premises, conclusion);
    if (seen.emplace(sig, rows.size()).second) rows.push_back({std::move(sig), z});
  });
  return rows;
}

inline std::vector<SignatureRow> distinct_signatures(std::span<const PartialImplication> premises,
                                                     const PartialImplication& conclusion,
                                                     const Limits& limits = {}) {
  const AttrSet universe = occurring(premises) | conclusion.both();
  return distinct_signatures(universe, premises, conclusion, limits, [](AttrSet) { return true; });
}

}  // namespace pentail
