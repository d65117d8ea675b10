#pragma once

#include "pentail/attr_set.hpp"
#include "pentail/errors.hpp"
#include "pentail/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace pentail {

/// X -> Y, read probabilistically. Either side may be empty.
struct PartialImplication {
  AttrSet antecedent;
  AttrSet consequent;

  AttrSet both() const { return antecedent | consequent; }
  /// Y ⊆ X: holds in every dataset at every threshold.
  bool trivial() const { return consequent.subset_of(antecedent); }

  bool operator==(const PartialImplication&) const = default;
};

enum class CoverStatus { NotCovered, Violated, Witnessed };

inline CoverStatus cover_status(AttrSet z, const PartialImplication& imp) {
  if (!imp.antecedent.subset_of(z)) return CoverStatus::NotCovered;
  return imp.consequent.subset_of(z) ? CoverStatus::Witnessed : CoverStatus::Violated;
}

inline void require_confidence(const Rational& gamma) {
  if (gamma < 0 || gamma > 1) throw DomainError("confidence threshold must lie in [0,1]");
}

/// 1-γ if z witnesses, -γ if it violates, 0 otherwise.
inline Rational weight(CoverStatus status, const Rational& gamma) {
  switch (status) {
    case CoverStatus::Witnessed: return 1 - gamma;
    case CoverStatus::Violated: return -gamma;
    case CoverStatus::NotCovered: break;
  }
  return Rational(0);
}

inline Rational weight(AttrSet z, const PartialImplication& imp, const Rational& gamma) {
  require_confidence(gamma);
  return weight(cover_status(z, imp), gamma);
}

/// Union of both sides of every implication.
inline AttrSet occurring(std::span<const PartialImplication> imps) {
  AttrSet u;
  for (const auto& imp : imps) u |= imp.both();
  return u;
}

/// Premises X_1 -> Y_1, ..., X_k -> Y_k over a named universe.
struct ImplicationSet {
  AttributeUniverse universe;
  std::vector<PartialImplication> rules;

  ImplicationSet() = default;
  ImplicationSet(AttributeUniverse u, std::vector<PartialImplication> r)
      : universe(std::move(u)), rules(std::move(r)) {
    for (const auto& imp : rules) universe.require(imp.both());
  }

  std::size_t size() const { return rules.size(); }
  bool empty() const { return rules.empty(); }
  const PartialImplication& operator[](std::size_t i) const { return rules[i]; }
  std::span<const PartialImplication> span() const { return rules; }
  AttrSet attributes() const { return occurring(rules); }

  std::string format(const PartialImplication& imp) const {
    auto lhs = universe.format(imp.antecedent);
    auto rhs = universe.format(imp.consequent);
    return (lhs.empty() ? "" : lhs + " ") + "->" + (rhs.empty() ? "" : " " + rhs);
  }
};

/// The sub-family indexed by the bits of `mask` (bit i selects rule i).
inline std::vector<PartialImplication> select(std::span<const PartialImplication> imps, std::uint64_t mask) {
  std::vector<PartialImplication> out;
  for (std::size_t i = 0; i < imps.size(); ++i)
    if ((mask >> i) & 1U) out.push_back(imps[i]);
  return out;
}

}  // namespace pentail
