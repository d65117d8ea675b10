#pragma once

#include "pentail/attr_set.hpp"
#include "pentail/implication.hpp"
#include "pentail/rational.hpp"

#include <map>

namespace pentail {

/// Multiset of transactions: each stored transaction has multiplicity >= 1.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::size_t universe_size) : universe_size_(universe_size) {
    if (universe_size > kMaxAttributes) throw ResourceError("dataset universe exceeds attribute limit");
  }

  std::size_t universe_size() const { return universe_size_; }

  /// Adds `count` copies of transaction z.
  void add(AttrSet z, const Integer& count = 1) {
    require(z);
    if (count < 0) throw ContractViolation("negative multiplicity");
    if (count == 0) return;
    counts_[z] += count;
  }

  Integer multiplicity(AttrSet z) const {
    auto it = counts_.find(z);
    return it == counts_.end() ? Integer(0) : it->second;
  }

  const std::map<AttrSet, Integer>& transactions() const { return counts_; }
  bool empty() const { return counts_.empty(); }

  Integer total() const {
    Integer t = 0;
    for (const auto& [z, c] : counts_) t += c;
    return t;
  }

  void require(AttrSet s) const {
    if (!s.subset_of(AttrSet::full(universe_size_)))
      throw ContractViolation("attribute set has bits outside the dataset universe");
  }

  bool operator==(const Dataset&) const = default;

 private:
  std::size_t universe_size_ = kMaxAttributes;
  std::map<AttrSet, Integer> counts_;
};

/// C_D[X]: number of transactions containing X, with multiplicity.
inline Integer support(const Dataset& d, AttrSet x) {
  d.require(x);
  Integer c = 0;
  for (const auto& [z, m] : d.transactions())
    if (x.subset_of(z)) c += m;
  return c;
}

/// C_D[XY] / C_D[X], or nullopt when nothing covers X.
inline std::optional<Rational> confidence(const Dataset& d, const PartialImplication& imp) {
  Integer covered = support(d, imp.antecedent);
  if (covered == 0) return std::nullopt;
  return Rational(support(d, imp.both()), covered);
}

inline bool satisfies(const Dataset& d, const PartialImplication& imp, const Rational& gamma) {
  require_confidence(gamma);
  auto c = confidence(d, imp);
  return !c || *c >= gamma;
}

/// Sum over transactions of w_Z(imp) * x_Z; non-negative exactly when `satisfies`.
inline Rational weighted_balance(const Dataset& d, const PartialImplication& imp, const Rational& gamma) {
  require_confidence(gamma);
  d.require(imp.both());
  Rational s = 0;
  for (const auto& [z, m] : d.transactions()) s += weight(cover_status(z, imp), gamma) * m;
  return s;
}

}  // namespace pentail
