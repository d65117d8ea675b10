#pragma once

// Brute-force cross-checks for the test suite. Nothing here is used by the
// deciders; each routine recomputes what it needs from the definitions.

#include "pentail/attr_set.hpp"
#include "pentail/dataset.hpp"
#include "pentail/entailment.hpp"
#include "pentail/errors.hpp"
#include "pentail/implication.hpp"
#include "pentail/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace pentail::oracle {

struct RandomInstanceSpec {
  std::size_t n = 5;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  double density = 0.3;
};

inline void validate(const RandomInstanceSpec& spec) {
  if (spec.n == 0 || spec.n > 10) throw ContractViolation("oracle instances need 1 <= n <= 10");
  if (spec.k > 4) throw ContractViolation("oracle instances need k <= 4");
  if (spec.density < 0 || spec.density > 1) throw ContractViolation("density must lie in [0,1]");
}

class InstanceGenerator {
 public:
  explicit InstanceGenerator(RandomInstanceSpec spec) : spec_(spec), rng_(spec.seed) { validate(spec_); }

  std::mt19937_64& rng() { return rng_; }

  AttrSet attr_set() { return attr_set_within(AttrSet::full(spec_.n)); }

  AttrSet attr_set_within(AttrSet pool) {
    std::bernoulli_distribution coin(spec_.density);
    AttrSet s;
    for (auto i : pool.indices())
      if (coin(rng_)) s |= AttrSet::singleton(i);
    return s;
  }

  AttrSet any_subset_of(AttrSet pool) {
    std::bernoulli_distribution coin(0.5);
    AttrSet s;
    for (auto i : pool.indices())
      if (coin(rng_)) s |= AttrSet::singleton(i);
    return s;
  }

  PartialImplication implication() { return {attr_set(), attr_set()}; }

  std::vector<PartialImplication> implications(std::size_t k) {
    std::vector<PartialImplication> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(implication());
    return out;
  }

  /// Premises plus a conclusion. Half of the conclusions are built from a
  /// random premise subset so that entailments actually occur.
  EntailmentQuery query(std::size_t k, Rational gamma) {
    EntailmentQuery q;
    q.gamma = std::move(gamma);
    std::uniform_int_distribution<int> mode_dist(0, 3);
    const int mode = mode_dist(rng_);
    if (mode == 3 && k > 0) {
      // Shared antecedent: a family that is always nice.
      AttrSet x = attr_set();
      for (std::size_t i = 0; i < k; ++i) q.premises.push_back({x, attr_set()});
    } else {
      q.premises = implications(k);
    }
    if (mode == 0 || k == 0) {
      q.conclusion = implication();
      return q;
    }
    std::uniform_int_distribution<std::uint64_t> mask_dist(1, (std::uint64_t{1} << k) - 1);
    const auto chosen = select(q.premises, mask_dist(rng_));
    AttrSet antecedents, everything, common = chosen.front().consequent;
    for (const auto& p : chosen) {
      antecedents |= p.antecedent;
      everything |= p.both();
      common &= p.consequent;
    }
    AttrSet x0 = antecedents | any_subset_of(everything);
    AttrSet y0 = any_subset_of(common) | any_subset_of(x0);
    std::bernoulli_distribution perturb(0.25);
    if (perturb(rng_)) y0 |= attr_set();
    if (perturb(rng_)) x0 |= attr_set();
    q.conclusion = {x0, y0};
    return q;
  }

 private:
  RandomInstanceSpec spec_;
  std::mt19937_64 rng_;
};

/// Bounded search for a dataset satisfying every premise at γ and failing the
/// conclusion. Transactions are grouped by their cover pattern against the
/// query (transactions with equal patterns are interchangeable); each group
/// gets one representative with multiplicity in [0, max_mult]. Groups are
/// scanned in order of first appearance and multiplicities from 0 upward, so
/// the result is the first counterexample in that order.
///
/// A nullopt result only means nothing was found within the bounds; it does
/// not prove the entailment.
inline std::optional<Dataset> search_counterexample(const EntailmentQuery& q, std::size_t max_mult) {
  require_confidence(q.gamma);
  const AttrSet universe = q.attributes();
  if (universe.size() > 6) throw ContractViolation("dataset search is limited to 6 attributes");
  if (max_mult > 8) throw ContractViolation("dataset search is limited to multiplicity 8");

  // Integer weights: γ = p/d gives witnessed d - p, violated -p.
  const Integer p = numerator_of(q.gamma), d = denominator_of(q.gamma);
  const long long wit = (d - p).convert_to<long long>(), vio = -p.convert_to<long long>();
  auto int_weight = [&](AttrSet z, const PartialImplication& imp) -> long long {
    switch (cover_status(z, imp)) {
      case CoverStatus::Witnessed: return wit;
      case CoverStatus::Violated: return vio;
      case CoverStatus::NotCovered: break;
    }
    return 0;
  };

  const std::size_t k = q.k();
  struct Group {
    AttrSet representative;
    std::vector<long long> premise;  // weight per premise
    long long conclusion;
  };
  std::vector<Group> groups;
  std::set<std::pair<std::vector<long long>, long long>> seen;
  for_each_subset(universe, [&](AttrSet z) {
    Group g{z, {}, int_weight(z, q.conclusion)};
    bool helps = g.conclusion < 0;
    for (const auto& prem : q.premises) {
      g.premise.push_back(int_weight(z, prem));
      helps = helps || g.premise.back() > 0;
    }
    // A group that neither hurts the conclusion nor helps a premise can be
    // left at 0 in any counterexample.
    if (!helps) return;
    if (seen.emplace(g.premise, g.conclusion).second) groups.push_back(std::move(g));
  });

  const std::size_t m = groups.size();
  const long long mult = static_cast<long long>(max_mult);
  // Best still-reachable gain per premise / loss for the conclusion from groups [r, m).
  std::vector<std::vector<long long>> premise_room(m + 1, std::vector<long long>(k, 0));
  std::vector<long long> conclusion_room(m + 1, 0);
  for (std::size_t r = m; r-- > 0;) {
    for (std::size_t i = 0; i < k; ++i)
      premise_room[r][i] = premise_room[r + 1][i] + std::max(0LL, groups[r].premise[i]) * mult;
    conclusion_room[r] = conclusion_room[r + 1] + std::min(0LL, groups[r].conclusion) * mult;
  }

  std::vector<long long> counts(m, 0);
  std::vector<long long> balance(k, 0);
  long long conclusion_balance = 0;

  auto search = [&](auto&& self, std::size_t r) -> bool {
    for (std::size_t i = 0; i < k; ++i)
      if (balance[i] + premise_room[r][i] < 0) return false;
    if (conclusion_balance + conclusion_room[r] >= 0) return false;
    if (r == m) return true;  // every premise balance >= 0, conclusion < 0
    for (long long c = 0; c <= mult; ++c) {
      counts[r] = c;
      if (self(self, r + 1)) return true;
      for (std::size_t i = 0; i < k; ++i) balance[i] += groups[r].premise[i];
      conclusion_balance += groups[r].conclusion;
    }
    for (std::size_t i = 0; i < k; ++i) balance[i] -= groups[r].premise[i] * (mult + 1);
    conclusion_balance -= groups[r].conclusion * (mult + 1);
    counts[r] = 0;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;

  Dataset out(universe.extent());
  for (std::size_t r = 0; r < m; ++r) out.add(groups[r].representative, counts[r]);
  return out;
}

/// Minimum over the simplex grid {c / steps : c ∈ N^k, Σc = steps} of
/// max_{Z : X ⊄ Z} Σ_{W_Z} λ / Σ_{V_Z ∪ W_Z} λ  (0/0 and empty max read as 0).
/// An upper bound on the critical threshold that tightens as the grid refines.
inline Rational grid_min_max(std::span<const PartialImplication> sigma, AttrSet x, std::size_t steps) {
  const std::size_t k = sigma.size();
  if (k == 0 || k > 4) throw ContractViolation("grid search needs 1 <= k <= 4");
  if (steps == 0) throw ContractViolation("grid needs at least one step");

  // (witnessed mask, covered mask) per transaction with X ⊄ Z.
  std::set<std::pair<unsigned, unsigned>> patterns;
  for_each_subset(occurring(sigma) | x, [&](AttrSet z) {
    if (x.subset_of(z)) return;
    unsigned witnessed = 0, covered = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (sigma[i].antecedent.subset_of(z)) covered |= 1U << i;
      if (sigma[i].both().subset_of(z)) witnessed |= 1U << i;
    }
    patterns.emplace(witnessed, covered);
  });

  std::vector<long long> c(k, 0);
  // Best value as a fraction num/den; start above every ratio.
  long long best_num = 2, best_den = 1;
  auto evaluate = [&]() {
    long long worst_num = 0, worst_den = 1;
    for (auto [w, u] : patterns) {
      long long num = 0, den = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if ((w >> i) & 1U) num += c[i];
        if ((u >> i) & 1U) den += c[i];
      }
      if (den == 0) continue;
      if (num * worst_den > worst_num * den) {
        worst_num = num;
        worst_den = den;
      }
    }
    if (worst_num * best_den < best_num * worst_den) {
      best_num = worst_num;
      best_den = worst_den;
    }
  };
  auto fill = [&](auto&& self, std::size_t i, long long remaining) -> void {
    if (i + 1 == k) {
      c[i] = remaining;
      evaluate();
      return;
    }
    for (long long v = 0; v <= remaining; ++v) {
      c[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  fill(fill, 0, static_cast<long long>(steps));
  return Rational(best_num, best_den);
}

}  // namespace pentail::oracle
