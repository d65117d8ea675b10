#pragma once

#include "pentail/entailment.hpp"
#include "pentail/errors.hpp"
#include "pentail/gamma_star.hpp"
#include "pentail/implication.hpp"

#include <optional>
#include <vector>

namespace pentail {

enum class Method { Auto, Lp, Characterization };

/// Routes a query to the cheapest decider valid for its premise count and γ.
///
/// Auto: trivial conclusion or k = 0 → Tautology; k = 1 → OnePremise;
/// γ < 1/k → LowGamma; γ >= (k-1)/k → HighGamma; otherwise GeneralGammaStar.
/// γ of exactly 0 or 1, or k above `limits.characterization_max_premises`,
/// goes to the LP. Characterization follows the same table but rejects γ of
/// 0 or 1 with DomainError instead of falling back. Lp always uses the LP.
inline EntailmentVerdict decide(const EntailmentQuery& q, Method method = Method::Auto, const Limits& limits = {}) {
  require_confidence(q.gamma);
  if (method == Method::Lp) return decide_lp(q, limits);

  const bool boundary = q.gamma == 0 || q.gamma == 1;
  if (boundary && method == Method::Characterization)
    throw DomainError("set-inclusion characterisations need gamma strictly between 0 and 1");

  const std::size_t k = q.k();
  if (q.conclusion.trivial()) {
    EntailmentVerdict v;
    v.holds = true;
    v.regime = Regime::Tautology;
    v.certificate = std::vector<Rational>(k);
    v.premise_subset = std::vector<std::size_t>{};
    return v;
  }
  if (boundary) return decide_lp(q, limits);
  if (k == 0) {
    EntailmentVerdict v;
    v.holds = false;
    v.regime = Regime::Tautology;
    v.counterexample = lp_counterexample(q, limits);
    return v;
  }
  if (k == 1) return decide_one_premise(q, limits);
  if (method == Method::Auto && k > limits.characterization_max_premises) return decide_lp(q, limits);
  if (q.gamma * k < 1) return decide_low_gamma(q, limits);
  if (q.gamma * k >= Rational(k - 1)) return decide_high_gamma(q, limits);
  return decide_general(q, limits);
}

struct ProperEntailment {
  bool holds = false;
  /// The full premise list is inclusion-minimal among entailing subsets.
  bool proper = false;
  /// An inclusion-minimal entailing premise subset (indices), when `holds`.
  std::optional<std::vector<std::size_t>> minimal;
};

/// Minimality is always re-decided on premise subsets; the structural
/// conditions alone are not known to guarantee it.
inline ProperEntailment properly_entails(const EntailmentQuery& q, Method method = Method::Auto,
                                         const Limits& limits = {}) {
  ProperEntailment out;
  if (!decide(q, method, limits).holds) return out;
  out.holds = true;

  // Entailment is monotone in the premise set, so deleting premises greedily
  // until none can go yields an inclusion-minimal subset.
  std::vector<std::size_t> kept(q.k());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  for (std::size_t pos = 0; pos < kept.size();) {
    EntailmentQuery smaller{{}, q.conclusion, q.gamma};
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != pos) smaller.premises.push_back(q.premises[kept[j]]);
    if (decide(smaller, method, limits).holds)
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    else
      ++pos;
  }
  out.proper = kept.size() == q.k();
  out.minimal = std::move(kept);
  return out;
}

/// Greedy redundancy removal in input order: rule r is dropped when the rules
/// kept so far together with the rules not yet visited entail it at γ.
inline ImplicationSet prune(const ImplicationSet& rules, const Rational& gamma, Method method = Method::Auto,
                            const Limits& limits = {}) {
  require_confidence(gamma);
  std::vector<PartialImplication> kept;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    EntailmentQuery q{kept, rules[i], gamma};
    q.premises.insert(q.premises.end(), rules.rules.begin() + static_cast<std::ptrdiff_t>(i) + 1, rules.rules.end());
    if (!decide(q, method, limits).holds) kept.push_back(rules[i]);
  }
  return ImplicationSet(rules.universe, std::move(kept));
}

}  // namespace pentail
