#pragma once

// Critical confidence threshold
//
//   γ*(Σ, X) = inf_λ max_{Z : X ⊄ Z}  Σ_{i∈W_Z} λ_i / Σ_{i∈V_Z ∪ W_Z} λ_i
//
// over λ on the probability simplex, with 0/0 read as 0 and an empty max as 0.
// For fixed γ the condition "max <= γ" is the linear system
//   Σ_{i∈W_Z} λ_i <= γ Σ_{i∈V_Z ∪ W_Z} λ_i   for every Z with X ⊄ Z,
// whose feasible γ form an upward-closed interval [γ*, 1]. γ* is generally
// irrational, so it is reported as a bracket found by bisection on γ.

#include "pentail/entailment.hpp"
#include "pentail/errors.hpp"
#include "pentail/implication.hpp"
#include "pentail/lp.hpp"
#include "pentail/rational.hpp"
#include "pentail/signature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace pentail {

struct GammaStarResult {
  Rational lower;  // 0, or a γ at which no λ exists
  Rational upper;  // a γ at which lambda_at_upper is feasible
  Rational tolerance;
  std::vector<Rational> lambda_at_upper;
};

/// The min-max program for one (Σ, X), with its constraint rows precomputed.
class ThresholdProgram {
 public:
  ThresholdProgram(std::span<const PartialImplication> sigma, AttrSet x, const Limits& limits = {})
      : k_(sigma.size()) {
    if (k_ == 0) throw ContractViolation("critical threshold needs at least one implication");
    const AttrSet universe = occurring(sigma) | x;
    const PartialImplication uncovered{x, AttrSet{}};
    auto rows = distinct_signatures(universe, sigma, uncovered, limits, [x](AttrSet z) { return !x.subset_of(z); });
    for (auto& r : rows) {
      bool any_witnessed = false;
      for (std::size_t i = 0; i < k_; ++i) any_witnessed = any_witnessed || r.signature.witnessed(i);
      // Rows without a witnessed premise have ratio 0 and constrain nothing.
      if (any_witnessed) rows_.push_back(std::move(r));
    }
  }

  std::size_t k() const { return k_; }
  const std::vector<SignatureRow>& rows() const { return rows_; }

  /// λ on the simplex meeting every row at γ, or nullopt.
  std::optional<std::vector<Rational>> feasible_at(const Rational& gamma) const {
    require_confidence(gamma);
    std::vector<lp::Constraint> cs;
    cs.reserve(rows_.size() + 1);
    lp::Constraint simplex;
    simplex.relation = lp::Relation::Equal;
    simplex.rhs = 1;
    simplex.coefficients.assign(k_, Rational(1));
    cs.push_back(std::move(simplex));
    for (const auto& r : rows_) {
      lp::Constraint c;
      c.relation = lp::Relation::LessEqual;
      c.rhs = 0;
      c.coefficients.reserve(k_);
      for (std::size_t i = 0; i < k_; ++i) c.coefficients.push_back(weight(r.signature.premises[i], gamma));
      cs.push_back(std::move(c));
    }
    return lp::feasible(std::move(cs), k_);
  }

  Rational max_ratio(std::span<const Rational> lambda) const {
    require_simplex(lambda);
    Rational best = 0;
    for (const auto& r : rows_) {
      Rational num = 0, den = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        if (r.signature.witnessed(i)) {
          num += lambda[i];
          den += lambda[i];
        } else if (r.signature.violated(i)) {
          den += lambda[i];
        }
      }
      if (den == 0) continue;  // 0/0 counts as 0
      Rational ratio = num / den;
      if (ratio > best) best = std::move(ratio);
    }
    return best;
  }

  GammaStarResult bracket(const Rational& tolerance) const {
    if (tolerance <= 0) throw DomainError("tolerance must be positive");
    GammaStarResult out;
    out.tolerance = tolerance;
    if (auto at_zero = feasible_at(Rational(0))) {
      out.lower = out.upper = 0;
      out.lambda_at_upper = std::move(*at_zero);
      return out;
    }
    auto at_one = feasible_at(Rational(1));
    if (!at_one) throw std::logic_error("threshold program infeasible at gamma = 1");
    Rational lo = 0, hi = 1;
    std::vector<Rational> lambda = std::move(*at_one);
    tighten(hi, lambda);
    while (hi - lo > tolerance) {
      Rational mid = (lo + hi) / 2;
      if (auto found = feasible_at(mid)) {
        hi = mid;
        lambda = std::move(*found);
        tighten(hi, lambda);
      } else {
        lo = mid;
      }
    }
    out.lower = std::move(lo);
    out.upper = std::move(hi);
    out.lambda_at_upper = std::move(lambda);
    return out;
  }

 private:
  void require_simplex(std::span<const Rational> lambda) const {
    if (lambda.size() != k_) throw ContractViolation("lambda length differs from premise count");
    Rational sum = 0;
    for (const auto& l : lambda) {
      if (l < 0) throw ContractViolation("lambda entries must be non-negative");
      sum += l;
    }
    if (sum != 1) throw ContractViolation("lambda must sum to 1");
  }

  // λ is feasible at its own max ratio, which may already sit below hi.
  void tighten(Rational& hi, const std::vector<Rational>& lambda) const {
    Rational m = max_ratio(lambda);
    if (m < hi) hi = std::move(m);
  }

  std::size_t k_;
  std::vector<SignatureRow> rows_;
};

inline std::optional<std::vector<Rational>> feasible_at(const Rational& gamma, std::span<const PartialImplication> sigma,
                                                        AttrSet x, const Limits& limits = {}) {
  return ThresholdProgram(sigma, x, limits).feasible_at(gamma);
}

inline Rational max_ratio(std::span<const Rational> lambda, std::span<const PartialImplication> sigma, AttrSet x,
                          const Limits& limits = {}) {
  return ThresholdProgram(sigma, x, limits).max_ratio(lambda);
}

inline GammaStarResult gamma_star(std::span<const PartialImplication> sigma, AttrSet x, const Rational& tolerance,
                                  const Limits& limits = {}) {
  return ThresholdProgram(sigma, x, limits).bracket(tolerance);
}

/// Bracket width used when γ* only serves to decide condition (d).
inline const Rational kDecisionTolerance{1, 1024};

/// Entailment for any γ in (0,1) and k >= 1: trivial conclusion, or a
/// non-empty L meeting the structural conditions with γ >= γ*(L, X_0).
/// When γ falls inside a bracket the exact LP at γ settles the question.
inline EntailmentVerdict decide_general(const EntailmentQuery& q, const Limits& limits = {}) {
  require_confidence(q.gamma);
  const std::size_t k = q.k();
  if (k == 0) throw ContractViolation("decide_general needs at least one premise");
  if (q.gamma <= 0 || q.gamma >= 1) throw ContractViolation("decide_general requires gamma in (0,1)");
  detail::require_subset_search(k);
  require_attribute_cap(q.attributes(), limits);

  if (q.conclusion.trivial())
    return detail::holds_with(Regime::GeneralGammaStar, std::vector<Rational>(k), std::vector<std::size_t>{});

  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    if (!structural_conditions(q.premises, mask, q.conclusion)) continue;
    const auto chosen = select(q.premises, mask);
    const auto bracket = gamma_star(chosen, q.conclusion.antecedent, kDecisionTolerance, limits);
    if (q.gamma <= bracket.lower) continue;  // nothing feasible at lower, so nothing below it
    if (q.gamma >= bracket.upper) {
      std::vector<Rational> lambda(k);
      auto idx = detail::indices_of(mask, k);
      for (std::size_t j = 0; j < idx.size(); ++j) lambda[idx[j]] = bracket.lambda_at_upper[j];
      auto v = detail::holds_with(Regime::GeneralGammaStar, std::move(lambda), std::move(idx));
      v.gamma_star_bracket = {bracket.lower, bracket.upper};
      return v;
    }
    auto v = decide_lp(q, limits);
    v.regime = Regime::GeneralGammaStar;
    v.gamma_star_bracket = {bracket.lower, bracket.upper};
    return v;
  }
  return detail::fails_with(Regime::GeneralGammaStar, q, limits);
}

}  // namespace pentail
