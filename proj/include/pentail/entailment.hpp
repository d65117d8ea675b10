#pragma once

// Deciders for  X_1 -> Y_1, ..., X_k -> Y_k  |=_γ  X_0 -> Y_0.
//
// The LP route is complete for every γ in [0,1]: the entailment holds iff
// some λ >= 0 satisfies  Σ_i λ_i w_Z(X_i -> Y_i) <= w_Z(X_0 -> Y_0)  for all
// transactions Z. When it does not, the primal program is unbounded and its
// ray, scaled to integers, is a dataset separating premises from conclusion.
//
// The remaining deciders are set-inclusion characterisations valid on part
// of the γ range. They never consult the LP for the verdict; they only ask it
// for a counterexample dataset once they have decided "fails".

#include "pentail/dataset.hpp"
#include "pentail/errors.hpp"
#include "pentail/homogeneity.hpp"
#include "pentail/implication.hpp"
#include "pentail/lp.hpp"
#include "pentail/rational.hpp"
#include "pentail/signature.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace pentail {

struct EntailmentQuery {
  std::vector<PartialImplication> premises;
  PartialImplication conclusion;
  Rational gamma;

  std::size_t k() const { return premises.size(); }
  AttrSet attributes() const { return occurring(premises) | conclusion.both(); }
};

enum class Regime { Tautology, OnePremise, TwoPremise, LowGamma, HighGamma, GeneralGammaStar, LpDirect };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Tautology: return "tautology";
    case Regime::OnePremise: return "one-premise";
    case Regime::TwoPremise: return "two-premise";
    case Regime::LowGamma: return "low-gamma";
    case Regime::HighGamma: return "high-gamma";
    case Regime::GeneralGammaStar: return "general-gamma-star";
    case Regime::LpDirect: return "lp";
  }
  return "?";
}

struct EntailmentVerdict {
  bool holds = false;
  Regime regime = Regime::LpDirect;
  /// λ, one multiplier per premise; present when `holds`.
  std::optional<std::vector<Rational>> certificate;
  /// Dataset satisfying every premise but not the conclusion; present when `!holds`.
  std::optional<Dataset> counterexample;
  /// Premise indices the characterisation used (L), when one was found.
  std::optional<std::vector<std::size_t>> premise_subset;
  /// [lower, upper] bracket on γ* for `premise_subset`, GeneralGammaStar only.
  std::optional<std::pair<Rational, Rational>> gamma_star_bracket;
};

namespace detail {

inline std::vector<std::size_t> indices_of(std::uint64_t mask, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i)
    if ((mask >> i) & 1U) out.push_back(i);
  return out;
}

inline std::vector<Rational> unit_vector(std::size_t k, std::size_t i) {
  std::vector<Rational> v(k);
  v[i] = 1;
  return v;
}

/// λ_i = 1/|L| on L, 0 elsewhere.
inline std::vector<Rational> uniform_on(std::uint64_t mask, std::size_t k) {
  std::vector<Rational> v(k);
  auto idx = indices_of(mask, k);
  for (auto i : idx) v[i] = Rational(1, static_cast<long>(idx.size()));
  return v;
}

inline void require_subset_search(std::size_t k) {
  if (k > 24) throw ResourceError("too many premises for subset search");
}

/// Smallest positive integer multiple of a non-negative rational vector.
inline std::vector<Integer> integer_multiple(const std::vector<Rational>& v) {
  Integer lcm = 1;
  for (const auto& q : v) lcm = boost::multiprecision::lcm(lcm, denominator_of(q));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& q : v) {
    out.push_back(numerator_of(q) * (lcm / denominator_of(q)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace detail

/// Σ_i λ_i w_Z(premise_i) <= w_Z(conclusion), evaluated on one signature.
inline bool certificate_row_holds(const ConstraintSignature& sig, std::span<const Rational> lambda,
                                  const Rational& gamma) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] != 0 && sig.premises[i] != CoverStatus::NotCovered) lhs += lambda[i] * weight(sig.premises[i], gamma);
  return lhs <= weight(sig.conclusion, gamma);
}

struct CertificateCheck {
  bool valid = false;
  /// First transaction (bitmask order) whose inequality fails.
  std::optional<AttrSet> violated_at;

  explicit operator bool() const { return valid; }
};

inline CertificateCheck check_certificate(const EntailmentQuery& q, std::span<const Rational> lambda,
                                          const Limits& limits = {}) {
  require_confidence(q.gamma);
  if (lambda.size() != q.k()) throw ContractViolation("certificate length differs from premise count");
  for (const auto& l : lambda)
    if (l < 0) throw ContractViolation("certificate entries must be non-negative");
  for (const auto& row : distinct_signatures(q.premises, q.conclusion, limits))
    if (!certificate_row_holds(row.signature, lambda, q.gamma)) return {false, row.representative};
  return {true, std::nullopt};
}

/// Builds the separating dataset from the unbounded primal, or nullopt when
/// the entailment actually holds.
inline std::optional<Dataset> lp_counterexample(const EntailmentQuery& q, const Limits& limits = {}) {
  require_confidence(q.gamma);
  const auto rows = distinct_signatures(q.premises, q.conclusion, limits);
  const std::size_t k = q.k();

  // P: min Σ_Z w_Z(X_0->Y_0) x_Z  s.t.  Σ_Z w_Z(X_i->Y_i) x_Z >= 0,  x >= 0.
  lp::LinearProgram primal;
  primal.variables = rows.size();
  primal.sense = lp::Sense::Minimize;
  primal.objective.reserve(rows.size());
  for (const auto& r : rows) primal.objective.push_back(weight(r.signature.conclusion, q.gamma));
  for (std::size_t i = 0; i < k; ++i) {
    lp::Constraint c;
    c.relation = lp::Relation::GreaterEqual;
    c.rhs = 0;
    for (const auto& r : rows) c.coefficients.push_back(weight(r.signature.premises[i], q.gamma));
    primal.constraints.push_back(std::move(c));
  }
  auto outcome = lp::solve(primal);
  auto* unbounded = std::get_if<lp::Unbounded>(&outcome);
  if (!unbounded) return std::nullopt;

  // The primal is homogeneous, so the ray alone is a feasible point with
  // negative objective.
  const auto counts = detail::integer_multiple(unbounded->ray);
  Dataset d(q.attributes().extent());
  for (std::size_t j = 0; j < rows.size(); ++j) d.add(rows[j].representative, counts[j]);

  for (const auto& p : q.premises)
    if (!satisfies(d, p, q.gamma)) throw std::logic_error("counterexample fails a premise");
  if (satisfies(d, q.conclusion, q.gamma)) throw std::logic_error("counterexample satisfies the conclusion");
  return d;
}

/// Complete decision by LP duality, valid for every γ in [0,1] and every k.
inline EntailmentVerdict decide_lp(const EntailmentQuery& q, const Limits& limits = {}) {
  require_confidence(q.gamma);
  const auto rows = distinct_signatures(q.premises, q.conclusion, limits);
  const std::size_t k = q.k();

  // D: Σ_i w_Z(X_i->Y_i) λ_i <= w_Z(X_0->Y_0) for every signature, λ >= 0.
  std::vector<lp::Constraint> dual;
  dual.reserve(rows.size());
  for (const auto& r : rows) {
    lp::Constraint c;
    c.relation = lp::Relation::LessEqual;
    c.rhs = weight(r.signature.conclusion, q.gamma);
    for (std::size_t i = 0; i < k; ++i) c.coefficients.push_back(weight(r.signature.premises[i], q.gamma));
    dual.push_back(std::move(c));
  }

  EntailmentVerdict v;
  v.regime = Regime::LpDirect;
  if (auto lambda = lp::feasible(std::move(dual), k)) {
    v.holds = true;
    v.certificate = std::move(*lambda);
    return v;
  }
  v.holds = false;
  v.counterexample = lp_counterexample(q, limits);
  if (!v.counterexample) throw std::logic_error("dual infeasible but primal bounded");
  return v;
}

/// X_1 ⊆ X_0 and X_0Y_0 ⊆ X_1Y_1.
inline bool single_premise_entails(const PartialImplication& premise, const PartialImplication& conclusion) {
  return premise.antecedent.subset_of(conclusion.antecedent) && conclusion.both().subset_of(premise.both());
}

namespace detail {

inline EntailmentVerdict holds_with(Regime r, std::vector<Rational> lambda,
                                    std::optional<std::vector<std::size_t>> subset = std::nullopt) {
  EntailmentVerdict v;
  v.holds = true;
  v.regime = r;
  v.certificate = std::move(lambda);
  v.premise_subset = std::move(subset);
  return v;
}

inline EntailmentVerdict fails_with(Regime r, const EntailmentQuery& q, const Limits& limits) {
  EntailmentVerdict v;
  v.holds = false;
  v.regime = r;
  v.counterexample = lp_counterexample(q, limits);
  return v;
}

/// Tautology or some single premise entailing on its own (γ-independent).
inline std::optional<EntailmentVerdict> trivial_or_single(const EntailmentQuery& q, Regime r) {
  if (q.conclusion.trivial()) return holds_with(r, std::vector<Rational>(q.k()), std::vector<std::size_t>{});
  for (std::size_t i = 0; i < q.k(); ++i)
    if (single_premise_entails(q.premises[i], q.conclusion))
      return holds_with(r, unit_vector(q.k(), i), std::vector<std::size_t>{i});
  return std::nullopt;
}

}  // namespace detail

/// k <= 1. The answer does not depend on γ inside (0,1); γ of 0 or 1 goes to the LP.
inline EntailmentVerdict decide_one_premise(const EntailmentQuery& q, const Limits& limits = {}) {
  require_confidence(q.gamma);
  if (q.k() > 1) throw ContractViolation("decide_one_premise needs at most one premise");
  if (q.gamma == 0 || q.gamma == 1) return decide_lp(q, limits);
  if (auto v = detail::trivial_or_single(q, Regime::OnePremise)) return *v;
  return detail::fails_with(Regime::OnePremise, q, limits);
}

/// k >= 1, 0 < γ < 1/k: only zero or one premise can ever matter.
inline EntailmentVerdict decide_low_gamma(const EntailmentQuery& q, const Limits& limits = {}) {
  require_confidence(q.gamma);
  const std::size_t k = q.k();
  if (k == 0) throw ContractViolation("decide_low_gamma needs at least one premise");
  if (q.gamma <= 0 || q.gamma * k >= 1) throw ContractViolation("decide_low_gamma requires 0 < gamma < 1/k");
  if (auto v = detail::trivial_or_single(q, Regime::LowGamma)) return *v;
  return detail::fails_with(Regime::LowGamma, q, limits);
}

/// The seven inclusions for two premises.
inline bool seven_inclusions(const PartialImplication& p1, const PartialImplication& p2,
                             const PartialImplication& c) {
  const AttrSet x0 = c.antecedent, y0 = c.consequent;
  return p1.antecedent.subset_of(p2.both()) && p2.antecedent.subset_of(p1.both())  // (i)
         && p1.antecedent.subset_of(x0) && p2.antecedent.subset_of(x0)             // (ii)
         && x0.subset_of(p1.both() | p2.both())                                    // (iii)
         && y0.subset_of(x0 | p1.consequent) && y0.subset_of(x0 | p2.consequent);  // (iv)
}

/// k = 2, γ in [1/2, 1). Smaller γ is handed to decide_low_gamma.
inline EntailmentVerdict decide_two_premise(const EntailmentQuery& q, const Limits& limits = {}) {
  require_confidence(q.gamma);
  if (q.k() != 2) throw ContractViolation("decide_two_premise needs exactly two premises");
  if (q.gamma == 0 || q.gamma == 1) return decide_lp(q, limits);
  if (q.gamma * 2 < 1) return decide_low_gamma(q, limits);
  if (auto v = detail::trivial_or_single(q, Regime::TwoPremise)) return *v;
  if (seven_inclusions(q.premises[0], q.premises[1], q.conclusion))
    return detail::holds_with(Regime::TwoPremise, {Rational(1, 2), Rational(1, 2)}, std::vector<std::size_t>{0, 1});
  return detail::fails_with(Regime::TwoPremise, q, limits);
}

/// Conditions (a) nicety, (b) ∪X_i ⊆ X_0 ⊆ ∪X_iY_i, (c) Y_0 ⊆ X_0 ∪ ∩Y_i
/// for the premises selected by `mask` (non-empty).
inline bool structural_conditions(std::span<const PartialImplication> premises, std::uint64_t mask,
                                  const PartialImplication& conclusion) {
  const auto chosen = select(premises, mask);
  if (chosen.empty()) return false;
  AttrSet antecedents, everything, common = chosen.front().consequent;
  for (const auto& p : chosen) {
    antecedents |= p.antecedent;
    everything |= p.both();
    common &= p.consequent;
  }
  const AttrSet x0 = conclusion.antecedent;
  if (!antecedents.subset_of(x0) || !x0.subset_of(everything)) return false;
  if (!conclusion.consequent.subset_of(x0 | common)) return false;
  return enforces_homogeneity(chosen);
}

/// k >= 1, γ in [(k-1)/k, 1): entailment iff the conclusion is trivial or
/// some non-empty L meets the structural conditions; then λ uniform on L works.
inline EntailmentVerdict decide_high_gamma(const EntailmentQuery& q, const Limits& limits = {}) {
  require_confidence(q.gamma);
  const std::size_t k = q.k();
  if (k == 0) throw ContractViolation("decide_high_gamma needs at least one premise");
  if (q.gamma <= 0 || q.gamma >= 1 || q.gamma * k < Rational(k - 1))
    throw ContractViolation("decide_high_gamma requires (k-1)/k <= gamma < 1");
  detail::require_subset_search(k);
  if (q.conclusion.trivial())
    return detail::holds_with(Regime::HighGamma, std::vector<Rational>(k), std::vector<std::size_t>{});
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask)
    if (structural_conditions(q.premises, mask, q.conclusion))
      return detail::holds_with(Regime::HighGamma, detail::uniform_on(mask, k), detail::indices_of(mask, k));
  return detail::fails_with(Regime::HighGamma, q, limits);
}

}  // namespace pentail
