#pragma once

// Dense two-phase simplex over exact rationals.
//
// Every row is first rewritten as a ">=" row (negating "<=", splitting "=" in
// two), then as an equality with a surplus column. Bland's rule picks both the
// entering and the leaving column, so degenerate programs cannot cycle.
// Returned points and rays are re-checked against the original program by
// substitution before they leave `solve`.

#include "pentail/errors.hpp"
#include "pentail/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace pentail::lp {

enum class Relation { GreaterEqual, LessEqual, Equal };
enum class Sense { Minimize, Maximize };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::GreaterEqual;
  Rational rhs = 0;
};

/// optimise objective·x subject to the constraints and x >= 0.
struct LinearProgram {
  std::size_t variables = 0;
  Sense sense = Sense::Minimize;
  std::vector<Rational> objective;  // empty means the zero objective
  std::vector<Constraint> constraints;

  void validate() const {
    if (!objective.empty() && objective.size() != variables)
      throw ContractViolation("objective length differs from variable count");
    for (const auto& c : constraints)
      if (c.coefficients.size() != variables)
        throw ContractViolation("constraint row length differs from variable count");
  }

  Rational objective_value(const std::vector<Rational>& x) const {
    Rational v = 0;
    for (std::size_t j = 0; j < objective.size(); ++j)
      if (objective[j] != 0) v += objective[j] * x[j];
    return v;
  }
};

struct Infeasible {};

struct Optimal {
  std::vector<Rational> point;
  Rational value;
};

/// `point` is feasible; point + t·ray stays feasible for every t >= 0 while
/// the objective improves without bound.
struct Unbounded {
  std::vector<Rational> point;
  std::vector<Rational> ray;
};

using LpOutcome = std::variant<Infeasible, Optimal, Unbounded>;

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != 0 && x[j] != 0) s += a[j] * x[j];
  return s;
}

inline bool relation_holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::Equal: return lhs == rhs;
  }
  return false;
}

/// Exact substitution check of a candidate point.
inline bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variables) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& c : lp.constraints)
    if (!relation_holds(dot(c.coefficients, x), c.relation, c.rhs)) return false;
  return true;
}

/// r >= 0, r respects every homogeneous row, and r strictly improves the objective.
inline bool is_improving_ray(const LinearProgram& lp, const std::vector<Rational>& r) {
  if (r.size() != lp.variables) return false;
  for (const auto& v : r)
    if (v < 0) return false;
  for (const auto& c : lp.constraints)
    if (!relation_holds(dot(c.coefficients, r), c.relation, Rational(0))) return false;
  Rational gain = lp.objective_value(r);
  return lp.sense == Sense::Minimize ? gain < 0 : gain > 0;
}

namespace detail {

class Tableau {
 public:
  // rows: coefficient rows already in the form  a·x - s = b  (">=" canonical).
  Tableau(std::size_t variables, std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs)
      : n_(variables), m_(rows.size()) {
    // Column layout: [0, n) structural, [n, n+m) surplus, [n+m, n+m+a) artificial.
    std::vector<bool> needs_artificial(m_);
    std::size_t artificial = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      needs_artificial[i] = rhs[i] > 0;
      if (needs_artificial[i]) ++artificial;
    }
    first_artificial_ = n_ + m_;
    cols_ = n_ + m_ + artificial;
    cells_.assign(m_, std::vector<Rational>(cols_ + 1));
    basis_.assign(m_, 0);
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = cells_[i];
      if (needs_artificial[i]) {
        for (std::size_t j = 0; j < n_; ++j) row[j] = rows[i][j];
        row[n_ + i] = -1;
        row[next_art] = 1;
        row[cols_] = rhs[i];
        basis_[i] = next_art++;
      } else {
        // b <= 0: negate so the surplus column enters the basis with value -b >= 0.
        for (std::size_t j = 0; j < n_; ++j) row[j] = -rows[i][j];
        row[n_ + i] = 1;
        row[cols_] = -rhs[i];
        basis_[i] = n_ + i;
      }
    }
    allowed_.assign(cols_, true);
  }

  std::size_t columns() const { return cols_; }
  std::size_t first_artificial() const { return first_artificial_; }
  bool has_artificials() const { return cols_ > first_artificial_; }

  // Minimises cost·(all columns). Returns the unbounded entering column, if any.
  std::optional<std::size_t> minimise(const std::vector<Rational>& cost) {
    reduced_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost[j];
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (cells_[i][j] != 0) reduced_[j] -= cb * cells_[i][j];
    }
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed_[j] && reduced_[j] < 0) {
          entering = j;
          break;
        }
      if (!entering) return std::nullopt;
      const std::size_t e = *entering;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < cells_.size(); ++i) {
        const Rational& a = cells_[i][e];
        if (a <= 0) continue;
        Rational ratio = cells_[i][cols_] / a;
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return e;
      pivot(*leaving, e);
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cost[basis_[i]] != 0) v += cost[basis_[i]] * cells_[i][cols_];
    return v;
  }

  // After a successful phase 1, pivots zero-valued artificials out of the
  // basis (dropping rows that turn out to be redundant) and bars every
  // artificial column from re-entering.
  void expel_artificials() {
    for (std::size_t i = 0; i < cells_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial_; ++j)
        if (cells_[i][j] != 0) {
          col = j;
          break;
        }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t j = first_artificial_; j < cols_; ++j) allowed_[j] = false;
  }

  std::vector<Rational> structural_point() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = cells_[i][cols_];
    return x;
  }

  // Edge direction obtained by raising column e with no blocking row.
  std::vector<Rational> structural_ray(std::size_t e) const {
    std::vector<Rational> r(n_);
    if (e < n_) r[e] = 1;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (basis_[i] < n_) r[basis_[i]] = -cells_[i][e];
    return r;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    auto& prow = cells_[r];
    const Rational p = prow[c];
    for (auto& v : prow)
      if (v != 0) v /= p;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (i == r) continue;
      const Rational f = cells_[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (prow[j] != 0) cells_[i][j] -= f * prow[j];
    }
    if (!reduced_.empty()) {
      const Rational f = reduced_[c];
      if (f != 0)
        for (std::size_t j = 0; j <= cols_; ++j)
          if (prow[j] != 0) reduced_[j] -= f * prow[j];
    }
    basis_[r] = c;
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<Rational>> cells_;  // last column holds the rhs
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<Rational> reduced_;  // last entry holds -objective
};

}  // namespace detail

inline LpOutcome solve(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.variables;

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  auto push = [&](const Constraint& c, bool negate) {
    std::vector<Rational> row(c.coefficients);
    Rational b = c.rhs;
    if (negate) {
      for (auto& v : row) v = -v;
      b = -b;
    }
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  };
  for (const auto& c : lp.constraints) {
    switch (c.relation) {
      case Relation::GreaterEqual: push(c, false); break;
      case Relation::LessEqual: push(c, true); break;
      case Relation::Equal:
        push(c, false);
        push(c, true);
        break;
    }
  }

  detail::Tableau tab(n, std::move(rows), std::move(rhs));

  if (tab.has_artificials()) {
    std::vector<Rational> phase1(tab.columns());
    for (std::size_t j = tab.first_artificial(); j < tab.columns(); ++j) phase1[j] = 1;
    tab.minimise(phase1);  // bounded below by 0
    if (tab.objective(phase1) > 0) return Infeasible{};
    tab.expel_artificials();
  }

  std::vector<Rational> cost(tab.columns());
  for (std::size_t j = 0; j < lp.objective.size(); ++j)
    cost[j] = lp.sense == Sense::Minimize ? lp.objective[j] : Rational(-lp.objective[j]);

  auto unbounded_column = tab.minimise(cost);
  std::vector<Rational> point = tab.structural_point();
  if (!is_feasible_point(lp, point)) throw std::logic_error("simplex produced an infeasible point");

  if (unbounded_column) {
    std::vector<Rational> ray = tab.structural_ray(*unbounded_column);
    if (!is_improving_ray(lp, ray)) throw std::logic_error("simplex produced an invalid unbounded ray");
    return Unbounded{std::move(point), std::move(ray)};
  }
  Rational value = lp.objective_value(point);
  return Optimal{std::move(point), std::move(value)};
}

/// Any point satisfying the constraints with x >= 0, or nullopt.
inline std::optional<std::vector<Rational>> feasible(std::vector<Constraint> constraints, std::size_t variables) {
  LinearProgram lp;
  lp.variables = variables;
  lp.constraints = std::move(constraints);
  auto outcome = solve(lp);
  if (auto* opt = std::get_if<Optimal>(&outcome)) return std::move(opt->point);
  return std::nullopt;
}

}  // namespace pentail::lp
