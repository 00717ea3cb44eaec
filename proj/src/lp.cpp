#include "tlo/lp.hpp"

#include "tlo/kernels.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace tlo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nonnegative working variable y: x[var] = offset[var] + sign * y, y <= cap.
struct Column {
  Eigen::Index var;
  double sign;
  double cap;
};

// Row-major tableau; the last row holds reduced costs and -z in its rhs slot.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * (cols_ + 1), cols_ + 1}; }
  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  std::span<double> cost_row() { return row(rows_); }
  double& cost(std::size_t j) { return at(rows_, j); }

  void pivot(std::size_t p, std::size_t e) {
    auto prow = row(p);
    kernels::row_scale(prow, 1.0 / at(p, e));
    at(p, e) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == p) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      kernels::row_axpy(row(i), prow, f);
      at(i, e) = 0.0;
    }
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

class Simplex {
public:
  Simplex(Tableau& t, std::vector<std::size_t>& basis, const LpOptions& opt, int& iterations)
      : t_(t), basis_(basis), opt_(opt), iterations_(iterations) {}

  // Bland's rule: lowest-index improving column enters, ratio ties leave by
  // lowest basic index.
  PhaseOutcome run(std::size_t entering_limit) {
    while (true) {
      std::size_t e = entering_limit;
      for (std::size_t j = 0; j < entering_limit; ++j) {
        if (t_.cost(j) > opt_.optimality_tol) {
          e = j;
          break;
        }
      }
      if (e == entering_limit) return PhaseOutcome::Optimal;

      std::size_t leave = t_.rows();
      double best = kInf;
      for (std::size_t i = 0; i < t_.rows(); ++i) {
        const double a = t_.at(i, e);
        if (a <= opt_.pivot_tol) continue;
        const double ratio = std::max(t_.rhs(i), 0.0) / a;
        const double slack = 1e-12 * (1.0 + std::abs(best));
        if (leave == t_.rows() || ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack && basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave == t_.rows()) return PhaseOutcome::Unbounded;
      if (++iterations_ > opt_.max_iterations) return PhaseOutcome::IterationLimit;
      t_.pivot(leave, e);
      basis_[leave] = e;
    }
  }

private:
  Tableau& t_;
  std::vector<std::size_t>& basis_;
  const LpOptions& opt_;
  int& iterations_;
};

} // namespace

void LinearProgram::validate() const {
  const auto n = objective.size();
  if (eq_matrix.cols() != n && eq_matrix.rows() != 0)
    throw std::invalid_argument("equality matrix column count must match objective size");
  if (eq_rhs.size() != eq_matrix.rows()) throw std::invalid_argument("equality rhs size must match matrix rows");
  if (lower.size() != n || upper.size() != n) throw std::invalid_argument("bound vectors must match objective size");
  if (!objective.allFinite() || !eq_matrix.allFinite() || !eq_rhs.allFinite())
    throw std::invalid_argument("linear program coefficients must be finite");
  if (lower.hasNaN() || upper.hasNaN()) throw std::invalid_argument("bounds must not be NaN");
}

LpResult solve_lp_max(const LinearProgram& lp, const LpOptions& opt) {
  lp.validate();
  LpResult result;
  const Eigen::Index n = lp.variables();
  const Eigen::Index m_eq = lp.eq_matrix.rows();

  // Map bounded variables onto nonnegative columns. Variables whose range
  // straddles zero are split so that zero stays the reference point.
  std::vector<Column> columns;
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = lp.lower[j], up = lp.upper[j];
    if (lo > up + opt.feasibility_tol) return result;
    if (lo < 0.0 && up > 0.0) {
      columns.push_back({j, 1.0, up});
      columns.push_back({j, -1.0, -lo});
    } else if (std::isfinite(lo)) {
      offset[j] = lo;
      columns.push_back({j, 1.0, std::max(up - lo, 0.0)});
    } else if (std::isfinite(up)) {
      offset[j] = up;
      columns.push_back({j, -1.0, kInf});
    } else {
      return result; // both bounds at -inf
    }
  }

  const std::size_t ny = columns.size();
  std::vector<std::size_t> capped;
  for (std::size_t k = 0; k < ny; ++k)
    if (std::isfinite(columns[k].cap)) capped.push_back(k);
  const std::size_t mu = capped.size();
  const auto me = static_cast<std::size_t>(m_eq);
  const std::size_t slack0 = ny, art0 = ny + mu, ncols = ny + mu + me;

  Tableau t(me + mu, ncols);
  std::vector<std::size_t> basis(me + mu);

  const Eigen::VectorXd shifted_rhs = lp.eq_rhs - (m_eq > 0 ? Eigen::VectorXd(lp.eq_matrix * offset)
                                                             : Eigen::VectorXd::Zero(0));
  double rhs_scale = 1.0;
  for (std::size_t i = 0; i < me; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t k = 0; k < ny; ++k) t.at(i, k) = lp.eq_matrix(ii, columns[k].var) * columns[k].sign;
    t.rhs(i) = shifted_rhs[ii];
    if (t.rhs(i) < 0.0) kernels::row_scale(t.row(i), -1.0);
    t.at(i, art0 + i) = 1.0;
    basis[i] = art0 + i;
    rhs_scale = std::max(rhs_scale, std::abs(t.rhs(i)));
  }
  for (std::size_t r = 0; r < mu; ++r) {
    t.at(me + r, capped[r]) = 1.0;
    t.at(me + r, slack0 + r) = 1.0;
    t.rhs(me + r) = columns[capped[r]].cap;
    basis[me + r] = slack0 + r;
  }

  Simplex simplex(t, basis, opt, result.iterations);

  // Phase 1: maximize -sum(artificials).
  if (me > 0) {
    for (std::size_t i = 0; i < me; ++i) {
      for (std::size_t j = 0; j < art0; ++j) t.cost(j) += t.at(i, j);
      t.rhs(me + mu) += t.rhs(i);
    }
    if (simplex.run(art0) == PhaseOutcome::IterationLimit)
      throw std::runtime_error("simplex iteration limit reached in phase 1");
    if (t.rhs(me + mu) > opt.feasibility_tol * rhs_scale) return result; // Infeasible

    // Drive remaining zero-level artificials out of the basis; rows where
    // that is impossible are redundant and never chosen again.
    for (std::size_t i = 0; i < me + mu; ++i) {
      if (basis[i] < art0) continue;
      std::size_t best = art0;
      double mag = opt.pivot_tol;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.at(i, j)) > mag) {
          mag = std::abs(t.at(i, j));
          best = j;
        }
      }
      if (best < art0) {
        t.pivot(i, best);
        basis[i] = best;
      }
    }
  }

  // Phase 2 reduced costs: r_j = c_j - c_B . T_j.
  std::vector<double> cost(ncols + 1, 0.0);
  for (std::size_t k = 0; k < ny; ++k) cost[k] = lp.objective[columns[k].var] * columns[k].sign;
  auto crow = t.cost_row();
  for (std::size_t j = 0; j < ncols; ++j) crow[j] = cost[j];
  crow[ncols] = 0.0;
  for (std::size_t i = 0; i < me + mu; ++i) {
    const double cb = cost[basis[i]];
    if (cb != 0.0) kernels::row_axpy(crow, t.row(i), cb);
  }
  for (std::size_t i = 0; i < me + mu; ++i) crow[basis[i]] = 0.0;

  switch (simplex.run(art0)) {
  case PhaseOutcome::Unbounded:
    result.status = LpStatus::Unbounded;
    return result;
  case PhaseOutcome::IterationLimit:
    throw std::runtime_error("simplex iteration limit reached in phase 2");
  case PhaseOutcome::Optimal:
    break;
  }

  std::vector<double> y(ncols, 0.0);
  for (std::size_t i = 0; i < me + mu; ++i) y[basis[i]] = std::max(t.rhs(i), 0.0);
  result.point = offset;
  for (std::size_t k = 0; k < ny; ++k) result.point[columns[k].var] += columns[k].sign * y[k];
  result.value = lp.objective.dot(result.point);
  result.status = LpStatus::Optimal;
  return result;
}

} // namespace tlo
