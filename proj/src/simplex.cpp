#include "persist/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "persist/types.hpp"

namespace persist {
namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class DenseSimplex {
 public:
  DenseSimplex(const LinearProgram& program, const SimplexOptions& options)
      : options_(options),
        rows_(program.constraints.rows()),
        cols_(program.constraints.cols()),
        tableau_(Tableau::Zero(rows_ + 1, cols_ + rows_ + 1)),
        basis_(static_cast<std::size_t>(rows_)),
        eligible_(static_cast<std::size_t>(cols_ + rows_), 1) {
    // Layout: [ structural | artificial | rhs ], objective row last.
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = program.rhs[i] < 0.0 ? -1.0 : 1.0;
      tableau_.row(i).head(cols_) = sign * program.constraints.row(i);
      tableau_(i, cols_ + i) = 1.0;
      tableau_(i, rhs_col()) = sign * program.rhs[i];
      basis_[static_cast<std::size_t>(i)] = cols_ + i;
    }
  }

  LpSolution run(const Eigen::VectorXd& cost) {
    LpSolution solution;

    // Phase one: minimise the sum of artificials.
    tableau_.row(rows_).setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      tableau_.row(rows_).head(cols_) -= tableau_.row(i).head(cols_);
      tableau_(rows_, rhs_col()) -= tableau_(i, rhs_col());
    }
    LpStatus status = iterate();
    solution.pivots = pivots_;
    if (status != LpStatus::Optimal) {
      solution.status = status;
      return solution;
    }
    if (-tableau_(rows_, rhs_col()) > options_.feasibility_tolerance) {
      solution.status = LpStatus::Infeasible;
      return solution;
    }
    drive_out_artificials();
    for (Eigen::Index j = cols_; j < cols_ + rows_; ++j) eligible_[static_cast<std::size_t>(j)] = 0;

    // Phase two: price out the basis against the real cost.
    tableau_.row(rows_).setZero();
    tableau_.row(rows_).head(cols_) = cost.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (b >= cols_ || !active_[static_cast<std::size_t>(i)]) continue;
      const double cb = cost[b];
      if (cb != 0.0) tableau_.row(rows_) -= cb * tableau_.row(i);
    }
    status = iterate();
    solution.pivots = pivots_;
    solution.status = status;
    if (status != LpStatus::Optimal) return solution;

    solution.primal = Eigen::VectorXd::Zero(cols_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (active_[static_cast<std::size_t>(i)] && b < cols_) solution.primal[b] = tableau_(i, rhs_col());
    }
    solution.primal = solution.primal.cwiseMax(0.0);
    solution.objective = cost.dot(solution.primal);

    std::vector<char> in_basis(static_cast<std::size_t>(cols_), 0);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (active_[static_cast<std::size_t>(i)] && b < cols_) in_basis[static_cast<std::size_t>(b)] = 1;
    }
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (!in_basis[static_cast<std::size_t>(j)] && std::abs(tableau_(rows_, j)) <= options_.cost_tolerance) {
        solution.alternative_optima = true;
        break;
      }
    }
    return solution;
  }

 private:
  Eigen::Index rhs_col() const { return cols_ + rows_; }

  // Bland's rule: lowest-index improving column, lowest-index basic variable
  // among the minimum-ratio rows.
  LpStatus iterate() {
    for (;;) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < cols_ + rows_; ++j) {
        if (eligible_[static_cast<std::size_t>(j)] && tableau_(rows_, j) < -options_.cost_tolerance) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double a = tableau_(i, entering);
        if (!active_[static_cast<std::size_t>(i)] || a <= options_.pivot_tolerance) continue;
        best_ratio = std::min(best_ratio, std::max(tableau_(i, rhs_col()), 0.0) / a);
      }
      if (!std::isfinite(best_ratio)) return LpStatus::Unbounded;
      Eigen::Index leaving = -1;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double a = tableau_(i, entering);
        if (!active_[static_cast<std::size_t>(i)] || a <= options_.pivot_tolerance) continue;
        const double ratio = std::max(tableau_(i, rhs_col()), 0.0) / a;
        if (ratio > best_ratio + 1e-12 * (1.0 + best_ratio)) continue;
        if (leaving < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)]) leaving = i;
      }
      if (++pivots_ > options_.max_pivots) return LpStatus::PivotLimit;
      pivot(leaving, entering);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index s) {
    tableau_.row(r) /= tableau_(r, s);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double factor = tableau_(i, s);
      if (factor != 0.0) tableau_.row(i) -= factor * tableau_.row(r);
      tableau_(i, s) = 0.0;
    }
    tableau_(r, s) = 1.0;
    basis_[static_cast<std::size_t>(r)] = s;
  }

  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < cols_) continue;
      Eigen::Index column = -1;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (std::abs(tableau_(i, j)) > options_.pivot_tolerance) {
          column = j;
          break;
        }
      }
      if (column >= 0) {
        pivot(i, column);
      } else {
        active_[static_cast<std::size_t>(i)] = 0;  // redundant row
      }
    }
  }

  SimplexOptions options_;
  Eigen::Index rows_;
  Eigen::Index cols_;
  Tableau tableau_;
  std::vector<Eigen::Index> basis_;
  std::vector<char> eligible_;
  std::vector<char> active_ = std::vector<char>(static_cast<std::size_t>(rows_), 1);
  long pivots_ = 0;
};

}  // namespace

LpSolution solve_simplex(const LinearProgram& program, const SimplexOptions& options) {
  if (program.rhs.size() != program.constraints.rows() || program.cost.size() != program.constraints.cols()) {
    throw SolverError("linear program dimensions do not agree");
  }
  DenseSimplex simplex(program, options);
  return simplex.run(program.cost);
}

}  // namespace persist
