#pragma once

#include <cstddef>
#include <vector>

namespace bhp::lp {

enum class Status { kOptimal, kUnbounded, kIterationLimit, kNumericalFailure };

const char* to_string(Status s);

/// maximize  c^T x
/// subject to  A x <= b   (b >= 0, so x = 0 is feasible)
///             x_j >= 0 unless free[j]
///
/// Dense, row-major A. Sized for the sign-representation LPs: a few hundred
/// rows and columns.
struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;          // rows * cols
  std::vector<double> b;          // rows
  std::vector<double> c;          // cols
  std::vector<bool> free;         // cols

  Problem(std::size_t rows_, std::size_t cols_)
      : rows(rows_), cols(cols_), a(rows_ * cols_, 0.0), b(rows_, 0.0), c(cols_, 0.0), free(cols_, false) {}

  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
};

struct Result {
  Status status = Status::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

struct Options {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-10;
  double feasibility_tolerance = 1e-10;
  /// Scale of the random right-hand-side perturbation used against
  /// degenerate stalls. 0 disables it.
  double perturbation = 1e-6;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
  /// 0 means 50 * (rows + cols).
  std::size_t max_iterations = 0;
};

/// Primal simplex on a compact (dictionary) tableau starting from the slack
/// basis. Free columns are pivoted into the basis first and never leave it;
/// the remaining nonnegative problem uses Dantzig pricing on a randomly
/// perturbed right-hand side, then dual simplex pivots restore feasibility
/// for the exact one. Bland's rule is the fallback on degenerate stalls.
Result solve(const Problem& problem, const Options& options = {});

}  // namespace bhp::lp
