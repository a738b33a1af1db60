#include "bhp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bhp/error.hpp"

namespace bhp::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration-limit";
    case Status::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

// Variables 0..cols-1 are structural, cols..cols+rows-1 are slacks.
class Tableau {
 public:
  Tableau(const Problem& p, const Options& opt)
      : m_(p.rows), n_(p.cols), opt_(opt), d_(p.a), rhs_(p.b), r_(p.c),
        pert_(m_, 0.0), basic_(m_), nonbasic_(n_), is_free_(n_ + m_, false) {
    for (std::size_t i = 0; i < m_; ++i) basic_[i] = n_ + i;
    if (opt_.perturbation > 0.0) {
      std::minstd_rand gen(12345);
      std::uniform_real_distribution<double> dist(0.5, 1.5);
      for (double& e : pert_) e = opt_.perturbation * dist(gen);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      is_free_[j] = p.free[j];
    }
  }

  Result run() {
    Result result;

    // Bring every free column into the basis; once basic, free rows are
    // excluded from ratio tests so they never leave.
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_free_[nonbasic_[j]]) continue;
      std::size_t row = ratio_test(j, +1.0, false);
      if (row == kNone) row = ratio_test(j, -1.0, false);
      // A column that vanishes on every constrained row stays nonbasic; the
      // main loop reports it as unbounded if it can still improve.
      if (row == kNone) continue;
      pivot(row, j);
      ++result.iterations;
    }

    if (!primal(result)) return result;
    // Drop the perturbation, repair primal feasibility with dual pivots,
    // then finish any remaining primal pivots on the exact right-hand side.
    std::fill(pert_.begin(), pert_.end(), 0.0);
    if (!dual(result)) return result;
    if (!primal(result)) return result;

    result.status = Status::kOptimal;
    result.objective = z0_;
    result.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] < n_) result.x[basic_[i]] = rhs_[i];
    }
    return result;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  double& d(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

  double rhs(std::size_t i) const { return rhs_[i] + pert_[i]; }

  std::size_t limit() const { return opt_.max_iterations ? opt_.max_iterations : 50 * (m_ + n_); }

  bool primal(Result& result) {
    std::size_t degenerate_run = 0;
    while (true) {
      if (result.iterations >= limit()) {
        result.status = Status::kIterationLimit;
        return false;
      }
      const bool bland = degenerate_run >= opt_.degenerate_switch;
      double dir = 1.0;
      const std::size_t col = choose_entering(bland, dir);
      if (col == kNone) return true;
      const std::size_t row = ratio_test(col, dir, bland);
      if (row == kNone) {
        result.status = Status::kUnbounded;
        return false;
      }
      const bool degenerate = std::abs(rhs(row)) <= 1e-12;
      degenerate_run = degenerate ? degenerate_run + 1 : 0;
      pivot(row, col);
      ++result.iterations;
      if (!std::isfinite(z0_)) {
        result.status = Status::kNumericalFailure;
        return false;
      }
    }
  }

  // Dual simplex on a dual-feasible tableau until every constrained basic
  // variable is nonnegative.
  bool dual(Result& result) {
    while (true) {
      if (result.iterations >= limit()) {
        result.status = Status::kIterationLimit;
        return false;
      }
      std::size_t row = kNone;
      double worst = -opt_.feasibility_tolerance;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!is_free_[basic_[i]] && rhs_[i] < worst) {
          worst = rhs_[i];
          row = i;
        }
      }
      if (row == kNone) {
        for (std::size_t i = 0; i < m_; ++i) {
          if (!is_free_[basic_[i]]) rhs_[i] = std::max(rhs_[i], 0.0);
        }
        return true;
      }
      std::size_t col = kNone;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        const double a = d(row, j);
        double pivot_mag = 0.0;
        if (is_free_[nonbasic_[j]]) {
          pivot_mag = std::abs(a);
        } else if (a < 0.0) {
          pivot_mag = -a;
        }
        if (pivot_mag <= opt_.pivot_tolerance) continue;
        const double ratio = std::abs(std::min(r_[j], 0.0)) / pivot_mag;
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && pivot_mag > best_pivot)) {
          best_ratio = ratio;
          best_pivot = pivot_mag;
          col = j;
        }
      }
      if (col == kNone) {
        result.status = Status::kNumericalFailure;
        return false;
      }
      pivot(row, col);
      ++result.iterations;
    }
  }

  std::size_t choose_entering(bool bland, double& dir) {
    std::size_t best = kNone;
    double best_score = opt_.optimality_tolerance;
    std::size_t best_var = kNone;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t var = nonbasic_[j];
      double score = r_[j];
      double this_dir = 1.0;
      if (is_free_[var] && score < 0.0) {
        score = -score;
        this_dir = -1.0;
      }
      if (score <= opt_.optimality_tolerance) continue;
      if (bland) {
        if (var < best_var) {
          best_var = var;
          best = j;
          dir = this_dir;
        }
      } else if (score > best_score) {
        best_score = score;
        best = j;
        dir = this_dir;
      }
    }
    return best;
  }

  std::size_t ratio_test(std::size_t j, double dir, bool bland) {
    std::size_t best = kNone;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (is_free_[basic_[i]]) continue;
      const double a = d(i, j) * dir;
      if (a <= opt_.pivot_tolerance) continue;
      const double ratio = std::max(rhs(i), 0.0) / a;
      const double slack = 1e-12 * (std::isinf(best_ratio) ? 1.0 : std::max(1.0, best_ratio));
      bool take = false;
      if (ratio < best_ratio - slack) {
        take = true;
      } else if (ratio <= best_ratio + slack) {
        take = bland ? basic_[i] < basic_[best] : a > best_pivot;
      }
      if (take) {
        best = i;
        best_ratio = std::min(ratio, best_ratio);
        best_pivot = a;
      }
    }
    return best;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = d(row, col);
    const double inv = 1.0 / p;
    double* prow = &d_[row * n_];
    for (std::size_t k = 0; k < n_; ++k) prow[k] *= inv;
    prow[col] = inv;
    rhs_[row] *= inv;
    pert_[row] *= inv;

    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      double* irow = &d_[i * n_];
      const double factor = irow[col];
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k) irow[k] -= factor * prow[k];
      irow[col] = -factor * inv;
      rhs_[i] -= factor * rhs_[row];
      pert_[i] -= factor * pert_[row];
    }

    const double rf = r_[col];
    if (rf != 0.0) {
      for (std::size_t k = 0; k < n_; ++k) r_[k] -= rf * prow[k];
      r_[col] = -rf * inv;
      z0_ += rf * rhs_[row];
    }

    std::swap(basic_[row], nonbasic_[col]);
  }

  std::size_t m_;
  std::size_t n_;
  Options opt_;
  std::vector<double> d_;
  std::vector<double> rhs_;
  std::vector<double> r_;
  std::vector<double> pert_;
  double z0_ = 0.0;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::vector<bool> is_free_;
};

}  // namespace

Result solve(const Problem& problem, const Options& options) {
  if (problem.a.size() != problem.rows * problem.cols || problem.b.size() != problem.rows ||
      problem.c.size() != problem.cols || problem.free.size() != problem.cols) {
    throw InvalidArgument("lp::solve: inconsistent problem dimensions");
  }
  for (double bi : problem.b) {
    if (!(bi >= 0.0)) throw InvalidArgument("lp::solve: right-hand side must be nonnegative");
  }
  return Tableau(problem, options).run();
}

}  // namespace bhp::lp
