#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bhp/hypercube.hpp"

namespace bhp {

inline constexpr int kMaxArity = 16;

/// Total function {-1,1}^t -> {-1,1} stored as a truth table in row
/// encoding (see hypercube.hpp).
class BooleanFunction {
 public:
  BooleanFunction(int t, std::vector<Pm> table);

  template <class Fn>
  static BooleanFunction from_rows(int t, Fn&& fn) {
    check_arity(t);
    std::vector<Pm> table(std::size_t{1} << t);
    for (std::uint32_t r = 0; r < table.size(); ++r) table[r] = fn(r);
    return BooleanFunction(t, std::move(table));
  }

  [[nodiscard]] int arity() const { return t_; }
  [[nodiscard]] std::size_t size() const { return table_.size(); }
  [[nodiscard]] std::span<const Pm> table() const { return table_; }
  [[nodiscard]] Pm at_row(std::uint32_t row) const { return table_[row]; }
  /// Throws InvalidArgument on arity mismatch or non-+-1 coordinates.
  [[nodiscard]] Pm evaluate(std::span<const Pm> x) const;
  [[nodiscard]] bool is_constant() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

  static void check_arity(int t);

 private:
  int t_;
  std::vector<Pm> table_;
};

enum class NaeConvention {
  kMinusOnAllEqual,  // NAE(x) = -1 iff |x| in {0, t}
  kPlusOnAllEqual,   // NAE(x) = +1 iff |x| in {0, t}
};

BooleanFunction parity(int t);
/// -1 ("true") only on the all -1 input.
BooleanFunction and_function(int t);
/// -1 unless the input is all +1.
BooleanFunction or_function(int t);
/// -1 when a strict majority of coordinates is -1; ties go to +1.
BooleanFunction majority(int t);
BooleanFunction nae(int t, NaeConvention convention = NaeConvention::kMinusOnAllEqual);
/// f(x) = x_index, index is 1-based.
BooleanFunction dictator(int t, int index = 1);
BooleanFunction constant(int t, Pm value);

// ---------------------------------------------------------------------------
// Fourier analysis

/// Coefficients f^(S) indexed by subset bitmask (bit i-1 <-> variable i).
struct FourierSpectrum {
  int t = 0;
  std::vector<double> coeffs;

  [[nodiscard]] double operator[](std::uint32_t mask) const { return coeffs[mask]; }
};

/// Unnormalised in-place Walsh-Hadamard transform; data.size() must be a power of two.
void walsh_hadamard(std::span<double> data);

/// f^(S) = 2^-t sum_x f(x) chi_S(x). Exact for +-1 tables with t <= 16.
FourierSpectrum fourier_transform(const BooleanFunction& f);
/// Values sum_S f^(S) chi_S(x) at every row.
std::vector<double> inverse_fourier(const FourierSpectrum& spectrum);

/// Coefficients with magnitude at or below this are treated as zero.
inline constexpr double kFourierZero = 1e-12;

/// Smallest |S| with a nonzero coefficient; 0 for constant functions.
int pure_high_degree(const FourierSpectrum& spectrum);
double fourier_l1(const FourierSpectrum& spectrum);
/// sum_S f^(S)^2.
double fourier_weight(const FourierSpectrum& spectrum);

// ---------------------------------------------------------------------------
// Sign representation

/// Normalised multilinear polynomial that sign-represents a function, with
/// its certified bias. Only built through certify(), which evaluates the
/// polynomial on the whole cube.
class SignPolynomial {
 public:
  /// Rescales so that max |p(x)| = 1 if it exceeds 1, checks f(x) p(x) > 0
  /// at every point and records bias = min_x f(x) p(x). Throws LpFailure if
  /// the sign condition fails anywhere.
  static SignPolynomial certify(const BooleanFunction& f, std::vector<double> coeffs);

  [[nodiscard]] int arity() const { return t_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] double bias() const { return bias_; }
  [[nodiscard]] double coefficient(std::uint32_t mask) const { return coeffs_[mask]; }
  [[nodiscard]] std::span<const double> coefficients() const { return coeffs_; }
  [[nodiscard]] double evaluate_row(std::uint32_t row) const;
  [[nodiscard]] double evaluate(std::span<const Pm> x) const { return evaluate_row(row_of(x)); }
  /// p at every row.
  [[nodiscard]] std::vector<double> values() const;

 private:
  SignPolynomial(int t, std::vector<double> coeffs, int degree, double bias)
      : t_(t), coeffs_(std::move(coeffs)), degree_(degree), bias_(bias) {}

  int t_;
  std::vector<double> coeffs_;
  int degree_;
  double bias_;
};

struct SignDegree {
  int degree;
  SignPolynomial witness;
};

/// LP bias below this counts as "no sign representation at this degree".
inline constexpr double kFeasibilityMargin = 1e-8;

/// Maximises beta subject to f(x) p(x) >= beta and |p(x)| <= 1 over
/// multilinear p of degree <= d. Throws LpInfeasible when the optimum is
/// below kFeasibilityMargin, LpFailure when the solver or certification fails.
SignPolynomial best_sign_polynomial(const BooleanFunction& f, int d);

/// Smallest d admitting a sign representation, trying d = 0, 1, 2, ...
SignDegree sign_degree(const BooleanFunction& f);

// ---------------------------------------------------------------------------
// Symmetric functions

/// Alternating-interval description of a symmetric function:
/// f = leading_sign on 0 <= |x| <= theta_1, flips sign after each theta_k.
/// `thresholds` holds theta_1 < ... < theta_s, all < t (theta_{s+1} = t is implicit).
struct SymmetricSpec {
  int t = 0;
  std::vector<int> thresholds;
  Pm leading_sign = 1;

  /// Throws InvalidArgument when malformed.
  void validate() const;
  [[nodiscard]] Pm value_at_weight(int weight) const;
  [[nodiscard]] int s() const { return static_cast<int>(thresholds.size()); }

  friend bool operator==(const SymmetricSpec&, const SymmetricSpec&) = default;
};

BooleanFunction make_symmetric(const SymmetricSpec& spec);
/// s, which equals the sign-degree of the symmetric function.
int sign_changes(const SymmetricSpec& spec);
/// Thresholds and leading sign of f if f depends only on |x|.
std::optional<SymmetricSpec> symmetric_spec_of(const BooleanFunction& f);
/// Every threshold configuration for arity t with the given leading sign
/// (2^t specs, including the constant one).
std::vector<SymmetricSpec> all_symmetric_specs(int t, Pm leading_sign);

}  // namespace bhp
