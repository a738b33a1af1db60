#include "bhp/boolean_function.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "bhp/error.hpp"
#include "bhp/simplex.hpp"

namespace bhp {

void BooleanFunction::check_arity(int t) {
  if (t < 1 || t > kMaxArity) {
    throw InvalidArgument("arity t=" + std::to_string(t) + " outside [1, " + std::to_string(kMaxArity) + "]");
  }
}

BooleanFunction::BooleanFunction(int t, std::vector<Pm> table) : t_(t), table_(std::move(table)) {
  check_arity(t);
  if (table_.size() != (std::size_t{1} << t)) {
    throw InvalidArgument("truth table has " + std::to_string(table_.size()) + " entries, expected 2^" +
                          std::to_string(t));
  }
  for (Pm v : table_) {
    if (!is_pm(v)) throw InvalidArgument("truth table entries must be +1 or -1");
  }
}

Pm BooleanFunction::evaluate(std::span<const Pm> x) const {
  if (x.size() != static_cast<std::size_t>(t_)) {
    throw InvalidArgument("evaluate: point has " + std::to_string(x.size()) + " coordinates, function arity is " +
                          std::to_string(t_));
  }
  if (!std::all_of(x.begin(), x.end(), is_pm)) throw InvalidArgument("evaluate: coordinates must be +-1");
  return table_[row_of(x)];
}

bool BooleanFunction::is_constant() const {
  return std::all_of(table_.begin(), table_.end(), [&](Pm v) { return v == table_.front(); });
}

BooleanFunction parity(int t) {
  return BooleanFunction::from_rows(t, [](std::uint32_t r) { return static_cast<Pm>(character(~0U, r)); });
}

BooleanFunction and_function(int t) {
  const std::uint32_t all = (std::uint32_t{1} << t) - 1;
  return BooleanFunction::from_rows(t, [all](std::uint32_t r) { return r == all ? Pm{-1} : Pm{1}; });
}

BooleanFunction or_function(int t) {
  return BooleanFunction::from_rows(t, [](std::uint32_t r) { return r != 0 ? Pm{-1} : Pm{1}; });
}

BooleanFunction majority(int t) {
  return BooleanFunction::from_rows(t, [t](std::uint32_t r) { return 2 * hamming_weight(r) > t ? Pm{-1} : Pm{1}; });
}

BooleanFunction nae(int t, NaeConvention convention) {
  const Pm on_equal = convention == NaeConvention::kMinusOnAllEqual ? Pm{-1} : Pm{1};
  return BooleanFunction::from_rows(t, [t, on_equal](std::uint32_t r) {
    const int w = hamming_weight(r);
    return (w == 0 || w == t) ? on_equal : static_cast<Pm>(-on_equal);
  });
}

BooleanFunction dictator(int t, int index) {
  if (index < 1 || index > t) throw InvalidArgument("dictator index out of range");
  return BooleanFunction::from_rows(t, [index](std::uint32_t r) { return (r >> (index - 1)) & 1U ? Pm{-1} : Pm{1}; });
}

BooleanFunction constant(int t, Pm value) {
  if (!is_pm(value)) throw InvalidArgument("constant value must be +-1");
  return BooleanFunction::from_rows(t, [value](std::uint32_t) { return value; });
}

// ---------------------------------------------------------------------------

void walsh_hadamard(std::span<double> data) {
  const std::size_t n = data.size();
  if (!std::has_single_bit(n)) throw InvalidArgument("walsh_hadamard: length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = data[j];
        const double b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

FourierSpectrum fourier_transform(const BooleanFunction& f) {
  FourierSpectrum out{f.arity(), std::vector<double>(f.table().begin(), f.table().end())};
  walsh_hadamard(out.coeffs);
  const double scale = std::ldexp(1.0, -f.arity());
  for (double& c : out.coeffs) c *= scale;
  return out;
}

std::vector<double> inverse_fourier(const FourierSpectrum& spectrum) {
  std::vector<double> values = spectrum.coeffs;
  walsh_hadamard(values);
  return values;
}

int pure_high_degree(const FourierSpectrum& spectrum) {
  int best = spectrum.t + 1;
  for (std::uint32_t s = 0; s < spectrum.coeffs.size(); ++s) {
    if (std::abs(spectrum.coeffs[s]) > kFourierZero) best = std::min(best, std::popcount(s));
  }
  // All-zero spectra do not come from +-1 functions; a constant's phdeg is 0.
  return best == spectrum.t + 1 ? 0 : best;
}

double fourier_l1(const FourierSpectrum& spectrum) {
  double sum = 0.0;
  for (double c : spectrum.coeffs) sum += std::abs(c);
  return sum;
}

double fourier_weight(const FourierSpectrum& spectrum) {
  double sum = 0.0;
  for (double c : spectrum.coeffs) sum += c * c;
  return sum;
}

// ---------------------------------------------------------------------------

SignPolynomial SignPolynomial::certify(const BooleanFunction& f, std::vector<double> coeffs) {
  const int t = f.arity();
  if (coeffs.size() != f.size()) throw InvalidArgument("SignPolynomial: coefficient count mismatch");

  std::vector<double> values = coeffs;
  walsh_hadamard(values);
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) throw LpFailure("certification failed: zero polynomial");
  if (max_abs > 1.0) {
    for (double& c : coeffs) c /= max_abs;
    for (double& v : values) v /= max_abs;
  }

  double bias = 1.0;
  for (std::uint32_t r = 0; r < values.size(); ++r) {
    const double margin = f.at_row(r) * values[r];
    if (!(margin > 0.0)) {
      throw LpFailure("certification failed: sign mismatch at row " + std::to_string(r));
    }
    bias = std::min(bias, margin);
  }

  int degree = 0;
  for (std::uint32_t s = 0; s < coeffs.size(); ++s) {
    if (coeffs[s] != 0.0) degree = std::max(degree, std::popcount(s));
  }
  return SignPolynomial(t, std::move(coeffs), degree, bias);
}

double SignPolynomial::evaluate_row(std::uint32_t row) const {
  double sum = 0.0;
  for (std::uint32_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s] != 0.0) sum += coeffs_[s] * character(s, row);
  }
  return sum;
}

std::vector<double> SignPolynomial::values() const {
  std::vector<double> values = coeffs_;
  walsh_hadamard(values);
  return values;
}

SignPolynomial best_sign_polynomial(const BooleanFunction& f, int d) {
  const int t = f.arity();
  if (d < 0 || d > t) throw InvalidArgument("degree must lie in [0, t]");

  std::vector<std::uint32_t> monomials;
  for (std::uint32_t s = 0; s < f.size(); ++s) {
    if (std::popcount(s) <= d) monomials.push_back(s);
  }
  const std::size_t points = f.size();
  const std::size_t beta = monomials.size();

  // Row 2r:   beta - f(x) p(x) <= 0
  // Row 2r+1: f(x) p(x) <= 1        (the other side of |p| <= 1 is implied)
  lp::Problem problem(2 * points, monomials.size() + 1);
  for (std::uint32_t r = 0; r < points; ++r) {
    const double fx = f.at_row(r);
    for (std::size_t k = 0; k < monomials.size(); ++k) {
      const double v = fx * character(monomials[k], r);
      problem.at(2 * r, k) = -v;
      problem.at(2 * r + 1, k) = v;
    }
    problem.at(2 * r, beta) = 1.0;
    problem.b[2 * r + 1] = 1.0;
  }
  for (std::size_t k = 0; k < monomials.size(); ++k) problem.free[k] = true;
  problem.c[beta] = 1.0;

  const lp::Result result = lp::solve(problem);
  if (result.status != lp::Status::kOptimal) {
    throw LpFailure(std::string("sign-representation LP: ") + lp::to_string(result.status));
  }
  if (result.objective < kFeasibilityMargin) {
    throw LpInfeasible("no sign-representing polynomial of degree <= " + std::to_string(d));
  }

  std::vector<double> coeffs(points, 0.0);
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    const double c = result.x[k];
    coeffs[monomials[k]] = std::abs(c) <= kFourierZero ? 0.0 : c;
  }
  return SignPolynomial::certify(f, std::move(coeffs));
}

SignDegree sign_degree(const BooleanFunction& f) {
  for (int d = 0; d <= f.arity(); ++d) {
    try {
      return {d, best_sign_polynomial(f, d)};
    } catch (const LpInfeasible&) {
    }
  }
  // f itself is a degree-t representation, so this means the solver misbehaved.
  throw LpFailure("sign-degree search exhausted all degrees");
}

// ---------------------------------------------------------------------------

void SymmetricSpec::validate() const {
  BooleanFunction::check_arity(t);
  if (!is_pm(leading_sign)) throw InvalidArgument("leading_sign must be +-1");
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    const int theta = thresholds[k];
    if (theta < 0 || theta >= t) {
      throw InvalidArgument("threshold " + std::to_string(theta) + " outside [0, t)");
    }
    if (k > 0 && theta <= thresholds[k - 1]) throw InvalidArgument("thresholds must be strictly increasing");
  }
}

Pm SymmetricSpec::value_at_weight(int weight) const {
  const auto flips = std::count_if(thresholds.begin(), thresholds.end(), [weight](int th) { return th < weight; });
  return flips % 2 ? static_cast<Pm>(-leading_sign) : leading_sign;
}

BooleanFunction make_symmetric(const SymmetricSpec& spec) {
  spec.validate();
  return BooleanFunction::from_rows(spec.t, [&](std::uint32_t r) { return spec.value_at_weight(hamming_weight(r)); });
}

int sign_changes(const SymmetricSpec& spec) {
  spec.validate();
  return spec.s();
}

std::optional<SymmetricSpec> symmetric_spec_of(const BooleanFunction& f) {
  const int t = f.arity();
  std::vector<Pm> profile(static_cast<std::size_t>(t) + 1, 0);
  for (std::uint32_t r = 0; r < f.size(); ++r) {
    Pm& slot = profile[hamming_weight(r)];
    if (slot == 0) {
      slot = f.at_row(r);
    } else if (slot != f.at_row(r)) {
      return std::nullopt;
    }
  }
  SymmetricSpec spec{t, {}, profile[0]};
  for (int w = 1; w <= t; ++w) {
    if (profile[w] != profile[w - 1]) spec.thresholds.push_back(w - 1);
  }
  return spec;
}

std::vector<SymmetricSpec> all_symmetric_specs(int t, Pm leading_sign) {
  BooleanFunction::check_arity(t);
  std::vector<SymmetricSpec> specs;
  specs.reserve(std::size_t{1} << t);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << t); ++mask) {
    SymmetricSpec spec{t, {}, leading_sign};
    for (int k = 0; k < t; ++k) {
      if ((mask >> k) & 1U) spec.thresholds.push_back(k);
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace bhp
