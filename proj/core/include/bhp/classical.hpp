#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bhp/boolean_function.hpp"
#include "bhp/instances.hpp"
#include "bhp/rng.hpp"

namespace bhp {

/// Alice's message: positions (0-based) and the bits of x found there.
struct SampleMessage {
  std::vector<int> indices;
  PmVector bits;
};

struct ProtocolOutcome {
  Pm guess = 1;
  /// Bob's decision statistic X; 0 means the guess came from a coin.
  double statistic = 0.0;
  /// Classical bits, or qubits for the quantum protocol.
  std::int64_t message_bits = 0;
  int samples = 0;
};

/// Chernoff sample count ceil((t / (alpha beta))^2 ln(1/epsilon) / 2).
/// Requires 0 < epsilon < 1/2, beta > 0, alpha in (0, 1].
int required_samples(int t, double alpha, double beta, double epsilon);

/// m indices drawn uniformly with replacement.
SampleMessage alice_sample(std::span<const Pm> x, int m, Rng& rng);

/// X = sum_i (alpha_k(i) x_i + alpha_0 / t) w_j(i) over samples with
/// sigma(i) <= alpha n; guess = sgn(X), ties broken by `tie_break`.
/// Throws InvalidArgument if p has degree above 1.
ProtocolOutcome bob_decide(const SampleMessage& msg, const Permutation& sigma, std::span<const Pm> w,
                           const SignPolynomial& p, const PartitionParams& params, Rng& tie_break);

/// Bits per classical sample: an index plus the bit value.
std::int64_t bits_per_sample(int n);

/// The sdeg <= 1 protocol with its polynomial and sample count fixed for a
/// given (f, params, epsilon), so that many trials share one LP solve.
class ClassicalProtocol {
 public:
  /// Throws GuardRejected when sdeg(f) > 1.
  static ClassicalProtocol prepare(const BooleanFunction& f, const PartitionParams& params, double epsilon);

  [[nodiscard]] const SignPolynomial& polynomial() const { return p_; }
  [[nodiscard]] int samples() const { return m_; }
  [[nodiscard]] double epsilon() const { return epsilon_; }
  /// Draws Alice's samples from `rng` and the tie-break coin from a child stream.
  [[nodiscard]] ProtocolOutcome run(const PartitionInstance& instance, Rng& rng) const;

 private:
  ClassicalProtocol(SignPolynomial p, int m, double epsilon) : p_(std::move(p)), m_(m), epsilon_(epsilon) {}

  SignPolynomial p_;
  int m_;
  double epsilon_;
};

ProtocolOutcome run_classical(const BooleanFunction& f, const PartitionInstance& instance, double epsilon,
                              Rng& rng);

/// Protocol for functions with a nonzero level-1 coefficient under uniform
/// inputs: Alice sends `sample_count` distinct random positions, Bob answers
/// from the first one landing on an active block at a coordinate k with
/// f^({k}) != 0. Throws GuardRejected when phdeg(f) >= 2.
ProtocolOutcome run_uniform_phd1(const BooleanFunction& f, const PartitionInstance& instance, int sample_count,
                                 Rng& rng);

/// Precomputed form of run_uniform_phd1 for repeated trials.
class UniformProtocol {
 public:
  static UniformProtocol prepare(const BooleanFunction& f, int sample_count);

  [[nodiscard]] ProtocolOutcome run(const PartitionInstance& instance, Rng& rng) const;
  [[nodiscard]] std::span<const double> level_one() const { return level_one_; }

 private:
  UniformProtocol(std::vector<double> level_one, int sample_count)
      : level_one_(std::move(level_one)), sample_count_(sample_count) {}

  std::vector<double> level_one_;  // f^({k}) for k = 1..t
  int sample_count_;
};

}  // namespace bhp
