#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "bhp/boolean_function.hpp"
#include "bhp/classical.hpp"
#include "bhp/instances.hpp"
#include "bhp/rng.hpp"

namespace bhp {

/// Real (t+1)x(t+1) matrix A with x~^T A x~ = p(x) for x~ = (1, x_1, ..., x_t),
/// together with its spectral norm.
class BlockMatrix {
 public:
  /// Symmetric splitting: A_00 = p_0, A_0i = A_i0 = p_i / 2,
  /// A_ij = A_ji = p_ij / 2 for i != j, remaining diagonal 0.
  /// Throws InvalidArgument for degree > 2; the identity is re-checked on every point.
  static BlockMatrix from_polynomial(const SignPolynomial& p);
  /// Any square matrix (used for dilation tests).
  static BlockMatrix from_matrix(Eigen::MatrixXd a);

  [[nodiscard]] int dim() const { return static_cast<int>(a_.rows()); }
  /// Arity t = dim - 1.
  [[nodiscard]] int arity() const { return dim() - 1; }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return a_; }
  [[nodiscard]] double spectral_norm() const { return norm_; }
  /// x~^T A x~.
  [[nodiscard]] double quadratic_form(std::span<const Pm> z) const;

 private:
  BlockMatrix(Eigen::MatrixXd a, double norm) : a_(std::move(a)), norm_(norm) {}

  Eigen::MatrixXd a_;
  double norm_;
};

/// Real orthogonal 2k x 2k matrix whose top-left k x k block is A / ||A||.
struct Dilation {
  Eigen::MatrixXd u;
};

/// From the SVD A/||A|| = W S V^T: U = [[W S V^T, W sqrt(I-S^2)], [sqrt(I-S^2) V^T, -S]].
/// Throws InvalidArgument for the zero matrix.
Dilation unitary_dilation(const BlockMatrix& a);

/// Probability of reading 0 in the Hadamard test on block z:
/// 1/2 + z~^T A z~ / (2 ||A|| (t+1)).
double hadamard_test_prob(const BlockMatrix& a, std::span<const Pm> z);

/// Largest arity the state-vector oracle accepts.
inline constexpr int kMaxStatevectorArity = 10;

/// Same probability obtained by simulating the circuit on an explicit state
/// vector: ancilla |0> -> H -> controlled-U on (|t+1> + sum_i z_i |i>)/sqrt(t+1) -> H.
double statevector_oracle(const BlockMatrix& a, std::span<const Pm> z);

/// Outcome distribution of Bob's block-projecting measurement: uniform over n/t blocks.
std::vector<double> povm_block_distribution(const PartitionParams& params);

/// ceil(log2(n + n/t)) state qubits plus one ancilla.
std::int64_t qubits_per_copy(int n, int t);

/// The sdeg <= 2 protocol with matrix and copy count fixed for (f, params, epsilon).
class QuantumProtocol {
 public:
  /// Throws GuardRejected when sdeg(f) > 2.
  static QuantumProtocol prepare(const BooleanFunction& f, const PartitionParams& params, double epsilon);

  [[nodiscard]] const SignPolynomial& polynomial() const { return p_; }
  [[nodiscard]] const BlockMatrix& matrix() const { return a_; }
  [[nodiscard]] int copies() const { return m_; }
  /// beta / (||A|| (t+1)): the guaranteed per-active-block drift of (-1)^m_j w_j.
  [[nodiscard]] double effective_bias() const;
  [[nodiscard]] ProtocolOutcome run(const PartitionInstance& instance, Rng& rng) const;

 private:
  QuantumProtocol(SignPolynomial p, BlockMatrix a, int m, std::vector<double> prob_zero)
      : p_(std::move(p)), a_(std::move(a)), m_(m), prob_zero_(std::move(prob_zero)) {}

  SignPolynomial p_;
  BlockMatrix a_;
  int m_;
  std::vector<double> prob_zero_;  // hadamard_test_prob per block row
};

ProtocolOutcome run_quantum(const BooleanFunction& f, const PartitionInstance& instance, double epsilon, Rng& rng);

/// {"A": rows, "norm": ||A||, "U": rows} for auditing.
nlohmann::json matrix_audit_json(const BlockMatrix& a, const Dilation& u);

}  // namespace bhp
