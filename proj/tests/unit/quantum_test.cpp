#include <bhp/error.hpp>
#include <bhp/quantum.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace {

using bhp::BlockMatrix;
using bhp::PartitionParams;
using bhp::Pm;
using bhp::PmVector;
using bhp::Rational;

/// Random sign-representing polynomial of degree <= d: draw coefficients,
/// take f = sgn(p), redraw on zeros.
bhp::SignPolynomial random_sign_poly(int t, int d, bhp::Rng& rng) {
  for (;;) {
    const auto c = oracle::random_poly(t, d, 0.7, rng);
    std::vector<Pm> table(std::size_t{1} << t);
    bool zero = false;
    for (std::uint32_t r = 0; r < table.size(); ++r) {
      const double v = oracle::poly_eval(c, oracle::point(r, t));
      zero = zero || std::abs(v) < 1e-6;
      table[r] = v > 0 ? 1 : -1;
    }
    if (!zero) return bhp::SignPolynomial::certify(bhp::BooleanFunction(t, table), c);
  }
}

TEST(BlockMatrix, Parity2) {
  const auto a = BlockMatrix::from_polynomial(bhp::best_sign_polynomial(bhp::parity(2), 2));
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(1, 2) = expected(2, 1) = 0.5;
  EXPECT_LE((a.matrix() - expected).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(a.spectral_norm(), 0.5, 1e-9);
}

TEST(BlockMatrix, Dictator) {
  const auto a = BlockMatrix::from_polynomial(bhp::best_sign_polynomial(bhp::dictator(1), 1));
  EXPECT_NEAR(a.matrix()(0, 1), 0.5, 1e-9);
  EXPECT_NEAR(a.matrix()(1, 0), 0.5, 1e-9);
  EXPECT_NEAR(a.quadratic_form(PmVector{-1}), -1.0, 1e-9);
}

TEST(BlockMatrix, ConstantHalf) {
  const auto p = bhp::SignPolynomial::certify(bhp::constant(2, 1), {0.5, 0, 0, 0});
  const auto a = BlockMatrix::from_polynomial(p);
  EXPECT_EQ(a.matrix()(0, 0), 0.5);
  EXPECT_NEAR(a.spectral_norm(), 0.5, 1e-12);
}

TEST(BlockMatrix, RejectsDegreeThree) {
  const auto p = bhp::best_sign_polynomial(bhp::parity(3), 3);
  EXPECT_THROW(BlockMatrix::from_polynomial(p), bhp::InvalidArgument);
}

TEST(BlockMatrixProperty, QuadraticFormSymmetryAndNorm) {
  bhp::Rng rng(1, bhp::Stream::kTest);
  for (int k = 0; k < 300; ++k) {
    const int t = 1 + static_cast<int>(rng.below(6));
    const auto p = random_sign_poly(t, 2, rng);
    const auto a = BlockMatrix::from_polynomial(p);
    EXPECT_LE((a.matrix() - a.matrix().transpose()).cwiseAbs().maxCoeff(), 0.0);
    for (std::uint32_t r = 0; r < (1U << t); ++r) {
      const auto x = oracle::point(r, t);
      // Expand x~^T A x~ by hand.
      double q = 0.0;
      for (int i = 0; i <= t; ++i) {
        for (int j = 0; j <= t; ++j) {
          const double xi = i == 0 ? 1.0 : x[static_cast<std::size_t>(i - 1)];
          const double xj = j == 0 ? 1.0 : x[static_cast<std::size_t>(j - 1)];
          q += xi * a.matrix()(i, j) * xj;
        }
      }
      EXPECT_NEAR(q, p.evaluate(x), 1e-10);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.matrix());
    EXPECT_NEAR(a.spectral_norm(), eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-10);
  }
}

void expect_dilation(const BlockMatrix& a) {
  const auto d = bhp::unitary_dilation(a);
  const Eigen::Index k = a.dim();
  ASSERT_EQ(d.u.rows(), 2 * k);
  EXPECT_LE((d.u.transpose() * d.u - Eigen::MatrixXd::Identity(2 * k, 2 * k)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((d.u.topLeftCorner(k, k) - a.matrix() / a.spectral_norm()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Dilation, ScaledIdentity) {
  const auto a = BlockMatrix::from_matrix(Eigen::MatrixXd::Identity(3, 3) / 2);
  const auto d = bhp::unitary_dilation(a);
  EXPECT_LE((d.u.topLeftCorner(3, 3) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
  expect_dilation(a);
}

TEST(Dilation, Parity2) {
  expect_dilation(BlockMatrix::from_polynomial(bhp::best_sign_polynomial(bhp::parity(2), 2)));
}

TEST(Dilation, ZeroMatrixRejected) {
  EXPECT_THROW(bhp::unitary_dilation(BlockMatrix::from_matrix(Eigen::MatrixXd::Zero(2, 2))), bhp::InvalidArgument);
}

TEST(DilationProperty, RandomSparseAndDenseMatrices) {
  bhp::Rng rng(2, bhp::Stream::kTest);
  for (int k = 0; k < 300; ++k) {
    const int dim = 1 + static_cast<int>(rng.below(6));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    if (k % 2 == 0) {
      m(static_cast<Eigen::Index>(rng.below(dim)), static_cast<Eigen::Index>(rng.below(dim))) = 2 * rng.uniform() - 1;
    } else {
      for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = 2 * rng.uniform() - 1;
      }
    }
    if (m.isZero()) continue;
    expect_dilation(BlockMatrix::from_matrix(m));
  }
}

TEST(HadamardTest, Parity2) {
  const auto a = BlockMatrix::from_polynomial(bhp::best_sign_polynomial(bhp::parity(2), 2));
  EXPECT_NEAR(bhp::hadamard_test_prob(a, PmVector{1, 1}), 5.0 / 6.0, 1e-9);
  EXPECT_NEAR(bhp::hadamard_test_prob(a, PmVector{1, -1}), 1.0 / 6.0, 1e-9);
  EXPECT_NEAR(bhp::statevector_oracle(a, PmVector{1, 1}), 5.0 / 6.0, 1e-9);
}

TEST(HadamardTest, ZeroPolynomialValueGivesHalf) {
  // A for p(x) = x1 - x2, which vanishes at z = (1, 1).
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = m(1, 0) = 0.5;
  m(0, 2) = m(2, 0) = -0.5;
  const auto a = BlockMatrix::from_matrix(m);
  EXPECT_EQ(bhp::hadamard_test_prob(a, PmVector{1, 1}), 0.5);
  EXPECT_NEAR(bhp::statevector_oracle(a, PmVector{1, 1}), 0.5, 1e-12);
}

TEST(HadamardTestProperty, StatevectorAgreesAndStaysInRange) {
  bhp::Rng rng(3, bhp::Stream::kTest);
  for (int k = 0; k < 300; ++k) {
    const int t = 1 + static_cast<int>(rng.below(5));
    const auto p = random_sign_poly(t, 2, rng);
    const auto a = BlockMatrix::from_polynomial(p);
    for (std::uint32_t r = 0; r < (1U << t); ++r) {
      const auto z = oracle::point(r, t);
      const double closed = bhp::hadamard_test_prob(a, z);
      EXPECT_NEAR(bhp::statevector_oracle(a, z), closed, 1e-9);
      EXPECT_LE(std::abs(closed - 0.5), 1.0 / (2 * a.spectral_norm() * (t + 1)) + 1e-12);
      EXPECT_NEAR(closed, 0.5 + p.evaluate(z) / (2 * a.spectral_norm() * (t + 1)), 1e-12);
    }
  }
}

TEST(Povm, UniformOverBlocks) {
  EXPECT_EQ(bhp::povm_block_distribution({4, 2, Rational(1, 1)}), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(bhp::povm_block_distribution({6, 3, Rational(1, 1)}), (std::vector<double>{0.5, 0.5}));
  const auto d = bhp::povm_block_distribution({60, 4, Rational(1, 1)});
  double sum = 0.0;
  for (double v : d) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(RunQuantum, GuardsSignDegreeThree) {
  const auto f = bhp::make_symmetric({3, {0, 1, 2}, 1});
  bhp::Rng rng(4, bhp::Stream::kTest);
  const auto inst = bhp::generate_instance(f, {6, 3, Rational(1, 1)}, 1, rng);
  try {
    (void)bhp::run_quantum(f, inst, 0.1, rng);
    FAIL() << "expected guard rejection";
  } catch (const bhp::GuardRejected& e) {
    EXPECT_STREQ(e.what(), "sdeg(f) = 3 > 2");
  }
}

TEST(RunQuantum, CopiesAndQubitAccounting) {
  const PartitionParams params{200, 2, Rational(1, 2)};
  const auto proto = bhp::QuantumProtocol::prepare(bhp::parity(2), params, 0.1);
  EXPECT_NEAR(proto.matrix().spectral_norm(), 0.5, 1e-9);
  EXPECT_NEAR(proto.effective_bias(), 2.0 / 3.0, 1e-9);
  // ceil((||A|| (t+1) / (alpha beta))^2 ln(10) / 2) = ceil(9 ln 10 / 2) = 11.
  EXPECT_EQ(proto.copies(), 11);
  EXPECT_EQ(bhp::qubits_per_copy(200, 2), 10);
  bhp::Rng rng(5, bhp::Stream::kTest);
  const auto inst = bhp::generate_instance(bhp::parity(2), params, 1, rng);
  EXPECT_EQ(proto.run(inst, rng).message_bits, 11 * 10);
}

double success_rate(const bhp::BooleanFunction& f, const PartitionParams& params, bool quantum, int trials) {
  int ok = 0;
  const auto q = bhp::QuantumProtocol::prepare(f, params, 0.1);
  std::optional<bhp::ClassicalProtocol> c;
  if (!quantum) c = bhp::ClassicalProtocol::prepare(f, params, 0.1);
  for (int k = 0; k < trials; ++k) {
    bhp::Rng rng(6, bhp::Stream::kTest, static_cast<std::uint64_t>(k));
    const Pm b = rng.coin();
    const auto inst = bhp::generate_instance(f, params, b, rng);
    ok += (quantum ? q.run(inst, rng) : c->run(inst, rng)).guess == b;
  }
  return ok / static_cast<double>(trials);
}

TEST(RunQuantum, DictatorConsistentWithClassical) {
  const PartitionParams params{100, 2, Rational(1, 2)};
  const double quantum = success_rate(bhp::dictator(2), params, true, 1000);
  const double classical = success_rate(bhp::dictator(2), params, false, 1000);
  EXPECT_GE(quantum, 0.8 - 3 * std::sqrt(0.16 / 1000));
  EXPECT_GE(classical, 0.8 - 3 * std::sqrt(0.16 / 1000));
}

TEST(MatrixAudit, ContainsMatricesAndNorm) {
  const auto a = BlockMatrix::from_polynomial(bhp::best_sign_polynomial(bhp::parity(2), 2));
  const auto doc = bhp::matrix_audit_json(a, bhp::unitary_dilation(a));
  EXPECT_EQ(doc["A"].size(), 3U);
  EXPECT_EQ(doc["U"].size(), 6U);
  EXPECT_NEAR(doc["norm"].get<double>(), 0.5, 1e-9);
}

}  // namespace
