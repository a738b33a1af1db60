#include "bhp/quantum.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <string>

#include "bhp/error.hpp"

namespace bhp {

namespace {

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

Eigen::VectorXd extended(std::span<const Pm> z) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(z.size()) + 1);
  v(0) = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) v(static_cast<Eigen::Index>(i) + 1) = z[i];
  return v;
}

nlohmann::json rows_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

BlockMatrix BlockMatrix::from_polynomial(const SignPolynomial& p) {
  if (p.degree() > 2) throw InvalidArgument("block matrix: polynomial degree exceeds 2");
  const int t = p.arity();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(t + 1, t + 1);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << t); ++mask) {
    const double c = p.coefficient(mask);
    if (c == 0.0) continue;
    switch (std::popcount(mask)) {
      case 0:
        a(0, 0) = c;
        break;
      case 1: {
        const int i = std::countr_zero(mask) + 1;
        a(0, i) = a(i, 0) = c / 2;
        break;
      }
      default: {
        const int i = std::countr_zero(mask) + 1;
        const int j = std::bit_width(mask);
        a(i, j) = a(j, i) = c / 2;
      }
    }
  }
  BlockMatrix out(std::move(a), 0.0);
  out.norm_ = operator_norm(out.a_);
  for (std::uint32_t row = 0; row < (std::uint32_t{1} << t); ++row) {
    const PmVector x = point_of(row, t);
    if (std::abs(out.quadratic_form(x) - p.evaluate_row(row)) > 1e-10) {
      throw Error("block matrix: quadratic form disagrees with p at row " + std::to_string(row));
    }
  }
  return out;
}

BlockMatrix BlockMatrix::from_matrix(Eigen::MatrixXd a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw InvalidArgument("block matrix: must be square and nonempty");
  const double norm = operator_norm(a);
  return BlockMatrix(std::move(a), norm);
}

double BlockMatrix::quadratic_form(std::span<const Pm> z) const {
  if (static_cast<int>(z.size()) != arity()) throw InvalidArgument("block matrix: point has wrong arity");
  const Eigen::VectorXd v = extended(z);
  return v.dot(a_ * v);
}

Dilation unitary_dilation(const BlockMatrix& a) {
  if (!(a.spectral_norm() > 0)) throw InvalidArgument("unitary dilation: zero matrix");
  const Eigen::Index k = a.dim();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.matrix() / a.spectral_norm(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd& w = svd.matrixU();
  const Eigen::MatrixXd& v = svd.matrixV();
  const Eigen::VectorXd s = svd.singularValues().cwiseMin(1.0);
  const Eigen::VectorXd c = (1.0 - s.array().square()).max(0.0).sqrt().matrix();

  Dilation d;
  d.u.resize(2 * k, 2 * k);
  d.u.topLeftCorner(k, k) = w * s.asDiagonal() * v.transpose();
  d.u.topRightCorner(k, k) = w * c.asDiagonal();
  d.u.bottomLeftCorner(k, k) = c.asDiagonal() * v.transpose();
  d.u.bottomRightCorner(k, k) = -Eigen::MatrixXd(s.asDiagonal());
  return d;
}

double hadamard_test_prob(const BlockMatrix& a, std::span<const Pm> z) {
  const double t_plus_1 = a.dim();
  return 0.5 + a.quadratic_form(z) / (2.0 * a.spectral_norm() * t_plus_1);
}

double statevector_oracle(const BlockMatrix& a, std::span<const Pm> z) {
  const int t = a.arity();
  if (t > kMaxStatevectorArity) throw InvalidArgument("statevector oracle: arity too large");
  if (static_cast<int>(z.size()) != t) throw InvalidArgument("statevector oracle: point has wrong arity");
  using Vec = Eigen::VectorXcd;
  const Eigen::Index sys = 2 * (t + 1);
  const Eigen::MatrixXcd u = unitary_dilation(a).u.cast<std::complex<double>>();

  // Register layout: index = ancilla * sys + system.
  Vec psi = Vec::Zero(2 * sys);
  const double amp = 1.0 / std::sqrt(static_cast<double>(t + 1));
  psi(0) = amp;  // block marker, the "|n+j>" component
  for (int i = 0; i < t; ++i) psi(i + 1) = amp * static_cast<double>(z[static_cast<std::size_t>(i)]);

  const double h = 1.0 / std::sqrt(2.0);
  auto hadamard = [&](const Vec& in) {
    Vec out(2 * sys);
    out.head(sys) = h * (in.head(sys) + in.tail(sys));
    out.tail(sys) = h * (in.head(sys) - in.tail(sys));
    return out;
  };
  Vec state = hadamard(psi);
  state.tail(sys) = u * state.tail(sys).eval();
  state = hadamard(state);
  return state.head(sys).squaredNorm();
}

std::vector<double> povm_block_distribution(const PartitionParams& params) {
  params.validate();
  // Each block owns t+1 of the n + n/t equally weighted basis states.
  const double total = params.n + params.blocks();
  return std::vector<double>(static_cast<std::size_t>(params.blocks()), (params.t + 1) / total);
}

std::int64_t qubits_per_copy(int n, int t) {
  return ceil_log2(static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(n / t)) + 1;
}

QuantumProtocol QuantumProtocol::prepare(const BooleanFunction& f, const PartitionParams& params, double epsilon) {
  params.validate();
  if (f.arity() != params.t) throw InvalidArgument("function arity differs from t");
  const SignDegree sd = sign_degree(f);
  if (sd.degree > 2) throw GuardRejected("sdeg(f) = " + std::to_string(sd.degree) + " > 2");
  SignPolynomial p = best_sign_polynomial(f, std::max(sd.degree, 1));
  BlockMatrix a = BlockMatrix::from_polynomial(p);
  const int t = params.t;
  // E[X] >= alpha m beta / (||A|| (t+1)), while required_samples assumes a
  // drift of alpha m beta' / t; pass beta' = t * drift.
  const double drift = p.bias() / (a.spectral_norm() * (t + 1));
  const int m = required_samples(t, params.alpha.value(), drift * t, epsilon);
  std::vector<double> prob(std::size_t{1} << t);
  for (std::uint32_t row = 0; row < prob.size(); ++row) prob[row] = hadamard_test_prob(a, point_of(row, t));
  return QuantumProtocol(std::move(p), std::move(a), m, std::move(prob));
}

double QuantumProtocol::effective_bias() const { return p_.bias() / (a_.spectral_norm() * a_.dim()); }

ProtocolOutcome QuantumProtocol::run(const PartitionInstance& instance, Rng& rng) const {
  const PartitionParams& params = instance.params;
  if (params.t != a_.arity()) throw InvalidArgument("function arity differs from t");
  Rng tie = rng.split(static_cast<std::uint64_t>(Stream::kTieBreak));
  const PmVector y = apply_permutation(instance.sigma, instance.x);
  const auto t = static_cast<std::size_t>(params.t);
  const auto active = static_cast<std::uint64_t>(params.active_blocks());

  double x_sum = 0.0;
  for (int copy = 0; copy < m_; ++copy) {
    const std::uint64_t j = rng.below(static_cast<std::uint64_t>(params.blocks()));
    const std::uint32_t row = row_of(std::span<const Pm>(y).subspan(j * t, t));
    const bool zero = rng.bernoulli(prob_zero_[row]);
    if (j < active) x_sum += (zero ? 1.0 : -1.0) * instance.w[j];
  }
  ProtocolOutcome out;
  out.statistic = x_sum;
  out.guess = x_sum > 0 ? Pm{1} : x_sum < 0 ? Pm{-1} : tie.coin();
  out.samples = m_;
  out.message_bits = m_ * qubits_per_copy(params.n, params.t);
  return out;
}

ProtocolOutcome run_quantum(const BooleanFunction& f, const PartitionInstance& instance, double epsilon, Rng& rng) {
  return QuantumProtocol::prepare(f, instance.params, epsilon).run(instance, rng);
}

nlohmann::json matrix_audit_json(const BlockMatrix& a, const Dilation& u) {
  return {{"A", rows_json(a.matrix())}, {"norm", a.spectral_norm()}, {"U", rows_json(u.u)}};
}

}  // namespace bhp
