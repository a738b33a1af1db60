#include "bhp/classical.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bhp/error.hpp"

namespace bhp {

namespace {

Pm sign_or_coin(double x, Rng& tie_break) {
  if (x > 0) return 1;
  if (x < 0) return -1;
  return tie_break.coin();
}

Rng tie_stream(const Rng& rng) { return rng.split(static_cast<std::uint64_t>(Stream::kTieBreak)); }

}  // namespace

int required_samples(int t, double alpha, double beta, double epsilon) {
  if (!(beta > 0)) throw InvalidArgument("required_samples: beta must be positive");
  if (!(epsilon > 0 && epsilon < 0.5)) throw InvalidArgument("required_samples: epsilon must lie in (0, 1/2)");
  if (!(alpha > 0 && alpha <= 1)) throw InvalidArgument("required_samples: alpha must lie in (0, 1]");
  if (t < 1) throw InvalidArgument("required_samples: t must be positive");
  const double ratio = t / (alpha * beta);
  const double exact = ratio * ratio * std::log(1.0 / epsilon) / 2.0;
  // Absorb rounding in the log so that integral values are not bumped up.
  const double m = std::ceil(exact * (1.0 - 1e-12));
  if (m > 2e9) throw InvalidArgument("required_samples: sample count overflows");
  return std::max(1, static_cast<int>(m));
}

SampleMessage alice_sample(std::span<const Pm> x, int m, Rng& rng) {
  if (m < 1) throw InvalidArgument("alice_sample: m must be at least 1");
  if (x.empty()) throw InvalidArgument("alice_sample: empty input");
  SampleMessage msg;
  msg.indices.reserve(static_cast<std::size_t>(m));
  msg.bits.reserve(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) {
    const auto i = static_cast<int>(rng.below(x.size()));
    msg.indices.push_back(i);
    msg.bits.push_back(x[static_cast<std::size_t>(i)]);
  }
  return msg;
}

std::int64_t bits_per_sample(int n) { return ceil_log2(static_cast<std::uint64_t>(n)) + 1; }

ProtocolOutcome bob_decide(const SampleMessage& msg, const Permutation& sigma, std::span<const Pm> w,
                           const SignPolynomial& p, const PartitionParams& params, Rng& tie_break) {
  if (p.degree() > 1) throw InvalidArgument("bob_decide: polynomial degree exceeds 1");
  if (p.arity() != params.t) throw InvalidArgument("bob_decide: polynomial arity differs from t");
  if (msg.indices.size() != msg.bits.size()) throw InvalidArgument("bob_decide: malformed message");
  if (static_cast<int>(w.size()) != params.active_blocks()) throw InvalidArgument("bob_decide: w has wrong length");
  const int t = params.t;
  const double constant_share = p.coefficient(0) / t;
  const int active = params.active_positions();
  double x_sum = 0.0;
  for (std::size_t s = 0; s < msg.indices.size(); ++s) {
    const int pos = sigma(msg.indices[s]);  // 0-based sigma(i) - 1
    if (pos >= active) continue;
    const int j = pos / t;
    const int k = pos % t;  // k(i) - 1
    x_sum += (p.coefficient(std::uint32_t{1} << k) * msg.bits[s] + constant_share) * w[static_cast<std::size_t>(j)];
  }
  ProtocolOutcome out;
  out.statistic = x_sum;
  out.guess = sign_or_coin(x_sum, tie_break);
  out.samples = static_cast<int>(msg.indices.size());
  out.message_bits = out.samples * bits_per_sample(params.n);
  return out;
}

ClassicalProtocol ClassicalProtocol::prepare(const BooleanFunction& f, const PartitionParams& params,
                                             double epsilon) {
  params.validate();
  if (f.arity() != params.t) throw InvalidArgument("function arity differs from t");
  const SignDegree sd = sign_degree(f);
  if (sd.degree > 1) throw GuardRejected("sdeg(f) = " + std::to_string(sd.degree) + " > 1");
  SignPolynomial p = best_sign_polynomial(f, 1);
  const int m = required_samples(params.t, params.alpha.value(), p.bias(), epsilon);
  return ClassicalProtocol(std::move(p), m, epsilon);
}

ProtocolOutcome ClassicalProtocol::run(const PartitionInstance& instance, Rng& rng) const {
  Rng tie = tie_stream(rng);
  const SampleMessage msg = alice_sample(instance.x, m_, rng);
  return bob_decide(msg, instance.sigma, instance.w, p_, instance.params, tie);
}

ProtocolOutcome run_classical(const BooleanFunction& f, const PartitionInstance& instance, double epsilon,
                              Rng& rng) {
  return ClassicalProtocol::prepare(f, instance.params, epsilon).run(instance, rng);
}

UniformProtocol UniformProtocol::prepare(const BooleanFunction& f, int sample_count) {
  if (sample_count < 1) throw InvalidArgument("uniform protocol: sample count must be at least 1");
  const FourierSpectrum spec = fourier_transform(f);
  const int d = pure_high_degree(spec);
  if (d >= 2) throw GuardRejected("phdeg(f) = " + std::to_string(d) + " >= 2");
  std::vector<double> level_one(static_cast<std::size_t>(f.arity()));
  for (int k = 0; k < f.arity(); ++k) {
    const double c = spec[std::uint32_t{1} << k];
    level_one[static_cast<std::size_t>(k)] = std::abs(c) > kFourierZero ? c : 0.0;
  }
  return UniformProtocol(std::move(level_one), sample_count);
}

ProtocolOutcome UniformProtocol::run(const PartitionInstance& instance, Rng& rng) const {
  const PartitionParams& params = instance.params;
  if (params.t != static_cast<int>(level_one_.size())) throw InvalidArgument("function arity differs from t");
  if (sample_count_ > params.n) throw InvalidArgument("uniform protocol: sample count exceeds n");
  Rng tie = tie_stream(rng);

  // Partial Fisher-Yates: the first sample_count entries are a uniform ordered subset.
  std::vector<int> pool(static_cast<std::size_t>(params.n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int s = 0; s < sample_count_; ++s) {
    const auto r = s + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.n - s)));
    std::swap(pool[static_cast<std::size_t>(s)], pool[static_cast<std::size_t>(r)]);
  }

  ProtocolOutcome out;
  out.samples = sample_count_;
  out.message_bits = sample_count_ * bits_per_sample(params.n);
  const int active = params.active_positions();
  for (int s = 0; s < sample_count_; ++s) {
    const int i = pool[static_cast<std::size_t>(s)];
    const int pos = instance.sigma(i);
    if (pos >= active) continue;
    const double c = level_one_[static_cast<std::size_t>(pos % params.t)];
    if (c == 0.0) continue;
    const int vote = (c > 0 ? 1 : -1) * instance.x[static_cast<std::size_t>(i)] *
                     instance.w[static_cast<std::size_t>(pos / params.t)];
    out.statistic = vote;
    out.guess = static_cast<Pm>(vote);
    return out;
  }
  out.guess = tie.coin();
  return out;
}

ProtocolOutcome run_uniform_phd1(const BooleanFunction& f, const PartitionInstance& instance, int sample_count,
                                 Rng& rng) {
  return UniformProtocol::prepare(f, sample_count).run(instance, rng);
}

}  // namespace bhp
