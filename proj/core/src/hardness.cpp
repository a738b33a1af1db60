#include "bhp/hardness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bhp/error.hpp"

namespace bhp {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxHardnessN) throw InvalidArgument("hardness checks need 1 <= n <= 20");
}

void check_params(const BooleanFunction& f, const PartitionParams& params) {
  params.validate();
  check_n(params.n);
  if (f.arity() != params.t) throw InvalidArgument("function arity differs from t");
}

/// Row of B_f(x, sigma) in {-1,1}^L for x given by its row.
std::uint32_t b_map_row(const BooleanFunction& f, std::uint32_t x_row, const Permutation& sigma,
                        const PartitionParams& params) {
  std::uint32_t y = 0;
  for (int i = 0; i < params.n; ++i) {
    if ((x_row >> i) & 1U) y |= std::uint32_t{1} << sigma(i);
  }
  const int t = params.t;
  const std::uint32_t block_mask = (std::uint32_t{1} << t) - 1;
  std::uint32_t z = 0;
  for (int j = 0; j < params.active_blocks(); ++j) {
    if (f.at_row((y >> (j * t)) & block_mask) < 0) z |= std::uint32_t{1} << j;
  }
  return z;
}

}  // namespace

MessageSet::MessageSet(int n, std::vector<std::uint32_t> members) : n_(n), members_(std::move(members)) {
  check_n(n);
  if (members_.empty()) throw InvalidArgument("message set must be nonempty");
  std::vector<std::uint32_t> sorted(members_);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("message set members must be distinct");
  }
  if (sorted.back() >= (std::uint32_t{1} << n)) throw InvalidArgument("message set member out of range");
}

MessageSet MessageSet::full_cube(int n) {
  check_n(n);
  std::vector<std::uint32_t> all(std::size_t{1} << n);
  std::iota(all.begin(), all.end(), 0U);
  return MessageSet(n, std::move(all));
}

MessageSet MessageSet::random(int n, std::size_t size, Rng& rng) {
  check_n(n);
  const std::size_t cube = std::size_t{1} << n;
  if (size < 1 || size > cube) throw InvalidArgument("message set size must lie in [1, 2^n]");
  std::vector<std::uint32_t> pool(cube);
  std::iota(pool.begin(), pool.end(), 0U);
  for (std::size_t s = 0; s < size; ++s) {
    const std::size_t r = s + rng.below(cube - s);
    std::swap(pool[s], pool[r]);
  }
  pool.resize(size);
  return MessageSet(n, std::move(pool));
}

std::vector<double> MessageSet::characteristic_spectrum() const {
  std::vector<double> g(std::size_t{1} << n_, 0.0);
  for (std::uint32_t m : members_) g[m] = 1.0;
  walsh_hadamard(g);
  const double scale = std::ldexp(1.0, -n_);
  for (double& c : g) c *= scale;
  return g;
}

InducedDistributions induced_distributions(const BooleanFunction& f, const MessageSet& a, const Permutation& sigma,
                                           const PartitionParams& params) {
  check_params(f, params);
  if (a.n() != params.n || sigma.size() != params.n) throw InvalidArgument("induced distributions: size mismatch");
  const std::size_t outcomes = std::size_t{1} << params.active_blocks();
  InducedDistributions d{std::vector<double>(outcomes, 0.0), std::vector<double>(outcomes, 0.0)};
  const double weight = 1.0 / static_cast<double>(a.size());
  for (std::uint32_t x : a.members()) d.p[b_map_row(f, x, sigma, params)] += weight;
  const auto flip = static_cast<std::uint32_t>(outcomes - 1);
  for (std::uint32_t z = 0; z < outcomes; ++z) d.q[z] = d.p[z ^ flip];
  return d;
}

double tvd(std::span<const double> d1, std::span<const double> d2) {
  if (d1.size() != d2.size()) throw InvalidArgument("tvd: support mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < d1.size(); ++i) sum += std::abs(d1[i] - d2[i]);
  return sum;
}

Estimate expected_tvd(const BooleanFunction& f, const MessageSet& a, const PartitionParams& params,
                      int sigma_samples, const Rng& rng) {
  if (sigma_samples < 1) throw InvalidArgument("expected_tvd: need at least one sample");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(sigma_samples));
  for (int s = 0; s < sigma_samples; ++s) {
    Rng child = rng.split(static_cast<std::uint64_t>(s));
    const Permutation sigma = Permutation::random(params.n, child);
    const InducedDistributions d = induced_distributions(f, a, sigma, params);
    values.push_back(tvd(d.p, d.q));
  }
  Estimate e;
  e.samples = sigma_samples;
  e.mean = std::accumulate(values.begin(), values.end(), 0.0) / sigma_samples;
  if (sigma_samples > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / (sigma_samples - 1) / sigma_samples);
  }
  return e;
}

double r_hat_bruteforce(const BooleanFunction& f, const MessageSet& a, const Permutation& sigma, std::uint32_t v,
                        const PartitionParams& params) {
  const InducedDistributions d = induced_distributions(f, a, sigma, params);
  double sum = 0.0;
  for (std::uint32_t z = 0; z < d.p.size(); ++z) sum += (d.p[z] - d.q[z]) * character(v, z);
  return sum / static_cast<double>(d.p.size());
}

double r_hat_formula(const BooleanFunction& f, const MessageSet& a, const Permutation& sigma, std::uint32_t v,
                     const PartitionParams& params) {
  check_params(f, params);
  if (a.n() != params.n) throw InvalidArgument("r_hat_formula: size mismatch");
  if (std::popcount(v) % 2 == 0) return 0.0;
  return r_hat_formula(fourier_transform(f), a.characteristic_spectrum(), a.size(), sigma, v, params);
}

double r_hat_formula(const FourierSpectrum& fs, std::span<const double> g_hat, std::size_t a_size,
                     const Permutation& sigma, std::uint32_t v, const PartitionParams& params) {
  const int big_l = params.active_blocks();
  if (v >= (std::uint32_t{1} << big_l)) throw InvalidArgument("r_hat_formula: V outside [alpha n / t]");
  if (std::popcount(v) % 2 == 0) return 0.0;
  const int t = params.t;
  std::vector<int> blocks;
  for (int j = 0; j < big_l; ++j) {
    if ((v >> j) & 1U) blocks.push_back(j);
  }
  const int k = static_cast<int>(blocks.size());
  const Permutation sigma_inv = sigma.inverse();

  // Enumerate (T_1, ..., T_k) as one t*k-bit counter.
  double sum = 0.0;
  const std::uint64_t combos = std::uint64_t{1} << (t * k);
  const std::uint32_t block_mask = (std::uint32_t{1} << t) - 1;
  for (std::uint64_t code = 0; code < combos; ++code) {
    double coeff = 1.0;
    std::uint32_t pulled_back = 0;  // sigma^-1(V . T)
    for (int i = 0; i < k && coeff != 0.0; ++i) {
      const auto ti = static_cast<std::uint32_t>(code >> (i * t)) & block_mask;
      coeff *= fs[ti];
      for (int r = 0; r < t; ++r) {
        if ((ti >> r) & 1U) pulled_back |= std::uint32_t{1} << sigma_inv(blocks[static_cast<std::size_t>(i)] * t + r);
      }
    }
    if (coeff != 0.0) sum += coeff * g_hat[pulled_back];
  }
  return std::ldexp(sum, params.n + 1 - big_l) / static_cast<double>(a_size);
}

BlockDecomposition BlockDecomposition::of(std::uint32_t set, int n, int t) {
  if (t < 1 || n % t != 0) throw InvalidArgument("block decomposition: t must divide n");
  BlockDecomposition d;
  d.t = t;
  const std::uint32_t block_mask = (std::uint32_t{1} << t) - 1;
  for (int j = 0; j < n / t; ++j) {
    const std::uint32_t u = (set >> (j * t)) & block_mask;
    d.blocks.push_back(u);
    if (u != 0) d.nonempty.push_back(j);
  }
  return d;
}

std::uint32_t BlockDecomposition::compose() const {
  std::uint32_t set = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) set |= blocks[j] << (static_cast<int>(j) * t);
  return set;
}

std::uint32_t image_of(const Permutation& sigma, std::uint32_t set) {
  std::uint32_t out = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if ((set >> i) & 1U) out |= std::uint32_t{1} << sigma(i);
  }
  return out;
}

double permutation_probability(int n) { return 1.0 / std::tgamma(n + 1.0); }

double u_bruteforce(const BooleanFunction& f, const Permutation& sigma, std::span<const Pm> w, std::uint32_t s,
                    const PartitionParams& params) {
  check_params(f, params);
  if (static_cast<int>(w.size()) != params.active_blocks()) throw InvalidArgument("u: w has wrong length");
  const std::uint32_t w_row = row_of(w);
  const std::uint32_t w_bar = w_row ^ ((std::uint32_t{1} << params.active_blocks()) - 1);
  long sum = 0;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << params.n); ++x) {
    const std::uint32_t z = b_map_row(f, x, sigma, params);
    const int indicator = (z == w_row) - (z == w_bar);
    sum += indicator * character(s, x);
  }
  return 0.5 * std::ldexp(static_cast<double>(sum), -params.n) * permutation_probability(params.n);
}

double u_formula(const BooleanFunction& f, const Permutation& sigma, std::span<const Pm> w, std::uint32_t s,
                 const PartitionParams& params) {
  check_params(f, params);
  if (static_cast<int>(w.size()) != params.active_blocks()) throw InvalidArgument("u: w has wrong length");
  const FourierSpectrum fs = fourier_transform(f);
  if (std::abs(fs[0]) > kFourierZero) throw GuardRejected("u_formula needs f^(empty) = 0 (phdeg >= 1)");

  const std::uint32_t image = image_of(sigma, s);
  if (image >> params.active_positions() != 0) return 0.0;
  const BlockDecomposition d = BlockDecomposition::of(image, params.n, params.t);
  if (d.nonempty.size() % 2 == 0) return 0.0;
  double prod = 1.0;
  for (int j : d.nonempty) prod *= fs[d.blocks[static_cast<std::size_t>(j)]] * w[static_cast<std::size_t>(j)];
  return permutation_probability(params.n) * std::ldexp(prod, -params.active_blocks());
}

KklReport kkl_check(const MessageSet& a, std::span<const double> deltas) {
  const std::vector<double> g = a.characteristic_spectrum();
  const double density = static_cast<double>(a.size()) / static_cast<double>(g.size());
  KklReport report;
  for (double delta : deltas) {
    if (!(delta >= 0 && delta <= 1)) throw InvalidArgument("kkl_check: delta must lie in [0, 1]");
    // Group by level so each power of delta is computed once.
    std::vector<double> level(static_cast<std::size_t>(a.n()) + 1, 0.0);
    for (std::uint32_t m = 0; m < g.size(); ++m) level[static_cast<std::size_t>(std::popcount(m))] += g[m] * g[m];
    double lhs = 0.0;
    for (std::size_t k = 0; k < level.size(); ++k) lhs += std::pow(delta, static_cast<double>(k)) * level[k];
    const double rhs = std::pow(density, 2.0 / (1.0 + delta));
    report.rows.push_back({delta, lhs, rhs});
    if (lhs > rhs * (1.0 + kKklRelativeTolerance)) ++report.violations;
  }
  return report;
}

std::optional<double> alpha_bound(const BooleanFunction& f) {
  const FourierSpectrum fs = fourier_transform(f);
  const int d = pure_high_degree(fs);
  if (d == 0) return std::nullopt;
  const double bound = (f.arity() / (2.0 * d)) * std::pow(fourier_l1(fs), -2.0 / d);
  return std::min(0.5, bound);
}

nlohmann::json to_json(const KklReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const KklRow& r : report.rows) {
    rows.push_back({{"delta", r.delta}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin()}});
  }
  return {{"violations", report.violations}, {"rows", rows}};
}

}  // namespace bhp
