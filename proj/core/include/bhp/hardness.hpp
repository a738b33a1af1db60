#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "bhp/boolean_function.hpp"
#include "bhp/instances.hpp"
#include "bhp/rng.hpp"

namespace bhp {

/// Largest n the exhaustive checks accept.
inline constexpr int kMaxHardnessN = 20;

/// Nonempty set of distinct points of {-1,1}^n, stored as rows (bit i-1 set
/// iff x_i = -1). Subsets of [n] use the same bitmask convention.
class MessageSet {
 public:
  /// Throws InvalidArgument on empty, out-of-range or repeated members.
  MessageSet(int n, std::vector<std::uint32_t> members);

  static MessageSet full_cube(int n);
  /// `size` distinct uniform points. Draws from equal RNG states are nested:
  /// a smaller draw is a prefix of a larger one.
  static MessageSet random(int n, std::size_t size, Rng& rng);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] std::span<const std::uint32_t> members() const { return members_; }
  /// g^(S) for the 0/1 indicator g of the set, indexed by subset mask.
  [[nodiscard]] std::vector<double> characteristic_spectrum() const;

 private:
  int n_;
  std::vector<std::uint32_t> members_;
};

/// p(z) = Pr_{x in A}[B_f(x, sigma) = z], q(z) = p(complement of z), indexed
/// by the row of z in {-1,1}^(alpha n / t).
struct InducedDistributions {
  std::vector<double> p;
  std::vector<double> q;
};

InducedDistributions induced_distributions(const BooleanFunction& f, const MessageSet& a, const Permutation& sigma,
                                           const PartitionParams& params);

/// sum |d1 - d2| (no factor 1/2), in [0, 2].
double tvd(std::span<const double> d1, std::span<const double> d2);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

/// Monte-Carlo mean of tvd(p_sigma, q_sigma) over uniform sigma; sample s
/// draws its permutation from rng.split(s).
Estimate expected_tvd(const BooleanFunction& f, const MessageSet& a, const PartitionParams& params,
                      int sigma_samples, const Rng& rng);

/// r^_sigma(V) = 2^-L sum_z (p(z) - q(z)) chi_V(z), L = alpha n / t, V a mask over [L].
double r_hat_bruteforce(const BooleanFunction& f, const MessageSet& a, const Permutation& sigma, std::uint32_t v,
                        const PartitionParams& params);
/// 2^(n+1) / (|A| 2^L) sum_{T_1..T_k} f^(T_1)...f^(T_k) g^(sigma^-1(V . T)) for odd |V|, 0 otherwise.
double r_hat_formula(const BooleanFunction& f, const MessageSet& a, const Permutation& sigma, std::uint32_t v,
                     const PartitionParams& params);
/// Same, reusing a precomputed f spectrum and g spectrum.
double r_hat_formula(const FourierSpectrum& fs, std::span<const double> g_hat, std::size_t a_size,
                     const Permutation& sigma, std::uint32_t v, const PartitionParams& params);

/// Split of a subset of [n] into per-block subsets of [t].
struct BlockDecomposition {
  int t = 0;
  /// blocks[j] is the subset of [t] found in block j+1.
  std::vector<std::uint32_t> blocks;
  /// 0-based indices of the nonempty blocks.
  std::vector<int> nonempty;

  static BlockDecomposition of(std::uint32_t set, int n, int t);
  /// Reassembles the subset of [n].
  [[nodiscard]] std::uint32_t compose() const;
};

/// Image sigma(S) of a subset of [n].
std::uint32_t image_of(const Permutation& sigma, std::uint32_t set);

/// 1 / n!.
double permutation_probability(int n);

/// u(sigma, w, S) = 1/2 sum_x 2^-n (1/n!) chi_S(x) (1[B_f(x,sigma) = w] - 1[B_f(x,sigma) = complement w]).
double u_bruteforce(const BooleanFunction& f, const Permutation& sigma, std::span<const Pm> w, std::uint32_t s,
                    const PartitionParams& params);
/// Signed closed form: (1/n!) 2^-L prod_{U_j nonempty} f^(U_j) w_j when sigma(S)
/// lies in the first alpha n positions with an odd number of nonempty blocks,
/// 0 otherwise. Throws GuardRejected unless f^(empty) = 0.
double u_formula(const BooleanFunction& f, const Permutation& sigma, std::span<const Pm> w, std::uint32_t s,
                 const PartitionParams& params);

struct KklRow {
  double delta;
  double lhs;
  double rhs;
  [[nodiscard]] double margin() const { return rhs - lhs; }
};

struct KklReport {
  std::vector<KklRow> rows;
  int violations = 0;
};

/// Relative slack allowed before sum_S delta^|S| g^(S)^2 > (|A| / 2^n)^(2 / (1 + delta)) counts as a violation.
inline constexpr double kKklRelativeTolerance = 1e-12;

KklReport kkl_check(const MessageSet& a, std::span<const double> deltas);

/// min(1/2, (t / 2d) ||f||_1^(-2/d)) with d = phdeg(f); nullopt when d = 0.
std::optional<double> alpha_bound(const BooleanFunction& f);

nlohmann::json to_json(const KklReport& report);

}  // namespace bhp
