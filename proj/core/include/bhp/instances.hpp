#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "bhp/boolean_function.hpp"
#include "bhp/rational.hpp"
#include "bhp/rng.hpp"

namespace bhp {

/// (n, t, alpha) with t | n and alpha * n / t a positive integer.
struct PartitionParams {
  int n = 0;
  int t = 0;
  Rational alpha{1, 1};

  /// Throws InvalidArgument when inconsistent.
  void validate() const;
  /// Number of blocks, n / t.
  [[nodiscard]] int blocks() const { return n / t; }
  /// Promise length alpha * n / t.
  [[nodiscard]] int active_blocks() const;
  /// alpha * n: permuted positions 1..alpha*n lie in active blocks.
  [[nodiscard]] int active_positions() const { return active_blocks() * t; }

  friend bool operator==(const PartitionParams&, const PartitionParams&) = default;
};

/// Permutation of [n]. Stored 0-based: image(i) is sigma(i+1) - 1.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidArgument unless `images` is a bijection on 0..n-1.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Uniform over S_n (Fisher-Yates).
  static Permutation random(int n, Rng& rng);
  /// From 1-based images, as in instance files.
  static Permutation from_one_based(std::span<const int> images);

  [[nodiscard]] int size() const { return static_cast<int>(images_.size()); }
  [[nodiscard]] int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] std::span<const int> images() const { return images_; }
  [[nodiscard]] std::vector<int> one_based() const;
  [[nodiscard]] Permutation inverse() const;
  /// (*this o inner)(i) = this(inner(i)).
  [[nodiscard]] Permutation compose(const Permutation& inner) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Output position sigma(i) holds x_i, i.e. sigma(x)_k = x_{sigma^-1(k)}.
PmVector apply_permutation(const Permutation& sigma, std::span<const Pm> x);

/// (f(sigma(x)^(1)), ..., f(sigma(x)^(alpha n / t))) over contiguous blocks of size t.
PmVector b_map(const BooleanFunction& f, std::span<const Pm> x, const Permutation& sigma,
               const PartitionParams& params);

struct PartitionInstance {
  PartitionParams params;
  PmVector x;
  Permutation sigma;
  PmVector w;
  std::optional<Pm> b;

  /// Shape checks only (lengths, +-1 entries, bijection); not the promise.
  void validate() const;
  friend bool operator==(const PartitionInstance&, const PartitionInstance&) = default;
};

/// Uniform x and sigma, w = b * B_f(x, sigma).
PartitionInstance generate_instance(const BooleanFunction& f, const PartitionParams& params, Pm b,
                                    Rng& rng);

/// The hidden bit if B_f(x, sigma) o w is constant, nullopt if the promise is violated.
std::optional<Pm> verify_promise(const BooleanFunction& f, const PartitionInstance& instance);

nlohmann::json to_json(const PartitionInstance& instance);
/// Throws InvalidArgument on malformed documents.
PartitionInstance instance_from_json(const nlohmann::json& doc);

}  // namespace bhp
