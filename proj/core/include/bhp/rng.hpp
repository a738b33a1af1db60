#pragma once

#include <cstdint>
#include <limits>

namespace bhp {

/// Named randomness streams. Every random decision in a run is drawn from
/// one of these, keyed by (seed, stream, index), so trials are reproducible
/// independently of execution order.
enum class Stream : std::uint64_t {
  kInstance = 1,
  kProtocol = 2,
  kTieBreak = 3,
  kHardness = 4,
  kReduction = 5,
  kTest = 99,
};

/// Counter-based generator: the n-th output is a pure function of the key and
/// n (SplitMix64 finalizer over key + n * golden gamma). Cheap to construct,
/// trivially splittable.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

  /// Derives an independent child stream.
  [[nodiscard]] Rng split(std::uint64_t tag) const;

  std::uint64_t next();
  /// Uniform on [0, bound); bound > 0. Lemire's nearly-divisionless method.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  /// Fair +-1.
  std::int8_t coin() { return (next() >> 63) ? std::int8_t{-1} : std::int8_t{1}; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  [[nodiscard]] std::uint64_t key() const { return key_; }
  [[nodiscard]] std::uint64_t counter() const { return counter_; }

 private:
  explicit Rng(std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bhp
