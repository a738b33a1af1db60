#include "bhp/rng.hpp"

namespace bhp {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, Stream stream, std::uint64_t index)
    : key_(mix64(mix64(seed + kGamma) ^ mix64(static_cast<std::uint64_t>(stream) * kGamma + 1) ^
                 mix64(index * 0xd1b54a32d192ed03ULL + 7))) {}

Rng Rng::split(std::uint64_t tag) const {
  return Rng(mix64(key_ ^ mix64(tag * kGamma + 0x2545f4914f6cdd1dULL)));
}

std::uint64_t Rng::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  u128 product = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace bhp
