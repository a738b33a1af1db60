#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace bhp {

// A point of {-1,1}^k stored coordinate-wise.
using Pm = std::int8_t;
using PmVector = std::vector<Pm>;

// Row encoding shared by truth tables, Fourier masks and message sets:
// bit (i-1) of the row index is 1 exactly when x_i = -1.
inline std::uint32_t row_of(std::span<const Pm> x) {
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0) r |= (std::uint32_t{1} << i);
  }
  return r;
}

inline PmVector point_of(std::uint32_t row, int k) {
  PmVector x(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) x[i] = (row >> i) & 1U ? Pm{-1} : Pm{1};
  return x;
}

/// Number of -1 coordinates.
inline int hamming_weight(std::uint32_t row) { return std::popcount(row); }

/// chi_S(x) for the point encoded by `row`.
inline int character(std::uint32_t mask, std::uint32_t row) {
  return (std::popcount(mask & row) & 1) ? -1 : 1;
}

inline bool is_pm(Pm v) { return v == 1 || v == -1; }

/// ceil(log2(n)) for n >= 1.
inline int ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

}  // namespace bhp
