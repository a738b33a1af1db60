#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bhp {

/// Exact positive fraction in lowest terms (used for the partition fraction alpha).
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts "p/q", "p", or a terminating decimal like "0.5".
  static Rational parse(std::string_view text);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

}  // namespace bhp
