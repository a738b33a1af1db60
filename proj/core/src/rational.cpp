#include "bhp/rational.hpp"

#include <charconv>
#include <numeric>

#include "bhp/error.hpp"

namespace bhp {
namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : num;
  den_ = g ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw InvalidArgument("too many decimals in '" + std::string(text) + "'");
    digits += frac;
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return {parse_int(digits.empty() || digits == "-" ? digits + "0" : digits), den};
  }
  return {parse_int(text), 1};
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace bhp
