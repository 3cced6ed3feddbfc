#include "scdkit/numbers.hpp"

#include <cmath>

#include "scdkit/error.hpp"

namespace scdkit {

Bint factorial(std::uint64_t k) {
  Bint v = 1;
  for (std::uint64_t i = 2; i <= k; ++i) v *= i;
  return v;
}

Bint binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Bint v = 1;
  for (std::uint64_t i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

Bint parse_decimal(const std::string& s) {
  require(!s.empty(), Errc::invalid_parameter, "empty integer literal");
  try {
    return Bint(s);
  } catch (const std::exception&) {
    fail(Errc::invalid_parameter, "bad integer literal: " + s);
  }
}

double log_bint(const Bint& v) {
  require(v > 0, Errc::invalid_parameter, "log of a non-positive integer");
  // split off the top bits so the mantissa converts to double losslessly
  std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 900) return std::log(v.convert_to<double>());
  std::size_t shift = bits - 64;
  Bint top = v >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * std::log(2.0);
}

}  // namespace scdkit
