#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace scdkit {

// Exact arbitrary-precision integers and rationals. Counts of chain
// decompositions outgrow 64 bits almost immediately, and the gadget
// matrices must be doubly stochastic as an exact statement, so these two
// types carry all counting and weighting arithmetic in the library.
using Bint = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Bint factorial(std::uint64_t k);
Bint binomial(std::uint64_t n, std::uint64_t k);

inline std::string to_decimal(const Bint& v) { return v.str(); }
Bint parse_decimal(const std::string& s);

inline Rat make_rat(std::int64_t num, std::int64_t den) {
  return Rat(Bint(num), Bint(den));
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Bint& v) { return v.convert_to<double>(); }
inline long double to_long_double(const Bint& v) {
  return v.convert_to<long double>();
}

// Natural log of a positive big integer, exact mantissa/exponent split so
// values far beyond double range stay representable.
double log_bint(const Bint& v);

}  // namespace scdkit
