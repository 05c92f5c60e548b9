#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <optional>
#include <string>

namespace nsim {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational capacity type. All conservation and allocation checks are
// tolerance-zero, so nothing in the model may ever round through a double.
using Rat = boost::rational<BigInt>;

inline Rat rat(long long num, long long den = 1) {
  return Rat(BigInt(num), BigInt(den));
}

std::string to_string(const Rat& r);

// Accepts "42" or "3/4". Returns nullopt on malformed input or zero denominator.
std::optional<Rat> parse_rational(const std::string& text);

// Largest multiple of granularity that is <= value. granularity must be > 0.
Rat floor_to_granularity(const Rat& value, const Rat& granularity);

double to_double(const Rat& r);

}  // namespace nsim
