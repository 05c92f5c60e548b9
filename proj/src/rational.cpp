#include "nsim/rational.hpp"

#include <stdexcept>

namespace nsim {

std::string to_string(const Rat& r) {
  if (r.denominator() == 1) {
    return r.numerator().str();
  }
  return r.numerator().str() + "/" + r.denominator().str();
}

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) {
    return std::nullopt;
  }
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(BigInt(text), BigInt(1));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) {
      return std::nullopt;
    }
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
}

Rat floor_to_granularity(const Rat& value, const Rat& granularity) {
  if (granularity <= Rat(0)) {
    throw std::invalid_argument("granularity must be positive");
  }
  const Rat q = value / granularity;
  BigInt whole = q.numerator() / q.denominator();
  if (q.numerator() < 0 && whole * q.denominator() != q.numerator()) {
    whole -= 1;
  }
  return Rat(whole, 1) * granularity;
}

double to_double(const Rat& r) {
  return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

}  // namespace nsim
