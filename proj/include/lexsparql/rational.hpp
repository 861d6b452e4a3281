#ifndef LEXSPARQL_RATIONAL_HPP
#define LEXSPARQL_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace lexsparql {

// Exact non-negative ratio, always stored reduced. Used for pass@k and the
// granularity ratio so that reported fractions carry no rounding.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) {
      num = 0;
      den = 1;
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / den; }

  friend Rational operator+(Rational a, Rational b) {
    auto g = std::lcm(a.den, b.den);
    return {a.num * (g / a.den) + b.num * (g / b.den), g};
  }
  friend Rational operator/(Rational a, std::int64_t d) {
    return {a.num, a.den * d};
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace lexsparql

#endif
