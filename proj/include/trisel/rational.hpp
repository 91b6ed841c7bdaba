#pragma once

// Exact rational scalar used for every coordinate and derived quantity.
// Backed by boost::multiprecision, which keeps values canonical (lowest
// terms, positive denominator). No floating point in any predicate.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trisel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rational_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const BigInt& v) { return v.sign(); }
inline int sign_of(const Rational& r) { return r.sign(); }

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

// Smallest integer >= num/den for den > 0.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw std::invalid_argument("ceil_div: denominator must be positive");
  BigInt q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

inline BigInt pow_int(BigInt base, unsigned exp) {
  BigInt out = 1;
  while (exp != 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

// ceil(log2(n)) for n >= 1.
inline int ceil_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("ceil_log2: n must be positive");
  int bits = 0;
  std::uint64_t v = n - 1;
  while (v != 0) {
    ++bits;
    v >>= 1u;
  }
  return bits;
}

// Serialized form used in certificates and CSV cells: always "p/q".
inline std::string to_fraction_string(const Rational& r) {
  return rational_num(r).str() + "/" + rational_den(r).str();
}

inline Rational parse_fraction(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("invalid rational '" + std::string(text) + "' (expected p or p/q)");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    const BigInt num{std::string(text.substr(0, slash))};
    const BigInt den{std::string(text.substr(slash + 1))};
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

}  // namespace trisel
