#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace monochrome {

// expression templates off: `auto` must never bind a lazy expression
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& i) { return i.convert_to<double>(); }

inline std::string to_string(const BigInt& i) { return i.str(); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

/// C(n, k) for nonnegative n, exact.
inline BigInt binomial(const BigInt& n, unsigned k) {
  if (n < k) return 0;
  BigInt result = 1;
  for (unsigned i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

inline BigInt binomial(std::uint64_t n, unsigned k) {
  return binomial(BigInt(n), k);
}

/// Smallest integer m >= 0 with m*m >= q, for rational q >= 0.
inline BigInt ceil_sqrt(const Rational& q) {
  if (q <= 0) return 0;
  BigInt num = numerator_of(q);
  BigInt den = denominator_of(q);
  // m^2 >= num/den  <=>  m^2 * den >= num
  BigInt m = boost::multiprecision::sqrt(BigInt(num / den));
  while (m * m * den < num) ++m;
  while (m > 0 && (m - 1) * (m - 1) * den >= num) --m;
  return m;
}

}  // namespace monochrome
