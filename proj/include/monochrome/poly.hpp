#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "monochrome/rational.hpp"

namespace monochrome {

/// Polynomial in x = 1/c with exact rational coefficients.
///
/// Every moment and cumulant coefficient for uniform c-colorings is a
/// polynomial in the inverse color count, so one symbolic value serves all c.
/// The coefficient vector is kept normalized: no trailing zeros, and the zero
/// polynomial has an empty vector.
class RationalPoly {
 public:
  RationalPoly() = default;

  explicit RationalPoly(std::vector<Rational> coefficients)
      : coeffs_(std::move(coefficients)) {
    normalize();
  }

  RationalPoly(const Rational& constant) : coeffs_{constant} { normalize(); }

  static RationalPoly monomial(const Rational& a, std::size_t power) {
    std::vector<Rational> c(power + 1);
    c[power] = a;
    return RationalPoly(std::move(c));
  }

  /// Builds sum of a_i x^{p_i} from (power, integer coefficient) terms.
  static RationalPoly from_terms(
      std::initializer_list<std::pair<std::size_t, long long>> terms) {
    RationalPoly p;
    for (const auto& [power, a] : terms) p += monomial(Rational(a), power);
    return p;
  }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }

  /// Degree of the polynomial; 0 for constants and for the zero polynomial.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  /// Smallest power with a nonzero coefficient (0 for the zero polynomial).
  std::size_t lowest_power() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return i;
    return 0;
  }

  Rational coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rational(0);
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Value at x = 1/colors.
  Rational at_colors(unsigned long colors) const {
    return evaluate(Rational(BigInt(1), BigInt(colors)));
  }

  bool has_integer_coefficients() const {
    for (const auto& a : coeffs_)
      if (denominator_of(a) != 1) return false;
    return true;
  }

  RationalPoly& operator+=(const RationalPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    normalize();
    return *this;
  }

  RationalPoly& operator-=(const RationalPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    normalize();
    return *this;
  }

  RationalPoly& operator*=(const Rational& scale) {
    for (auto& a : coeffs_) a *= scale;
    normalize();
    return *this;
  }

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& s) { return a *= s; }
  friend RationalPoly operator*(const Rational& s, RationalPoly a) { return a *= s; }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPoly(std::move(out));
  }

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// "p(x) = 24 x^5 - 168 x^6 + ..." in ascending powers; "p(x) = 0" when zero.
  std::string to_string() const {
    std::string out = "p(x) =";
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& a = coeffs_[i];
      if (a == 0) continue;
      Rational mag = a < 0 ? Rational(-a) : a;
      if (first) {
        out += a < 0 ? " -" : "";
      } else {
        out += a < 0 ? " -" : " +";
      }
      out += " ";
      out += rational_text(mag);
      if (i == 1) {
        out += " x";
      } else if (i > 1) {
        out += " x^" + std::to_string(i);
      }
      first = false;
    }
    if (first) out += " 0";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalPoly& p) {
    return os << p.to_string();
  }

 private:
  static std::string rational_text(const Rational& r) {
    if (denominator_of(r) == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
  }

  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace monochrome
