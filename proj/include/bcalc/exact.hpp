#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace bcalc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", "p" or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);
double to_double(const Rational& r);

/// Best rational approximation of `value` with |value - p/q| <= tol.
Rational rationalize(double value, double tol = 1e-12, std::int64_t max_den = 1'000'000'000);

inline Rational floor_rational(const Rational& r) {
  BigInt q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  if (r < 0 && Rational(q) != r) q -= 1;
  return Rational(q);
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

/// Gaussian rational re + i*im. Used for exponents z in x^z log^p x and for
/// exact operator coefficients.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  ExactComplex conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b);

  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  ExactComplex& operator-=(const ExactComplex& o) { return *this = *this - o; }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  /// Lexicographic (re, im): the output order used everywhere.
  friend std::strong_ordering operator<=>(const ExactComplex& a, const ExactComplex& b) {
    if (a.re != b.re) return a.re < b.re ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.im != b.im) return a.im < b.im ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

using Exponent = ExactComplex;

/// "a", "a+bi", "a-bi", "bi" with rational parts; also plain rationals.
ExactComplex parse_complex(std::string_view text);
std::string format_complex(const ExactComplex& z);

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

/// True iff a - b is a non-negative integer (same imaginary part).
bool shifts_to(const Exponent& from, const Exponent& to);

}  // namespace bcalc
