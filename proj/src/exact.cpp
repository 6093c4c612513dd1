#include "bcalc/exact.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace bcalc {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

BigInt parse_integer(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      throw std::invalid_argument("malformed integer '" + s + "'");
    }
  }
  BigInt v(s.substr(i));
  return s[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)));
    BigInt den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string int_part = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    const bool neg = !int_part.empty() && int_part[0] == '-';
    if (int_part.empty() || int_part == "-" || int_part == "+") int_part += "0";
    if (frac.empty()) frac = "0";
    BigInt whole = parse_integer(int_part);
    BigInt f = parse_integer(frac);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational r = Rational(boost::multiprecision::abs(whole)) + Rational(f, scale);
    return neg ? Rational(-r) : r;
  }
  return Rational(parse_integer(s));
}

std::string format_rational(const Rational& r) {
  if (is_integer(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rationalize(double value, double tol, std::int64_t max_den) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot rationalize non-finite value");
  // Continued-fraction convergents.
  BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const BigInt ai(static_cast<long long>(a));
    BigInt h2 = ai * h1 + h0;
    BigInt k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const Rational approx(h1, k1);
    if (std::abs(to_double(approx) - value) <= tol) return approx;
    const double frac = x - a;
    if (frac == 0.0) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return Rational(BigInt(static_cast<long long>(std::round(value))));
  return Rational(h1, k1);
}

ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
  const Rational n = b.norm2();
  if (n == 0) throw std::domain_error("division by zero");
  const ExactComplex num = a * b.conj();
  return {num.re / n, num.im / n};
}

ExactComplex parse_complex(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return ExactComplex(parse_rational(s));
  s.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string part) -> Rational {
    part = trim(part);
    if (part.empty() || part == "+") return 1;
    if (part == "-") return -1;
    return parse_rational(part);
  };
  if (split == std::string::npos) return {Rational(0), imag_of(s)};
  return {parse_rational(s.substr(0, split)), imag_of(s.substr(split))};
}

std::string format_complex(const ExactComplex& z) {
  if (z.im == 0) return format_rational(z.re);
  std::string im;
  if (z.im == 1) im = "";
  else if (z.im == -1) im = "-";
  else im = format_rational(z.im);
  if (z.re == 0) return im + "i";
  std::string sep = z.im > 0 ? "+" : "";
  return format_rational(z.re) + sep + im + "i";
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << format_complex(z); }

bool shifts_to(const Exponent& from, const Exponent& to) {
  if (from.im != to.im) return false;
  const Rational d = to.re - from.re;
  return d >= 0 && is_integer(d);
}

}  // namespace bcalc
