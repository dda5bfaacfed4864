#include "wlreg/exactalg.hpp"

#include <stdexcept>

namespace wlreg {

Rational::Rational(long long n) : v_(n) {}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  // The rational backend rejects negative denominators.
  v_ = d < 0 ? Big(-BigInt(n), -BigInt(d)) : Big(BigInt(n), BigInt(d));
}

Rational::Rational(const BigInt& n, const BigInt& d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  v_ = d < 0 ? Big(BigInt(-n), BigInt(-d)) : Big(n, d);
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("empty integer in rational");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer in rational");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("malformed integer in rational: " + std::string(s));
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text), BigInt(1));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational::BigInt Rational::numerator() const { return boost::multiprecision::numerator(v_); }
Rational::BigInt Rational::denominator() const { return boost::multiprecision::denominator(v_); }

double Rational::to_double() const { return v_.convert_to<double>(); }

std::string Rational::str() const {
  auto d = denominator();
  if (d == 1) return numerator().str();
  return numerator().str() + "/" + d.str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(int e) const {
  Rational base = e < 0 ? Rational(1) / *this : *this;
  Rational out(1);
  for (int i = 0; i < (e < 0 ? -e : e); ++i) out *= base;
  return out;
}

}  // namespace wlreg
