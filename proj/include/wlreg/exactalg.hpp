#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace wlreg {

// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;
  using BigInt = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(long long n);  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  Rational(const BigInt& n, const BigInt& d);
  explicit Rational(Big v) : v_(std::move(v)) {}

  // Accepts "a", "-a", "a/b".
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;
  const Big& big() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return v_.sign(); }
  double to_double() const;
  std::string str() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(Big(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational pow(int e) const;

 private:
  Big v_{0};
};

// Key of a RegValue term: beta^beta_power * delta0^delta0_power.
struct RegKey {
  int beta_power = 0;
  int delta0_power = 0;  // never negative
  friend auto operator<=>(const RegKey&, const RegKey&) = default;
};

// Rational-coefficient Laurent polynomial in beta and polynomial in the formal symbol delta(0).
// Zero coefficients are never stored.
class RegValue {
 public:
  RegValue() = default;
  RegValue(const Rational& c);  // NOLINT(google-explicit-constructor)
  RegValue(long long c) : RegValue(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static RegValue term(int beta_power, int delta0_power, const Rational& c);
  static RegValue beta(int power = 1, const Rational& c = 1) { return term(power, 0, c); }
  static RegValue delta0(int power = 1) { return term(0, power, 1); }

  const std::map<RegKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int beta_power, int delta0_power) const;
  int max_delta0_power() const;
  // Part with exactly the given power of delta(0).
  RegValue grade(int delta0_power) const;
  // True when the value is c * beta^k for a single term with no delta(0).
  bool is_monomial() const { return terms_.size() == 1; }

  RegValue& operator+=(const RegValue& o);
  RegValue& operator-=(const RegValue& o);
  RegValue& operator*=(const RegValue& o);
  RegValue& operator*=(const Rational& c);
  RegValue operator-() const;

  friend RegValue operator+(RegValue a, const RegValue& b) { return a += b; }
  friend RegValue operator-(RegValue a, const RegValue& b) { return a -= b; }
  friend RegValue operator*(const RegValue& a, const RegValue& b);
  friend RegValue operator*(RegValue a, const Rational& c) { return a *= c; }
  friend RegValue operator*(const Rational& c, RegValue a) { return a *= c; }
  friend bool operator==(const RegValue& a, const RegValue& b) { return a.terms_ == b.terms_; }

  // Exact division by a single-term value (c * beta^k * delta0^m with m = 0).
  RegValue divided_by_monomial(const RegValue& m) const;

  double evaluate(double beta, double delta0) const;

  // Canonical text "c * beta^k * delta0^m + ..." ordered by (k, m); "0" when empty.
  std::string str() const;

 private:
  void add_term(const RegKey& k, const Rational& c);
  std::map<RegKey, Rational> terms_;
};

RegValue add(const RegValue& a, const RegValue& b);
RegValue mul(const RegValue& a, const RegValue& b);
bool assert_equal(const RegValue& a, const RegValue& b);

}  // namespace wlreg
