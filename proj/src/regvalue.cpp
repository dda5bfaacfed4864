#include "wlreg/exactalg.hpp"

#include <cmath>
#include <stdexcept>

namespace wlreg {

RegValue::RegValue(const Rational& c) {
  if (!c.is_zero()) terms_[RegKey{0, 0}] = c;
}

RegValue RegValue::term(int beta_power, int delta0_power, const Rational& c) {
  if (delta0_power < 0) throw std::invalid_argument("negative delta(0) power");
  RegValue v;
  v.add_term(RegKey{beta_power, delta0_power}, c);
  return v;
}

void RegValue::add_term(const RegKey& k, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Rational RegValue::coefficient(int beta_power, int delta0_power) const {
  auto it = terms_.find(RegKey{beta_power, delta0_power});
  return it == terms_.end() ? Rational(0) : it->second;
}

int RegValue::max_delta0_power() const {
  int m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.delta0_power);
  return m;
}

RegValue RegValue::grade(int delta0_power) const {
  RegValue out;
  for (const auto& [k, c] : terms_)
    if (k.delta0_power == delta0_power) out.terms_.emplace(k, c);
  return out;
}

RegValue& RegValue::operator+=(const RegValue& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

RegValue& RegValue::operator-=(const RegValue& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

RegValue operator*(const RegValue& a, const RegValue& b) {
  RegValue out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      out.add_term(RegKey{ka.beta_power + kb.beta_power, ka.delta0_power + kb.delta0_power}, ca * cb);
  return out;
}

RegValue& RegValue::operator*=(const RegValue& o) { return *this = *this * o; }

RegValue& RegValue::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

RegValue RegValue::operator-() const {
  RegValue out = *this;
  for (auto& [k, v] : out.terms_) v = -v;
  return out;
}

RegValue RegValue::divided_by_monomial(const RegValue& m) const {
  if (m.terms_.size() != 1 || m.terms_.begin()->first.delta0_power != 0)
    throw std::domain_error("division by a non-monomial RegValue");
  const auto& [mk, mc] = *m.terms_.begin();
  RegValue out;
  for (const auto& [k, c] : terms_) out.add_term(RegKey{k.beta_power - mk.beta_power, k.delta0_power}, c / mc);
  return out;
}

double RegValue::evaluate(double beta, double delta0) const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += c.to_double() * std::pow(beta, k.beta_power) * std::pow(delta0, k.delta0_power);
  return s;
}

std::string RegValue::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rational a = c;
    if (first) {
      first = false;
    } else if (c.sign() < 0) {
      out += " - ";
      a = -c;
    } else {
      out += " + ";
    }
    out += a.str();
    if (k.beta_power == 1) out += " * beta";
    else if (k.beta_power != 0) out += " * beta^" + std::to_string(k.beta_power);
    if (k.delta0_power == 1) out += " * delta0";
    else if (k.delta0_power != 0) out += " * delta0^" + std::to_string(k.delta0_power);
  }
  return out;
}

RegValue add(const RegValue& a, const RegValue& b) { return a + b; }
RegValue mul(const RegValue& a, const RegValue& b) { return a * b; }
bool assert_equal(const RegValue& a, const RegValue& b) { return a == b; }

}  // namespace wlreg
