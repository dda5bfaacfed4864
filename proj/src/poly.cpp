#include "wlreg/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace wlreg {

Poly Poly::constant(int num_vars, const Rational& c, int beta_power) {
  Poly p(num_vars);
  p.add_term(Monomial{std::vector<int>(num_vars, 0), beta_power}, c);
  return p;
}

Poly Poly::variable(int num_vars, int var, const Rational& c) {
  if (var < 0 || var >= num_vars) throw std::out_of_range("Poly::variable index");
  Monomial m{std::vector<int>(num_vars, 0), 0};
  m.exps[var] = 1;
  Poly p(num_vars);
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Poly::is_constant() const {
  for (const auto& [m, c] : terms_)
    for (int e : m.exps)
      if (e != 0) return false;
  return true;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exps[var]);
  return d;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nv_ != nv_) {
    if (terms_.empty() && nv_ == 0) nv_ = o.nv_;
    else if (!o.terms_.empty()) throw std::invalid_argument("Poly: variable count mismatch");
  }
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Poly& o) {
  if (o.nv_ != nv_) throw std::invalid_argument("Poly: variable count mismatch");
  Poly out(nv_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m{ma.exps, ma.beta + mb.beta};
      for (int i = 0; i < nv_; ++i) m.exps[i] += mb.exps[i];
      out.add_term(m, ca * cb);
    }
  return *this = std::move(out);
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [m, v] : p.terms_) v = -v;
  return p;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Poly::pow negative exponent");
  Poly out = constant(nv_, 1);
  for (int i = 0; i < e; ++i) out *= *this;
  return out;
}

Poly Poly::times_beta(int k) const {
  Poly out(nv_);
  for (const auto& [m, c] : terms_) out.add_term(Monomial{m.exps, m.beta + k}, c);
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(nv_);
  for (const auto& [m, c] : terms_) {
    int e = m.exps[var];
    if (e == 0) continue;
    Monomial d = m;
    d.exps[var] = e - 1;
    out.add_term(d, c * Rational(e));
  }
  return out;
}

Poly Poly::substitute_var(int from, int to) const {
  if (from == to) return *this;
  Poly out(nv_);
  for (const auto& [m, c] : terms_) {
    Monomial s = m;
    s.exps[to] += s.exps[from];
    s.exps[from] = 0;
    out.add_term(s, c);
  }
  return out;
}

Poly Poly::at_endpoint(int var, bool at_beta) const {
  Poly out(nv_);
  for (const auto& [m, c] : terms_) {
    int e = m.exps[var];
    if (e > 0 && !at_beta) continue;
    Monomial s = m;
    s.exps[var] = 0;
    s.beta += e;
    out.add_term(s, c);
  }
  return out;
}

Poly Poly::integrate(int var, int upper_var) const {
  if (upper_var == var) throw std::invalid_argument("Poly::integrate upper limit equals variable");
  Poly out(nv_);
  for (const auto& [m, c] : terms_) {
    int e = m.exps[var] + 1;
    Monomial s = m;
    s.exps[var] = 0;
    if (upper_var < 0) s.beta += e;
    else s.exps[upper_var] += e;
    out.add_term(s, c / Rational(e));
  }
  return out;
}

Poly Poly::drop_var(int var) const {
  std::vector<int> map(nv_);
  for (int i = 0; i < nv_; ++i) map[i] = i < var ? i : i - 1;
  map[var] = -1;
  return remap(map, nv_ - 1);
}

Poly Poly::remap(const std::vector<int>& map, int new_num_vars) const {
  Poly out(new_num_vars);
  for (const auto& [m, c] : terms_) {
    Monomial s{std::vector<int>(new_num_vars, 0), m.beta};
    for (int i = 0; i < nv_; ++i) {
      if (m.exps[i] == 0) continue;
      if (map[i] < 0) throw std::invalid_argument("Poly::remap drops a variable that appears");
      s.exps[map[i]] += m.exps[i];
    }
    out.add_term(s, c);
  }
  return out;
}

Poly Poly::with_num_vars(int n) const {
  if (n < nv_)
    for (const auto& [m, c] : terms_)
      for (int i = n; i < nv_; ++i)
        if (m.exps[i] != 0) throw std::invalid_argument("Poly::with_num_vars would drop a variable");
  Poly out(n);
  for (const auto& [m, c] : terms_) {
    Monomial s{std::vector<int>(n, 0), m.beta};
    for (int i = 0; i < std::min(n, nv_); ++i) s.exps[i] = m.exps[i];
    out.add_term(s, c);
  }
  return out;
}

RegValue Poly::to_regvalue() const {
  if (!is_constant()) throw std::logic_error("Poly::to_regvalue on a non-constant polynomial");
  RegValue out;
  for (const auto& [m, c] : terms_) out += RegValue::beta(m.beta, c);
  return out;
}

double Poly::evaluate(const std::vector<double>& t, double beta) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c.to_double() * std::pow(beta, m.beta);
    for (int i = 0; i < nv_; ++i) v *= std::pow(t.at(i), m.exps[i]);
    s += v;
  }
  return s;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) first = false;
    else if (c.sign() < 0) { out += " - "; a = -c; }
    else out += " + ";
    out += a.str();
    for (int i = 0; i < nv_; ++i) {
      if (m.exps[i] == 0) continue;
      out += " * " + (i < static_cast<int>(names.size()) ? names[i] : "t" + std::to_string(i + 1));
      if (m.exps[i] != 1) out += "^" + std::to_string(m.exps[i]);
    }
    if (m.beta == 1) out += " * beta";
    else if (m.beta != 0) out += " * beta^" + std::to_string(m.beta);
  }
  return out;
}

}  // namespace wlreg
