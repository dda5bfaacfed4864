#pragma once

#include "wlreg/exactalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace wlreg {

// t_0^e0 ... t_{k-1}^e{k-1} * beta^beta.
struct Monomial {
  std::vector<int> exps;
  int beta = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Polynomial in k time variables with coefficients in Rational[beta, 1/beta].
class Poly {
 public:
  Poly() = default;
  explicit Poly(int num_vars) : nv_(num_vars) {}

  static Poly constant(int num_vars, const Rational& c, int beta_power = 0);
  static Poly variable(int num_vars, int var, const Rational& c = 1);

  int num_vars() const { return nv_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;  // no time variable appears
  int degree_in(int var) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.nv_ == b.nv_ && a.terms_ == b.terms_; }

  Poly pow(int e) const;
  Poly times_beta(int k) const;

  Poly derivative(int var) const;
  // t_from -> t_to; t_from no longer appears afterwards.
  Poly substitute_var(int from, int to) const;
  // t_var -> 0 or beta.
  Poly at_endpoint(int var, bool at_beta) const;
  // Integral of t_var over [0, upper], upper = t_{upper_var} or beta when upper_var < 0.
  Poly integrate(int var, int upper_var = -1) const;
  // Remove a variable that does not appear; higher indices shift down.
  Poly drop_var(int var) const;
  // Renumber: new variable index of old variable i is map[i]; result has new_num_vars variables.
  Poly remap(const std::vector<int>& map, int new_num_vars) const;
  Poly with_num_vars(int n) const;

  // Requires is_constant().
  RegValue to_regvalue() const;
  double evaluate(const std::vector<double>& t, double beta) const;
  // Terms in monomial order; variables printed as t1, t2, ... (1-based) or the given names.
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  int nv_ = 0;
  std::map<Monomial, Rational> terms_;
};

}  // namespace wlreg
