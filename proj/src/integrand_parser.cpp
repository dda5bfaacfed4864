#include "wlreg/distalg.hpp"

#include <cctype>
#include <stdexcept>

namespace wlreg {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at column " + std::to_string(pos + 1) + ": " + what + " in \"" + s + "\"");
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    return s.substr(start, pos - start);
  }
  long long integer() {
    skip();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail("expected an integer");
    return std::stoll(s.substr(start, pos - start));
  }
  int exponent(bool allow_negative) {
    if (!accept('^')) return 1;
    long long e = integer();
    if (e < 0 && !allow_negative) fail("negative exponent");
    if (e == 0 && !allow_negative) fail("zero exponent");
    return static_cast<int>(e);
  }
};

struct RawTerm {
  Rational rational{1};
  int beta = 0;
  int delta0 = 0;
  std::vector<SingularAtom> atoms;
  std::vector<PropagatorFactor> props;
  std::vector<std::pair<int, int>> tvars;  // (var, power)
  int max_var = 0;
};

RawTerm parse_term(Cursor& c) {
  RawTerm t;
  auto pair_args = [&](int& i, int& j) {
    c.expect('(');
    long long a = c.integer();
    c.expect(',');
    long long b = c.integer();
    c.expect(')');
    if (a < 1 || b < 1) c.fail("time indices are 1-based");
    i = static_cast<int>(a) - 1;
    j = static_cast<int>(b) - 1;
    t.max_var = std::max({t.max_var, i + 1, j + 1});
  };
  do {
    char p = c.peek();
    if (std::isdigit(static_cast<unsigned char>(p))) {
      long long n = c.integer();
      long long d = 1;
      if (c.accept('/')) d = c.integer();
      if (d <= 0) c.fail("non-positive denominator");
      t.rational *= Rational(n, d);
      continue;
    }
    std::string name = c.ident();
    if (name.empty()) c.fail("expected a factor");
    if (name == "D" || name == "Dl" || name == "Dr" || name == "DD") {
      PropagatorKind k = name == "D" ? PropagatorKind::D
                         : name == "Dl" ? PropagatorKind::DotLeft
                         : name == "Dr" ? PropagatorKind::DotRight
                                        : PropagatorKind::DotDot;
      int i, j;
      pair_args(i, j);
      int e = c.exponent(false);
      for (int r = 0; r < e; ++r) t.props.push_back({k, i, j});
    } else if (name == "eps" || name == "delta") {
      int i, j;
      pair_args(i, j);
      if (i == j) c.fail(name + " with equal arguments");
      int e = c.exponent(false);
      t.atoms.push_back({name == "eps" ? AtomKind::Epsilon : AtomKind::Delta, i, j, e});
    } else if (name == "delta0") {
      t.delta0 += c.exponent(false);
    } else if (name == "beta") {
      t.beta += c.exponent(true);
    } else if (name == "t") {
      c.expect('(');
      long long v = c.integer();
      c.expect(')');
      if (v < 1) c.fail("time indices are 1-based");
      t.max_var = std::max(t.max_var, static_cast<int>(v));
      t.tvars.emplace_back(static_cast<int>(v) - 1, c.exponent(false));
    } else {
      c.fail("unknown factor '" + name + "'");
    }
  } while (c.accept('*'));
  return t;
}

}  // namespace

Integrand parse_integrand(const std::string& text) {
  Cursor c{text};
  std::vector<std::pair<int, RawTerm>> raw;
  int sign = 1;
  if (c.accept('-')) sign = -1;
  else c.accept('+');
  for (;;) {
    raw.emplace_back(sign, parse_term(c));
    if (c.done()) break;
    if (c.accept('+')) sign = 1;
    else if (c.accept('-')) sign = -1;
    else c.fail("expected '+', '-' or '*'");
  }
  int nv = 1;
  for (const auto& [s, t] : raw) nv = std::max(nv, t.max_var);
  Integrand out;
  for (const auto& [s, t] : raw) {
    IntegrandTerm term = IntegrandTerm::unit(nv);
    term.coefficient = RegValue::term(t.beta, t.delta0, t.rational * Rational(s));
    for (const auto& [v, e] : t.tvars) term.poly *= Poly::variable(nv, v).pow(e);
    term.atoms = t.atoms;
    term.props = t.props;
    out.push_back(std::move(term));
  }
  return out;
}

namespace {

// expr := ['+'|'-'] prod (('+'|'-') prod)*; prod := power (('*'|'/') power)*;
// power := atom ['^' int]; atom := number | 't' | 'beta' | '(' expr ')'
Poly profile_expr(Cursor& c);

Poly profile_atom(Cursor& c) {
  char p = c.peek();
  if (c.accept('(')) {
    Poly e = profile_expr(c);
    c.expect(')');
    return e;
  }
  if (std::isdigit(static_cast<unsigned char>(p))) return Poly::constant(1, Rational(c.integer()));
  std::string name = c.ident();
  if (name == "t") return Poly::variable(1, 0);
  if (name == "beta") return Poly::constant(1, 1, 1);
  c.fail("unknown symbol '" + name + "' (profiles use t and beta)");
}

Poly profile_power(Cursor& c) {
  Poly a = profile_atom(c);
  if (!c.accept('^')) return a;
  long long e = c.integer();
  if (e >= 0) return a.pow(static_cast<int>(e));
  if (!a.is_constant() || a.terms().size() != 1) c.fail("negative power of a non-monomial");
  const auto& [m, coef] = *a.terms().begin();
  return Poly::constant(1, coef.pow(static_cast<int>(e)), m.beta * static_cast<int>(e));
}

Poly profile_prod(Cursor& c) {
  Poly a = profile_power(c);
  for (;;) {
    if (c.accept('*')) {
      a *= profile_power(c);
    } else if (c.accept('/')) {
      Poly d = profile_power(c);
      if (!d.is_constant() || d.terms().size() != 1) c.fail("division by a non-monomial");
      const auto& [m, coef] = *d.terms().begin();
      a = (a * (Rational(1) / coef)).times_beta(-m.beta);
    } else {
      return a;
    }
  }
}

Poly profile_expr(Cursor& c) {
  Poly a(1);
  bool neg = c.accept('-');
  if (!neg) c.accept('+');
  a = neg ? -profile_prod(c) : profile_prod(c);
  for (;;) {
    if (c.accept('+')) a += profile_prod(c);
    else if (c.accept('-')) a -= profile_prod(c);
    else return a;
  }
}

}  // namespace

Poly parse_profile(const std::string& text) {
  Cursor c{text};
  Poly p = profile_expr(c);
  if (!c.done()) c.fail("trailing input");
  return p;
}

}  // namespace wlreg
