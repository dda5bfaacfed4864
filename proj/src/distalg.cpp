#include "wlreg/distalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace wlreg {

IntegrandTerm IntegrandTerm::unit(int num_vars) {
  IntegrandTerm t;
  t.num_vars = num_vars;
  t.poly = Poly::constant(num_vars, 1);
  return t;
}

std::string IntegrandTerm::str() const {
  std::ostringstream os;
  os << "(" << coefficient.str() << ")";
  if (!poly.is_zero() && !(poly == Poly::constant(num_vars, 1))) os << " * (" << poly.str() << ")";
  for (const auto& a : atoms) {
    os << " * " << (a.kind == AtomKind::Epsilon ? "eps" : "delta") << "(" << a.i + 1 << "," << a.j + 1 << ")";
    if (a.power != 1) os << "^" << a.power;
  }
  for (const auto& p : props) os << " * " << kind_name(p.kind) << "(" << p.a + 1 << "," << p.b + 1 << ")";
  return os.str();
}

RuleSet RuleSet::dimreg() {
  RuleSet r;
  r.name = RuleName::DimReg;
  r.value_eps2_delta = Rational(0);
  r.value_eps_delta = Rational(0);
  return r;
}

RuleSet RuleSet::modereg() {
  RuleSet r;
  r.name = RuleName::ModeReg;
  r.value_eps2_delta = Rational(1, 3);
  r.value_eps_delta = Rational(0);
  return r;
}

RuleSet RuleSet::by_name(const std::string& name) {
  if (name == "dimreg" || name == "DimReg") return dimreg();
  if (name == "modereg" || name == "ModeReg") return modereg();
  throw std::invalid_argument("unknown rule set: " + name);
}

std::string RuleSet::str() const { return name == RuleName::DimReg ? "DimReg" : "ModeReg"; }

Rational RuleSet::eps_power_delta(int q, bool* flagged) const {
  if (flagged) *flagged = false;
  if (q == 0) return Rational(1);
  if (q == 1) return value_eps_delta;
  if (q == 2) return value_eps2_delta;
  if (flagged) *flagged = true;
  if (q % 2 == 1) return Rational(0);
  return name == RuleName::DimReg ? Rational(0) : Rational(1, q + 1);
}

namespace {

using AtomKey = std::pair<int, std::pair<int, int>>;  // (kind, (i, j))

// Normalizes i < j and merges equal (kind, pair); returns the accumulated sign from eps flips.
int merge_atoms(std::vector<SingularAtom>& atoms) {
  int sign = 1;
  std::map<AtomKey, int> powers;
  for (auto a : atoms) {
    if (a.i == a.j) throw UnreducedSingularStructure("unreduced singular structure: atom with equal arguments");
    if (a.i > a.j) {
      std::swap(a.i, a.j);
      if (a.kind == AtomKind::Epsilon && a.power % 2 == 1) sign = -sign;
    }
    powers[{static_cast<int>(a.kind), {a.i, a.j}}] += a.power;
  }
  atoms.clear();
  for (const auto& [k, p] : powers)
    atoms.push_back({static_cast<AtomKind>(k.first), k.second.first, k.second.second, p});
  return sign;
}

bool has_delta_on(const std::vector<SingularAtom>& atoms, int i, int j) {
  for (const auto& a : atoms)
    if (a.kind == AtomKind::Delta && a.i == i && a.j == j) return true;
  return false;
}

// eps^(2m) -> 1 and eps^(2m+1) -> eps unless a delta shares the argument.
void simplify_eps(std::vector<SingularAtom>& atoms) {
  std::vector<SingularAtom> out;
  for (const auto& a : atoms) {
    if (a.kind == AtomKind::Epsilon && !has_delta_on(atoms, a.i, a.j)) {
      if (a.power % 2 == 0) continue;
      out.push_back({a.kind, a.i, a.j, 1});
    } else {
      out.push_back(a);
    }
  }
  atoms = std::move(out);
}

struct Piece {
  Poly poly;
  std::vector<SingularAtom> atoms;
};

Poly base_poly(const IntegrandTerm& term) {
  if (term.poly.is_zero() && term.poly.num_vars() == 0) return Poly::constant(term.num_vars, 1);
  return term.poly.with_num_vars(term.num_vars);
}

}  // namespace

Integrand canonicalize(const IntegrandTerm& term) {
  RegValue coefficient = term.coefficient;
  std::vector<Piece> pieces{{base_poly(term), term.atoms}};
  for (const auto& f : term.props) {
    if (f.a < 0 || f.b < 0 || f.a >= term.num_vars || f.b >= term.num_vars)
      throw std::out_of_range("propagator argument outside the integration variables");
    std::vector<Piece> factor_pieces;
    if (f.a == f.b) {
      Diagonal d = diagonal(f.kind);
      std::vector<int> map{f.a};
      Poly p = d.poly.remap(map, term.num_vars);
      if (d.distributional()) {
        // DD(t,t) = delta(0) - 1/beta; both parts are constants.
        coefficient *= RegValue::delta0(1) * RegValue(d.delta0_coeff) + p.to_regvalue();
        continue;
      }
      factor_pieces.push_back({p, {}});
    } else {
      PiecewiseRep rep = symbolic_rep(f.kind);
      std::vector<int> map{f.a, f.b};
      factor_pieces.push_back({rep.smooth.remap(map, term.num_vars), {}});
      if (!rep.eps_coeff.is_zero())
        factor_pieces.push_back({rep.eps_coeff.remap(map, term.num_vars), {{AtomKind::Epsilon, f.a, f.b, 1}}});
      for (const auto& a : rep.singular_atoms)
        if (a.kind == RepAtomKind::Delta)
          factor_pieces.push_back({Poly::constant(term.num_vars, a.weight), {{AtomKind::Delta, f.a, f.b, 1}}});
    }
    std::vector<Piece> next;
    for (const auto& p : pieces)
      for (const auto& q : factor_pieces) {
        Piece r{p.poly * q.poly, p.atoms};
        r.atoms.insert(r.atoms.end(), q.atoms.begin(), q.atoms.end());
        if (!r.poly.is_zero()) next.push_back(std::move(r));
      }
    pieces = std::move(next);
  }
  std::map<std::vector<std::tuple<int, int, int, int>>, Piece> merged;
  for (auto& p : pieces) {
    int sign = merge_atoms(p.atoms);
    simplify_eps(p.atoms);
    if (sign < 0) p.poly = -p.poly;
    std::vector<std::tuple<int, int, int, int>> key;
    for (const auto& a : p.atoms) key.emplace_back(static_cast<int>(a.kind), a.i, a.j, a.power);
    auto it = merged.find(key);
    if (it == merged.end()) merged.emplace(key, std::move(p));
    else it->second.poly += p.poly;
  }
  Integrand out;
  if (coefficient.is_zero()) return out;
  for (auto& [key, p] : merged) {
    if (p.poly.is_zero()) continue;
    IntegrandTerm t;
    t.coefficient = coefficient;
    t.num_vars = term.num_vars;
    t.poly = std::move(p.poly);
    t.atoms = std::move(p.atoms);
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

void substitute_in_atoms(std::vector<SingularAtom>& atoms, int from, int to) {
  for (auto& a : atoms) {
    if (a.i == from) a.i = to;
    if (a.j == from) a.j = to;
  }
}

// Variables joined by delta atoms, as components of the first delta found.
std::vector<int> delta_component(const std::vector<SingularAtom>& atoms, int start, int n) {
  std::vector<int> seen(n, 0);
  std::vector<int> stack{start}, comp;
  seen[start] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    comp.push_back(v);
    for (const auto& a : atoms) {
      if (a.kind != AtomKind::Delta) continue;
      int w = a.i == v ? a.j : (a.j == v ? a.i : -1);
      if (w >= 0 && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::sort(comp.begin(), comp.end());
  return comp;
}

RegValue integrate_regular(Poly poly, const std::vector<SingularAtom>& eps_atoms, const std::vector<bool>& live) {
  std::vector<int> ordered;  // variables appearing in eps atoms
  for (const auto& a : eps_atoms)
    for (int v : {a.i, a.j})
      if (std::find(ordered.begin(), ordered.end(), v) == ordered.end()) ordered.push_back(v);
  std::sort(ordered.begin(), ordered.end());
  for (int v = 0; v < static_cast<int>(live.size()); ++v)
    if (live[v] && std::find(ordered.begin(), ordered.end(), v) == ordered.end()) poly = poly.integrate(v);
  if (ordered.empty()) return poly.to_regvalue();
  Poly total(poly.num_vars());
  std::vector<int> perm = ordered;  // perm[k] is the k-th smallest time
  do {
    std::map<int, int> pos;
    for (int k = 0; k < static_cast<int>(perm.size()); ++k) pos[perm[k]] = k;
    int sign = 1;
    for (const auto& a : eps_atoms)
      if (a.power % 2 == 1 && pos[a.i] < pos[a.j]) sign = -sign;
    Poly p = poly;
    for (int k = 0; k < static_cast<int>(perm.size()); ++k)
      p = p.integrate(perm[k], k + 1 < static_cast<int>(perm.size()) ? perm[k + 1] : -1);
    if (sign < 0) total -= p;
    else total += p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total.to_regvalue();
}

}  // namespace

RegValue integrate(const IntegrandTerm& term, const RuleSet& rules, IntegrationNotes* notes) {
  if (!term.props.empty()) return integrate(canonicalize(term), rules, notes);
  const int n = term.num_vars;
  RegValue coef = term.coefficient;
  Poly poly = base_poly(term);
  std::vector<SingularAtom> atoms = term.atoms;
  std::vector<bool> live(n, true);
  if (merge_atoms(atoms) < 0) poly = -poly;

  auto unreduced = [&](const std::string& why) {
    return UnreducedSingularStructure("unreduced singular structure (" + why + "): " + term.str());
  };

  for (;;) {
    auto first = std::find_if(atoms.begin(), atoms.end(), [](const SingularAtom& a) { return a.kind == AtomKind::Delta; });
    if (first == atoms.end()) break;
    std::vector<int> comp = delta_component(atoms, first->i, n);
    std::vector<SingularAtom> deltas, eps_inside, rest;
    for (const auto& a : atoms) {
      bool in_i = std::binary_search(comp.begin(), comp.end(), a.i);
      bool in_j = std::binary_search(comp.begin(), comp.end(), a.j);
      if (a.kind == AtomKind::Delta && in_i) deltas.push_back(a);
      else if (a.kind == AtomKind::Epsilon && in_i && in_j) eps_inside.push_back(a);
      else rest.push_back(a);
    }
    const int root = comp.front();
    {
      // A prefactor vanishing on the support of the deltas kills the term whatever eps carries.
      Poly on_support = poly;
      for (int v : comp)
        if (v != root) on_support = on_support.substitute_var(v, root);
      if (on_support.is_zero()) return RegValue();
    }
    if (comp.size() == 2) {
      const SingularAtom& d = deltas.front();
      int q = eps_inside.empty() ? 0 : eps_inside.front().power;
      if (d.power >= 2) {
        if (!rules.delta_squared_rule) throw unreduced("delta power without the delta-squared rule");
        if (q > 0) throw unreduced("eps on a repeated delta argument");
        coef *= RegValue::delta0(d.power - 1);
      } else {
        bool flagged = false;
        Rational w = rules.eps_power_delta(q, &flagged);
        if (flagged && notes)
          notes->flags.push_back("eps^" + std::to_string(q) + " * delta evaluated to " + w.str() + " under " + rules.str());
        if (w.is_zero()) return RegValue();
        coef *= RegValue(w);
      }
    } else {
      std::map<int, int> degree;
      for (const auto& d : deltas) {
        if (d.power != 1) throw unreduced("repeated delta inside a chain");
        ++degree[d.i];
        ++degree[d.j];
      }
      bool cycle = deltas.size() == comp.size();
      for (const auto& [v, deg] : degree) cycle = cycle && deg == 2;
      if (!cycle) throw unreduced("open or branching delta structure");
      if (!rules.delta_chain_rule) throw unreduced("delta cycle without the chain rule");
      if (!eps_inside.empty()) throw unreduced("eps inside a delta cycle");
      coef *= RegValue::delta0(1);
    }
    for (int v : comp) {
      if (v == root) continue;
      poly = poly.substitute_var(v, root);
      substitute_in_atoms(rest, v, root);
      live[v] = false;
    }
    atoms = std::move(rest);
    if (merge_atoms(atoms) < 0) poly = -poly;
  }
  simplify_eps(atoms);
  return coef * integrate_regular(poly, atoms, live);
}

RegValue integrate(const Integrand& terms, const RuleSet& rules, IntegrationNotes* notes) {
  RegValue total;
  for (const auto& t : terms) total += integrate(t, rules, notes);
  return total;
}

NaiveStrategy naive_strategy_from_name(const std::string& name) {
  if (name == "partial_integration") return NaiveStrategy::PartialIntegration;
  if (name == "equation_of_motion") return NaiveStrategy::EquationOfMotion;
  if (name == "mixed") return NaiveStrategy::Mixed;
  throw std::invalid_argument("unknown naive strategy: " + name);
}

namespace {

// Props of a two-variable term, normalized to a < b and sorted.
std::vector<PropagatorFactor> normalized_props(const IntegrandTerm& term) {
  std::vector<PropagatorFactor> out;
  for (auto p : term.props) {
    if (p.a > p.b) {
      std::swap(p.a, p.b);
      if (p.kind == PropagatorKind::DotLeft) p.kind = PropagatorKind::DotRight;
      else if (p.kind == PropagatorKind::DotRight) p.kind = PropagatorKind::DotLeft;
    }
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const PropagatorFactor& x, const PropagatorFactor& y) {
    return std::tie(x.kind, x.a, x.b) < std::tie(y.kind, y.a, y.b);
  });
  return out;
}

// int_0^beta [Dr^3(t, 0) - Dr^3(t, beta)] dt, the boundary left by the twofold 1D partial integration.
RegValue cubic_boundary() {
  PiecewiseRep rep = symbolic_rep(PropagatorKind::DotRight);
  Poly at0 = rep.region_greater.at_endpoint(1, false);
  Poly atb = rep.region_less.at_endpoint(1, true);
  return (at0.pow(3) - atb.pow(3)).integrate(0).to_regvalue();
}

RegValue dr_squared_delta(const RuleSet& rules) {
  IntegrandTerm t = IntegrandTerm::unit(2);
  t.props = {{PropagatorKind::DotRight, 0, 1}, {PropagatorKind::DotRight, 0, 1}};
  t.atoms = {{AtomKind::Delta, 0, 1, 1}};
  return integrate(t, rules);
}

}  // namespace

RegValue evaluate_naive_1d(const IntegrandTerm& term, NaiveStrategy strategy, const RuleSet& rules) {
  bool plain = term.atoms.empty() && term.num_vars == 2 &&
               (term.poly.is_zero() && term.poly.num_vars() == 0 ? true : term.poly == Poly::constant(2, 1));
  auto props = normalized_props(term);
  const std::vector<PropagatorFactor> i14 = normalized_props(
      {RegValue(1), 2, Poly(), {}, {{PropagatorKind::DotLeft, 0, 1}, {PropagatorKind::DotRight, 0, 1}, {PropagatorKind::DotDot, 0, 1}}});
  const std::vector<PropagatorFactor> i15 = normalized_props(
      {RegValue(1), 2, Poly(), {}, {{PropagatorKind::D, 0, 1}, {PropagatorKind::DotDot, 0, 1}, {PropagatorKind::DotDot, 0, 1}}});
  if (!plain || (props != i14 && props != i15))
    throw std::invalid_argument("evaluate_naive_1d: unsupported shape " + term.str());
  const RegValue& c = term.coefficient;
  const RegValue b = cubic_boundary();
  if (props == i14) {
    switch (strategy) {
      case NaiveStrategy::PartialIntegration:
        return c * b * Rational(1, 6);
      case NaiveStrategy::EquationOfMotion:
        return integrate(term, rules);
      case NaiveStrategy::Mixed:
        return c * dr_squared_delta(rules) * Rational(1, 2);
    }
  }
  IntegrandTerm div = IntegrandTerm::unit(2);
  div.props = {{PropagatorKind::D, 0, 1}};
  div.atoms = {{AtomKind::Delta, 0, 1, 2}};
  RegValue divergent = integrate(div, rules);
  switch (strategy) {
    case NaiveStrategy::EquationOfMotion:
      return integrate(term, rules);
    case NaiveStrategy::PartialIntegration:
      // -I14 + int Dr^2 Drr with both pieces from the boundary b.
      return c * (divergent - b * Rational(1, 6) - b * Rational(1, 3));
    case NaiveStrategy::Mixed:
      // -I14 (mixed) - int Dr^2 delta.
      return c * (divergent - dr_squared_delta(rules) * Rational(3, 2));
  }
  return RegValue();
}

}  // namespace wlreg
