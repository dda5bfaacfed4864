#pragma once

#include "wlreg/exactalg.hpp"
#include "wlreg/poly.hpp"
#include "wlreg/worldline.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wlreg {

enum class AtomKind { Epsilon, Delta };

// eps(t_i - t_j)^power or delta(t_i - t_j)^power; i != j.
struct SingularAtom {
  AtomKind kind;
  int i = 0, j = 1;
  int power = 1;
  friend bool operator==(const SingularAtom&, const SingularAtom&) = default;
};

// One correlator line between time variables a and b (0-based); a == b is the equal-time value.
struct PropagatorFactor {
  PropagatorKind kind;
  int a = 0, b = 0;
  friend bool operator==(const PropagatorFactor&, const PropagatorFactor&) = default;
};

// coefficient * poly(t) * prod(atoms) * prod(props), integrated over [0, beta]^num_vars.
struct IntegrandTerm {
  RegValue coefficient{1};
  int num_vars = 1;
  Poly poly;  // defaults to the constant 1 when empty with num_vars variables
  std::vector<SingularAtom> atoms;
  std::vector<PropagatorFactor> props;

  static IntegrandTerm unit(int num_vars);
  std::string str() const;
};

using Integrand = std::vector<IntegrandTerm>;

enum class RuleName { DimReg, ModeReg };

struct RuleSet {
  RuleName name = RuleName::DimReg;
  Rational value_eps2_delta;  // int eps^2 delta
  Rational value_eps_delta;   // int eps delta
  bool delta_squared_rule = true;
  bool delta_chain_rule = true;

  static RuleSet dimreg();
  static RuleSet modereg();
  static RuleSet by_name(const std::string& name);  // "dimreg" | "modereg"
  std::string str() const;
  // Weight of int eps^q delta f against int f on the diagonal; flagged is set for q > 2.
  Rational eps_power_delta(int q, bool* flagged = nullptr) const;
};

struct UnreducedSingularStructure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expands propagator factors into poly * atoms pieces. Atoms are merged per (kind, pair);
// eps^(2m) becomes 1 only when no delta shares its argument.
Integrand canonicalize(const IntegrandTerm& term);

struct IntegrationNotes {
  std::vector<std::string> flags;
};

RegValue integrate(const IntegrandTerm& term, const RuleSet& rules, IntegrationNotes* notes = nullptr);
RegValue integrate(const Integrand& terms, const RuleSet& rules, IntegrationNotes* notes = nullptr);

enum class NaiveStrategy { PartialIntegration, EquationOfMotion, Mixed };
NaiveStrategy naive_strategy_from_name(const std::string& name);

// One-dimensional evaluation paths for the two ambiguous two-loop shapes
// Dl(1,2)*Dr(1,2)*DD(1,2) and D(1,2)*DD(1,2)^2. Other shapes throw.
RegValue evaluate_naive_1d(const IntegrandTerm& term, NaiveStrategy strategy, const RuleSet& rules);

// Integrand text: sums of [rational *] factor products, see README.
Integrand parse_integrand(const std::string& text);
// Polynomial in t and beta for mass profiles, e.g. "t*(beta-t)/beta^2".
Poly parse_profile(const std::string& text);

}  // namespace wlreg
