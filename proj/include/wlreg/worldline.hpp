#pragma once

#include "wlreg/exactalg.hpp"
#include "wlreg/poly.hpp"

#include <string>
#include <vector>

namespace wlreg {

// Correlators of the free Dirichlet path on [0, beta]:
//   D        <q(t) q(s)>
//   DotLeft  derivative on the first argument
//   DotRight derivative on the second argument
//   DotDot   derivatives on both arguments
enum class PropagatorKind { D, DotLeft, DotRight, DotDot };

std::string kind_name(PropagatorKind k);  // "D", "Dl", "Dr", "DD"
PropagatorKind kind_from_derivatives(bool left, bool right);
int left_derivatives(PropagatorKind k);
int right_derivatives(PropagatorKind k);

enum class RepAtomKind { Epsilon, Delta };

struct RepAtom {
  RepAtomKind kind;
  int i = 0, j = 1;  // argument t_i - t_j
  Rational weight;
};

// Bivariate representation in (t, s) = (var 0, var 1):
//   smooth + eps(t - s) * eps_coeff + sum of delta atoms.
// region_less / region_greater are the pointwise values off the diagonal.
struct PiecewiseRep {
  Poly region_less;
  Poly region_greater;
  Poly smooth;
  Poly eps_coeff;
  std::vector<RepAtom> singular_atoms;  // the eps atom of Dl/Dr and the delta atom of DD
};

PiecewiseRep symbolic_rep(PropagatorKind kind);

// Regular closed form, beta > 0, t and s in [0, beta].
// Throws std::domain_error("on-diagonal ambiguous") for Dl/Dr at t == s and
// std::domain_error("distributional kind") for DD.
double eval_numeric(PropagatorKind kind, double t, double s, double beta);

// Equal-time value poly(t) + delta0_coeff * delta(0).
// eps(0) = 0, so Dl and Dr share the diagonal 1/2 - t/beta; DD gives delta(0) - 1/beta.
struct Diagonal {
  Poly poly;  // one variable
  Rational delta0_coeff;
  bool distributional() const { return !delta0_coeff.is_zero(); }
};

Diagonal diagonal(PropagatorKind kind);

}  // namespace wlreg
