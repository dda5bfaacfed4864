#include "wlreg/worldline.hpp"

#include <stdexcept>

namespace wlreg {

std::string kind_name(PropagatorKind k) {
  switch (k) {
    case PropagatorKind::D: return "D";
    case PropagatorKind::DotLeft: return "Dl";
    case PropagatorKind::DotRight: return "Dr";
    case PropagatorKind::DotDot: return "DD";
  }
  return "?";
}

PropagatorKind kind_from_derivatives(bool left, bool right) {
  if (left && right) return PropagatorKind::DotDot;
  if (left) return PropagatorKind::DotLeft;
  if (right) return PropagatorKind::DotRight;
  return PropagatorKind::D;
}

int left_derivatives(PropagatorKind k) {
  return (k == PropagatorKind::DotLeft || k == PropagatorKind::DotDot) ? 1 : 0;
}

int right_derivatives(PropagatorKind k) {
  return (k == PropagatorKind::DotRight || k == PropagatorKind::DotDot) ? 1 : 0;
}

PiecewiseRep symbolic_rep(PropagatorKind kind) {
  const Poly t = Poly::variable(2, 0);
  const Poly s = Poly::variable(2, 1);
  const Rational half(1, 2);
  PiecewiseRep rep;
  switch (kind) {
    case PropagatorKind::D:
      // (1/2)[-eps(t-s)(t-s) + t + s] - t s / beta
      rep.smooth = half * (t + s) - (t * s).times_beta(-1);
      rep.eps_coeff = -half * (t - s);
      break;
    case PropagatorKind::DotLeft:
      rep.smooth = Poly::constant(2, half) - s.times_beta(-1);
      rep.eps_coeff = Poly::constant(2, -half);
      rep.singular_atoms.push_back({RepAtomKind::Epsilon, 0, 1, -half});
      break;
    case PropagatorKind::DotRight:
      rep.smooth = Poly::constant(2, half) - t.times_beta(-1);
      rep.eps_coeff = Poly::constant(2, half);
      rep.singular_atoms.push_back({RepAtomKind::Epsilon, 0, 1, half});
      break;
    case PropagatorKind::DotDot:
      rep.smooth = Poly::constant(2, -1, -1);
      rep.eps_coeff = Poly(2);
      rep.singular_atoms.push_back({RepAtomKind::Delta, 0, 1, Rational(1)});
      break;
  }
  rep.region_less = rep.smooth - rep.eps_coeff;
  rep.region_greater = rep.smooth + rep.eps_coeff;
  return rep;
}

double eval_numeric(PropagatorKind kind, double t, double s, double beta) {
  if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
  if (t < 0.0 || t > beta || s < 0.0 || s > beta) throw std::domain_error("time argument outside [0, beta]");
  double eps = t > s ? 1.0 : (t < s ? -1.0 : 0.0);
  switch (kind) {
    case PropagatorKind::D:
      return 0.5 * (-eps * (t - s) + t + s) - t * s / beta;
    case PropagatorKind::DotLeft:
      if (t == s) throw std::domain_error("on-diagonal ambiguous");
      return -0.5 * eps + 0.5 - s / beta;
    case PropagatorKind::DotRight:
      if (t == s) throw std::domain_error("on-diagonal ambiguous");
      return 0.5 * eps + 0.5 - t / beta;
    case PropagatorKind::DotDot:
      throw std::domain_error("distributional kind");
  }
  return 0.0;
}

Diagonal diagonal(PropagatorKind kind) {
  const Poly t = Poly::variable(1, 0);
  switch (kind) {
    case PropagatorKind::D:
      return {t - (t * t).times_beta(-1), Rational(0)};
    case PropagatorKind::DotLeft:
    case PropagatorKind::DotRight:
      return {Poly::constant(1, Rational(1, 2)) - t.times_beta(-1), Rational(0)};
    case PropagatorKind::DotDot:
      return {Poly::constant(1, -1, -1), Rational(1)};
  }
  return {};
}

}  // namespace wlreg
