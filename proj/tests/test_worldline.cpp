#include "wlreg/worldline.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wlreg;

namespace {

// Independent closed forms: D = min(t, s) - t s / beta and its derivatives off the diagonal.
double oracle(PropagatorKind k, double t, double s, double beta) {
  switch (k) {
    case PropagatorKind::D: return std::min(t, s) - t * s / beta;
    case PropagatorKind::DotLeft: return (t < s ? 1.0 : 0.0) - s / beta;
    case PropagatorKind::DotRight: return (s < t ? 1.0 : 0.0) - t / beta;
    default: return -1.0 / beta;  // regular part of the double derivative
  }
}

Poly tvar() { return Poly::variable(1, 0); }

}  // namespace

TEST(Worldline, SymbolicRepExamples) {
  Poly t = Poly::variable(2, 0), s = Poly::variable(2, 1);
  PiecewiseRep d = symbolic_rep(PropagatorKind::D);
  EXPECT_EQ(d.region_less, t - (t * s).times_beta(-1));
  EXPECT_EQ(d.region_greater, s - (t * s).times_beta(-1));
  PiecewiseRep dl = symbolic_rep(PropagatorKind::DotLeft);
  EXPECT_EQ(dl.eps_coeff, Poly::constant(2, Rational(-1, 2)));
  EXPECT_EQ(dl.smooth, Poly::constant(2, Rational(1, 2)) - s.times_beta(-1));
  PiecewiseRep dd = symbolic_rep(PropagatorKind::DotDot);
  EXPECT_EQ(dd.smooth, Poly::constant(2, -1, -1));
  ASSERT_EQ(dd.singular_atoms.size(), 1u);
  EXPECT_EQ(dd.singular_atoms[0].kind, RepAtomKind::Delta);
}

TEST(Worldline, NumericExamplesAndErrors) {
  const double b = 3.0;
  EXPECT_NEAR(eval_numeric(PropagatorKind::D, b / 2, b / 2, b), b / 4, 1e-15);
  EXPECT_NEAR(eval_numeric(PropagatorKind::D, 0.0, b / 3, b), 0.0, 1e-15);
  EXPECT_NEAR(eval_numeric(PropagatorKind::DotLeft, b / 4, b / 2, b), 0.5, 1e-15);
  EXPECT_THROW(eval_numeric(PropagatorKind::DotLeft, 1.0, 1.0, b), std::domain_error);
  EXPECT_THROW(eval_numeric(PropagatorKind::DotDot, 1.0, 2.0, b), std::domain_error);
}

TEST(Worldline, NumericAgreesWithRegionsAtRandomPoints) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> beta_dist(0.5, 4.0), unit(0.0, 1.0);
  for (auto k : {PropagatorKind::D, PropagatorKind::DotLeft, PropagatorKind::DotRight}) {
    PiecewiseRep rep = symbolic_rep(k);
    for (int i = 0; i < 1000; ++i) {
      double beta = beta_dist(rng), t = beta * unit(rng), s = beta * unit(rng);
      if (t == s) continue;
      const Poly& region = t < s ? rep.region_less : rep.region_greater;
      double sym = region.evaluate({t, s}, beta);
      EXPECT_NEAR(eval_numeric(k, t, s, beta), sym, 1e-12);
      EXPECT_NEAR(oracle(k, t, s, beta), sym, 1e-12);
    }
  }
}

TEST(Worldline, SymmetryAndDirichlet) {
  PiecewiseRep d = symbolic_rep(PropagatorKind::D);
  std::vector<int> swap = {1, 0};
  EXPECT_EQ(d.region_less.remap(swap, 2), d.region_greater);
  PiecewiseRep l = symbolic_rep(PropagatorKind::DotLeft), r = symbolic_rep(PropagatorKind::DotRight);
  EXPECT_EQ(l.region_less.remap(swap, 2), r.region_greater);
  EXPECT_EQ(l.region_greater.remap(swap, 2), r.region_less);
  // Vanishes with either argument on the boundary.
  EXPECT_TRUE(d.region_less.at_endpoint(0, false).is_zero());
  EXPECT_TRUE(d.region_less.at_endpoint(1, true).is_zero());
  EXPECT_TRUE(d.region_greater.at_endpoint(1, false).is_zero());
  EXPECT_TRUE(d.region_greater.at_endpoint(0, true).is_zero());
}

TEST(Worldline, EquationOfMotionOnRegions) {
  PiecewiseRep d = symbolic_rep(PropagatorKind::D);
  EXPECT_TRUE(d.region_less.derivative(0).derivative(0).is_zero());
  EXPECT_TRUE(d.region_greater.derivative(0).derivative(0).is_zero());
  // Jump of d/dt across t = s from below to above is -1.
  Poly jump = (d.region_greater.derivative(0) - d.region_less.derivative(0)).substitute_var(1, 0);
  EXPECT_EQ(jump, Poly::constant(2, -1).substitute_var(1, 0));
}

TEST(Worldline, Diagonals) {
  Poly t = tvar();
  Diagonal dd = diagonal(PropagatorKind::D);
  EXPECT_EQ(dd.poly, t - (t * t).times_beta(-1));
  EXPECT_FALSE(dd.distributional());
  EXPECT_EQ(dd.poly.integrate(0).to_regvalue(), RegValue::beta(2, Rational(1, 6)));
  EXPECT_EQ(dd.poly.pow(2).integrate(0).to_regvalue(), RegValue::beta(3, Rational(1, 30)));

  Diagonal dl = diagonal(PropagatorKind::DotLeft);
  EXPECT_EQ(dl.poly, diagonal(PropagatorKind::DotRight).poly);
  EXPECT_EQ(dl.poly, Poly::constant(1, Rational(1, 2)) - t.times_beta(-1));
  EXPECT_EQ(dl.poly.pow(2).integrate(0).to_regvalue(), RegValue::beta(1, Rational(1, 12)));

  Diagonal ddd = diagonal(PropagatorKind::DotDot);
  EXPECT_TRUE(ddd.distributional());
  EXPECT_EQ(ddd.delta0_coeff, Rational(1));
  EXPECT_EQ(ddd.poly, Poly::constant(1, -1, -1));

  // d/dt of the diagonals, as used in the one-dimensional reductions.
  EXPECT_EQ(dl.poly.derivative(0), Poly::constant(1, -1, -1));
  EXPECT_EQ(dd.poly.derivative(0), Rational(2) * dl.poly);
}

TEST(Worldline, KindBookkeeping) {
  for (bool l : {false, true})
    for (bool r : {false, true}) {
      PropagatorKind k = kind_from_derivatives(l, r);
      EXPECT_EQ(left_derivatives(k), l ? 1 : 0);
      EXPECT_EQ(right_derivatives(k), r ? 1 : 0);
    }
  EXPECT_EQ(kind_name(PropagatorKind::DotDot), "DD");
  EXPECT_EQ(kind_name(PropagatorKind::DotLeft), "Dl");
}
