#include "wlreg/verify.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace wlreg;

namespace {

// Dimension of degree-l harmonic polynomials in D variables.
double harmonic_dimension(int D, int l) {
  auto binom = [](int n, int k) {
    if (k < 0 || n < k) return 0.0;
    double b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  return binom(l + D - 1, D - 1) - binom(l + D - 3, D - 1);
}

std::string joined(const CheckReport& r) {
  std::string s;
  for (const auto& d : r.details) s += d + "\n";
  return s;
}

}  // namespace

TEST(Verify, DimregChecksPass) {
  const RuleSet dr = RuleSet::dimreg();
  for (const CheckReport& r : {check_integral_table(dr), check_watermelon_system(dr), check_covariance_constraints(dr),
                               check_flat(1, dr), check_flat(2, dr), check_seeley(1), check_seeley(2)})
    EXPECT_TRUE(r.passed()) << r.name << "\n" << joined(r);
}

TEST(Verify, ModeRegularizationFailsTheSameChecks) {
  const RuleSet mr = RuleSet::modereg();
  CheckReport flat = check_flat(2, mr);
  EXPECT_EQ(flat.status, CheckReport::Status::Fail);
  EXPECT_EQ(check_covariance_constraints(mr).status, CheckReport::Status::Fail);
  EXPECT_EQ(check_integral_table(mr).status, CheckReport::Status::Fail);
  CheckReport f = check_scheme_falsification();
  EXPECT_TRUE(f.passed()) << joined(f);
  EXPECT_EQ(f.actual["flat_order2"], "-1/36 * beta^2");
}

TEST(Verify, SphereConsistency) {
  CheckReport r = check_sphere_consistency();
  EXPECT_TRUE(r.passed()) << joined(r);
}

TEST(Verify, SphereDegeneracies) {
  EXPECT_DOUBLE_EQ(sphere_degeneracy(3, 2), 5.0);
  EXPECT_DOUBLE_EQ(sphere_degeneracy(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(sphere_degeneracy(2, 7), 2.0);
  for (int D = 2; D <= 10; ++D)
    for (int l = 0; l <= 20; ++l) EXPECT_NEAR(sphere_degeneracy(D, l), harmonic_dimension(D, l), 1e-9) << D << " " << l;
  EXPECT_THROW(sphere_degeneracy(1, 0), std::invalid_argument);
}

TEST(Verify, SphereSpectralSum) {
  SpectralResult s = sphere_spectral(3, 1.0, 0.01, 1000);
  EXPECT_LT(s.deviation, 1e-6);
  EXPECT_GT(s.partial_sum, 0);
  CheckReport r = sphere_spectral_check(3, 1.0, 0.01, 1000);
  EXPECT_TRUE(r.passed()) << joined(r);
  EXPECT_TRUE(sphere_spectral_check(4, 2.0, 0.02, 1000).passed());
  CheckReport scaling = sphere_scaling_check();
  EXPECT_TRUE(scaling.passed()) << joined(scaling);
}

TEST(Verify, SphereSpectralRejectsBadInput) {
  EXPECT_THROW(sphere_spectral(3, 1.0, 0.01, 10), std::invalid_argument);
  EXPECT_THROW(sphere_spectral(3, 1.0, -0.01, 1000), std::invalid_argument);
  EXPECT_THROW(sphere_spectral(3, 0.0, 0.01, 1000), std::invalid_argument);
  EXPECT_THROW(sphere_spectral(1, 1.0, 0.01, 1000), std::invalid_argument);
  CheckReport r = sphere_spectral_check(3, 1.0, 0.01, 10);
  EXPECT_EQ(r.status, CheckReport::Status::Error);
  EXPECT_NE(joined(r).find("l_max"), std::string::npos);
}

TEST(Verify, ZetaSeries) {
  CheckReport r = zeta_series_check();
  EXPECT_TRUE(r.passed()) << joined(r);
}

TEST(Verify, MeasureCancellation) {
  for (const char* p : {"1", "t/beta", "t*(beta-t)/beta^2", "2*t^2/beta^2 - 1"}) {
    CheckReport r = measure_cancellation(std::string(p), 6);
    EXPECT_TRUE(r.passed()) << p << "\n" << joined(r);
  }
  EXPECT_EQ(measure_cancellation(std::string("t^"), 3).status, CheckReport::Status::Error);
}

TEST(Verify, CatalogCheckReportsTheJacobianCount) {
  CheckReport r = catalog_check();
  // The engine finds four Jacobian diagrams; the reference count is five.
  EXPECT_EQ(r.status, CheckReport::Status::Fail);
  EXPECT_EQ(r.actual["jacobian"]["count"], 4);
  EXPECT_EQ(r.expected["jacobian"]["count"], 5);
  for (const char* c : {"first-order", "local", "three-bubble", "watermelon"})
    EXPECT_EQ(r.actual[c]["count"], r.expected[c]["count"]) << c;
}

TEST(Verify, LegalityAudit) {
  CheckReport r = legality_audit(true);
  EXPECT_TRUE(r.passed()) << joined(r);
  EXPECT_FALSE(r.move_logs.is_null());
}

TEST(Verify, ReportJson) {
  CheckReport r = check_watermelon_system(RuleSet::dimreg());
  nlohmann::json j = r.to_json();
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["tolerance"], "exact");
  for (const char* key : {"check", "expected", "actual", "details"}) EXPECT_TRUE(j.contains(key));
  EXPECT_FALSE(j.contains("move_logs"));
  EXPECT_TRUE(sphere_spectral_check(3, 1.0, 0.01, 1000).to_json()["tolerance"].is_number());
}

TEST(Verify, RunCaseGroups) {
  const RuleSet dr = RuleSet::dimreg();
  auto flat = run_case("flat", dr);
  ASSERT_EQ(flat.size(), 2u);
  EXPECT_EQ(flat[0].name, "flat_order1/" + dr.str());
  EXPECT_EQ(run_case("flat", dr, 2).size(), 1u);
  auto normal = run_case("normal", dr);
  auto seeley = run_case("seeley", dr);
  ASSERT_EQ(normal.size(), seeley.size());
  for (std::size_t k = 0; k < normal.size(); ++k) EXPECT_EQ(normal[k].name, seeley[k].name);
  EXPECT_THROW(run_case("everything", dr), std::invalid_argument);
  auto all = run_case("all", dr);
  int failing = 0;
  for (const auto& r : all)
    if (!r.passed()) {
      ++failing;
      EXPECT_EQ(r.name, "catalog");
    }
  EXPECT_EQ(failing, 1);
}
