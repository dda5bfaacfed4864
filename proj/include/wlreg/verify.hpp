#pragma once

#include "wlreg/diagrams.hpp"
#include "wlreg/registry.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wlreg {

struct CheckReport {
  enum class Status { Pass, Fail, Error };
  std::string name;
  Status status = Status::Error;
  nlohmann::json expected;
  nlohmann::json actual;
  std::optional<double> tolerance;  // nullopt: exact comparison
  std::vector<std::string> details;
  nlohmann::json move_logs;  // null unless requested

  bool passed() const { return status == Status::Pass; }
  nlohmann::json to_json() const;
};

std::string status_name(CheckReport::Status s);  // "pass", "fail", "error"

// Named two-loop integrals against their reference values.
CheckReport check_integral_table(const RuleSet& rules, bool with_logs = false);
// I8R + 4 I9 + I10 = -beta^2/120 and I8R - 2 I9 + I10 = 0.
CheckReport check_watermelon_system(const RuleSet& rules);
// I11..I13 values, I14 + I15R = -beta/12, 3 I14 + I15R = 0, and the covariant first-order total
// of the arbitrary-coordinate model (label form and -R/24 on random metric jets).
CheckReport check_covariance_constraints(const RuleSet& rules, bool with_logs = false);
// Connected flat sum vanishes, every delta(0) grade separately.
CheckReport check_flat(int order, const RuleSet& rules);
// Normal-coordinate total (diagrams, measure, squared first order) against the short-time expansion.
CheckReport check_seeley(int order, const RuleSet& rules = RuleSet::dimreg());
// Both coordinate-independence statements must fail under the mode-regularization rules.
CheckReport check_scheme_falsification();
// Substituting sphere curvatures into the normal-coordinate coefficients gives the sphere polynomial.
CheckReport check_sphere_consistency(int d_min = 2, int d_max = 10);

struct SpectralResult {
  double partial_sum = 0;
  double amplitude = 0;
  double expansion = 0;
  double deviation = 0;  // |amplitude / expansion - 1|
  bool extended = false;  // recomputed in 50-digit arithmetic
};
// Throws std::invalid_argument for beta <= 0, r <= 0, D < 2, or too small l_max.
SpectralResult sphere_spectral(int D, double r, double beta, int lmax, double tolerance = 1e-6);
CheckReport sphere_spectral_check(int D, double r, double beta, int lmax, double tolerance = 1e-6);
// Deviation ratios between successive betas of {0.04, 0.02, 0.01} lie in [6, 10].
CheckReport sphere_scaling_check(int D = 3, double r = 1.0, int lmax = 1000);
// Heat-kernel degeneracy of level l on S^(D-1).
double sphere_degeneracy(int D, int l);

// Regularized level sums on S^2 from stored zeta values, assembled into the trace expansion.
CheckReport zeta_series_check();

// Cumulant series of the time-dependent mass term against -1/2 delta(0) int log Z, order by order in u.
CheckReport measure_cancellation(const Poly& profile, int max_order, const std::string& label = "");
CheckReport measure_cancellation(const std::string& profile, int max_order);

// Diagram counts and weights per category.
CheckReport catalog_check();
// Move log of I14 is free of MuNu substitutions; the 1D route with a MuNu factor is rejected.
CheckReport legality_audit(bool with_logs = false);

// Runs a named group: "flat", "normal" (= "seeley"), "arbitrary", "zeta", "sphere", "measure", "catalog",
// "integrals", "legality", "all". Checks run concurrently; the result order is fixed.
std::vector<CheckReport> run_case(const std::string& name, const RuleSet& rules, int order = 0, bool with_logs = false);

}  // namespace wlreg
