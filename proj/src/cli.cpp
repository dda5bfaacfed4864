#include "wlreg/cli.hpp"

#include "wlreg/diagrams.hpp"
#include "wlreg/registry.hpp"
#include "wlreg/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

namespace wlreg::cli {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInvalid = 2;

nlohmann::json regvalue_json(const RegValue& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : v.terms())
    terms.push_back({{"beta_power", k.beta_power}, {"delta0_power", k.delta0_power}, {"coefficient", c.str()}});
  return {{"text", v.str()}, {"terms", terms}};
}

void print_log(std::ostream& out, const std::vector<LogEntry>& log) {
  for (const auto& e : log) {
    out << "  " << std::string(static_cast<std::size_t>(2 * e.depth), ' ') << "[" << e.status << "] " << e.move;
    if (!e.target.empty()) out << " on " << e.target;
    if (!e.tag.empty()) out << " (" << e.tag << ")";
    if (!e.detail.empty()) out << ": " << e.detail;
    out << "\n";
  }
}

struct Options {
  std::string ruleset = "dimreg";
  int order = 0;
  std::string check_case = "all";
  bool json = false;
  bool dump_moves = false;
  double beta = 0.01;
  int D = 3;
  double r = 1.0;
  int lmax = 1000;
  std::string profile = "1";
  int max_order = 6;
  std::string model = R"({"model":"flat"})";
  std::string expr;
};

int do_integral(const Options& o, std::ostream& out) {
  RuleSet rules = RuleSet::by_name(o.ruleset);
  RegValue value;
  std::vector<LogEntry> log;
  std::string method = "dimreg";
  bool named = false;
  for (const auto& e : registry())
    if (e.name == o.expr) named = true;
  if (named) {
    NamedResult r = evaluate_named(o.expr, rules);
    value = r.value;
    log = std::move(r.log);
  } else {
    Integrand in = parse_integrand(o.expr);
    try {
      ReduceResult r = reduce(in, rules);
      value = r.value;
      log = std::move(r.log);
    } catch (const IllegalMove&) {
      // No d-dimensional form (explicit eps/delta atoms, polynomials, odd derivative counts).
      value = integrate(in, rules);
      method = "direct";
    }
  }
  if (o.json) {
    nlohmann::json j = {{"integral", o.expr}, {"ruleset", rules.str()}, {"method", method}, {"value", regvalue_json(value)}};
    if (o.dump_moves) j["move_log"] = log_to_json(log);
    out << j.dump(2) << "\n";
  } else {
    out << o.expr << " = " << value.str() << "\n";
    if (o.dump_moves) print_log(out, log);
  }
  return kPass;
}

int report_checks(const std::vector<CheckReport>& reports, const Options& o, std::ostream& out) {
  bool all = true;
  for (const auto& r : reports) all = all && r.passed();
  if (o.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      out << std::left << std::setw(6) << status_name(r.status) << " " << r.name << "\n";
      for (const auto& d : r.details) out << "       " << d << "\n";
      if (o.dump_moves && !r.move_logs.is_null()) out << r.move_logs.dump(2) << "\n";
    }
    out << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return all ? kPass : kFail;
}

int do_verify(const Options& o, std::ostream& out) {
  RuleSet rules = RuleSet::by_name(o.ruleset);
  return report_checks(run_case(o.check_case, rules, o.order, o.dump_moves), o, out);
}

int do_catalog(const Options& o, std::ostream& out) {
  MetricModel model = parse_model(nlohmann::json::parse(o.model));
  std::vector<int> orders = o.order == 0 ? std::vector<int>{1, 2} : std::vector<int>{o.order};
  if (std::holds_alternative<ArbitraryCoords>(model)) orders = {1};
  if (o.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (int ord : orders) arr.push_back(catalog_json(model, ord));
    out << arr.dump(2) << "\n";
    return kPass;
  }
  for (int ord : orders) {
    out << "order " << ord << " (" << model_name(model) << ")\n";
    for (const auto& d : catalog(model, ord)) {
      out << "  " << std::left << std::setw(13) << d.category << " " << d.str();
      if (!std::holds_alternative<FlatTransform>(model)) {
        out << " labels {";
        bool first = true;
        for (const auto& [l, c] : d.labels) {
          out << (first ? "" : ", ") << label_name(l) << ": " << c.str();
          first = false;
        }
        out << "}";
      }
      out << "\n";
    }
  }
  return kPass;
}

int do_sphere(const Options& o, std::ostream& out) {
  // Parameter problems are input errors, not check failures.
  sphere_spectral(o.D, o.r, o.beta, o.lmax);
  return report_checks({sphere_spectral_check(o.D, o.r, o.beta, o.lmax)}, o, out);
}

int do_measure(const Options& o, std::ostream& out) {
  if (o.max_order < 0 || o.max_order > 8) throw std::invalid_argument("--max-order must be in 0..8");
  Poly p = parse_profile(o.profile);
  return report_checks({measure_cancellation(p, o.max_order, o.profile)}, o, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact evaluation of worldline path-integral diagrams and regularization checks", "wlreg"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--ruleset", o.ruleset, "Integration rules")->check(CLI::IsMember({"dimreg", "modereg"}));
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_flag("--dump-moves", o.dump_moves, "Print the reduction move logs");
  };

  auto* integral = app.add_subcommand("integral", "Evaluate a named integral or an integrand expression");
  integral->add_option("expr", o.expr, "Registry name (I2 ... I15div) or integrand text")->required();
  add_common(integral);

  auto* verify = app.add_subcommand("verify", "Run verification checks");
  verify->add_option("--case", o.check_case, "Check group")
      ->check(CLI::IsMember({"flat", "normal", "arbitrary", "seeley", "zeta", "sphere", "measure", "catalog",
                             "integrals", "legality", "falsification", "all"}));
  verify->add_option("--order", o.order, "Perturbative order (default: both)")->check(CLI::IsMember({1, 2}));
  add_common(verify);

  auto* catalog_cmd = app.add_subcommand("catalog", "List the diagram catalog");
  catalog_cmd->add_option("--order", o.order, "Perturbative order (default: both)")->check(CLI::IsMember({1, 2}));
  catalog_cmd->add_option("--model", o.model, "Model JSON, e.g. {\"model\":\"normal\"}");
  catalog_cmd->add_flag("--json", o.json, "Machine-readable output");

  auto* sphere = app.add_subcommand("sphere", "Spectral sum on the sphere against the short-time expansion");
  sphere->add_option("--D", o.D, "Embedding dimension (sphere S^(D-1))");
  sphere->add_option("--r", o.r, "Radius");
  sphere->add_option("--beta", o.beta, "Euclidean time");
  sphere->add_option("--lmax", o.lmax, "Highest level in the spectral sum");
  sphere->add_flag("--json", o.json, "Machine-readable output");

  auto* measure = app.add_subcommand("measure-cancel", "Cumulant series of a time-dependent mass term");
  measure->add_option("--profile", o.profile, "Polynomial p(t) in t and beta, e.g. t*(beta-t)/beta^2");
  measure->add_option("--max-order", o.max_order, "Highest order in u (at most 8)");
  measure->add_flag("--json", o.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kInvalid;
  }

  try {
    if (*integral) return do_integral(o, out);
    if (*verify) return do_verify(o, out);
    if (*catalog_cmd) return do_catalog(o, out);
    if (*sphere) return do_sphere(o, out);
    if (*measure) return do_measure(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kInvalid;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace wlreg::cli
