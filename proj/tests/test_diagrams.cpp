#include "wlreg/diagrams.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wlreg;

namespace {

long long double_factorial_odd(int m) {  // m!! for odd m, 1 for m <= 0
  long long r = 1;
  for (int k = m; k > 1; k -= 2) r *= k;
  return r;
}

int legs(const std::vector<Vertex>& t) {
  int n = 0;
  for (const auto& v : t) n += v.q_power + v.qdot_power;
  return n;
}

std::map<std::string, std::vector<std::string>> weights_by_category(const std::vector<Diagram>& ds) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& d : ds) out[d.category].push_back(d.weight().str());
  for (auto& [c, w] : out) std::sort(w.begin(), w.end());
  return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Diagrams, MultiplicitiesExhaustAllPairings) {
  const std::vector<MetricModel> models = {FlatTransform{}, NormalCoords{}, ArbitraryCoords{}};
  for (const auto& m : models)
    for (int order = 1; order <= 2; ++order) {
      if (std::holds_alternative<ArbitraryCoords>(m) && order == 2) continue;
      for (const auto& tuple : vertex_tuples(m, order)) {
        long long sum = 0;
        for (const auto& d : wick(m, tuple, false)) sum += d.multiplicity;
        EXPECT_EQ(sum, double_factorial_odd(legs(tuple) - 1)) << model_name(m) << " " << tuple[0].name;
        EXPECT_EQ(total_pairings(tuple), double_factorial_odd(legs(tuple) - 1));
        long long connected = 0;
        for (const auto& d : wick(m, tuple, true)) {
          EXPECT_TRUE(d.connected);
          connected += d.multiplicity;
        }
        EXPECT_LE(connected, sum);
      }
    }
}

TEST(Diagrams, PrefactorsFollowTheExpansion) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  for (int trial = 0; trial < 5; ++trial) {
    FlatTransform f{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    for (int order = 1; order <= 2; ++order)
      for (const auto& d : catalog(f, order)) {
        auto verts = vertices(f, 2);
        Rational expect = d.vertex_names.size() == 1 ? Rational(-1) : Rational(1);
        if (d.vertex_names.size() == 2 && d.vertex_names[0] == d.vertex_names[1]) expect *= Rational(1, 2);
        int d0 = 0;
        for (const auto& n : d.vertex_names)
          for (const auto& v : verts)
            if (v.name == n) {
              expect *= v.coefficient;
              d0 += v.delta0_power;
            }
        EXPECT_EQ(d.prefactor, expect) << d.str();
        EXPECT_EQ(d.delta0_power, d0);
        EXPECT_EQ(d.weight(), RegValue::term(0, d0, expect * Rational(d.multiplicity)));
        EXPECT_EQ(d.labels.at(TensorLabel::One), Rational(d.multiplicity));
      }
  }
}

TEST(Diagrams, FlatCatalogOrderOne) {
  auto ds = catalog(FlatTransform{}, 1);
  ASSERT_EQ(ds.size(), 3u);
  auto w = weights_by_category(ds);
  EXPECT_EQ(w["first-order"], sorted({"2", "1", "-1 * delta0"}));
}

TEST(Diagrams, FlatCatalogOrderTwo) {
  auto ds = catalog(FlatTransform{}, 2);
  auto w = weights_by_category(ds);
  EXPECT_EQ(w["local"], sorted({"-18", "-9/2", "3/2 * delta0"}));
  EXPECT_EQ(w["three-bubble"], sorted({"8", "8", "8", "1", "8", "2", "1"}));
  EXPECT_EQ(w["watermelon"], sorted({"2", "8", "2"}));
  // K1-J1: both J1 legs end on K1, whose other two legs close on themselves (qq, qd or dd): 3 shapes.
  // J1-J1: a single shape. No other vertex pair carries delta(0).
  EXPECT_EQ(w["jacobian"], sorted({"-8 * delta0", "-2 * delta0", "-2 * delta0", "1 * delta0^2"}));
  EXPECT_EQ(w.count("nonlocal"), 0u);
  for (const auto& d : ds) {
    if (d.category == "local") EXPECT_TRUE(d.local);
    if (d.category == "watermelon") {
      int cross = 0;
      for (const auto& e : d.edges) cross += e.a != e.b;
      EXPECT_EQ(cross, 4);
    }
  }
}

TEST(Diagrams, EdgesMatchTopology) {
  for (const auto& d : catalog(NormalCoords{}, 2)) {
    EXPECT_EQ(d.edges.size(), parse_topology(d.topology).size());
    for (std::size_t k = 1; k < d.edges.size(); ++k) EXPECT_LE(d.edges[k - 1].a, d.edges[k].a);
    IntegrandTerm t = d.integrand();
    EXPECT_EQ(t.num_vars, static_cast<int>(d.vertex_names.size()));
  }
}

TEST(Diagrams, FlatSumsVanishForRandomTransformations) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  for (int trial = 0; trial < 6; ++trial) {
    FlatTransform f{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    for (int order = 1; order <= 2; ++order) {
      LabelValues s = prune(sum_order(f, order, RuleSet::dimreg()));
      EXPECT_TRUE(s.empty()) << "c1=" << f.c1.str() << " c2=" << f.c2.str() << " order " << order << ": " << str(s);
    }
  }
}

TEST(Diagrams, FlatSumUnderModeRegularizationDoesNotVanish) {
  LabelValues s = prune(sum_order(FlatTransform{}, 2, RuleSet::modereg()));
  ASSERT_EQ(s.count(TensorLabel::One), 1u);
  EXPECT_EQ(s.at(TensorLabel::One), RegValue::beta(2, Rational(-1, 36)));
}

TEST(Diagrams, NormalCoordinateSums) {
  const RuleSet dr = RuleSet::dimreg();
  LabelValues first = prune(sum_order(NormalCoords{}, 1, dr));
  EXPECT_EQ(first, (LabelValues{{TensorLabel::R, RegValue::beta(1, Rational(-1, 24))}}));
  LabelValues with_measure = first;
  accumulate(with_measure, measure_contribution(NormalCoords{}));
  EXPECT_EQ(prune(with_measure), seeley_reference(NormalCoords{}, 1));

  OrderSum second = sum_order_detailed(NormalCoords{}, 2, dr);
  EXPECT_EQ(prune(second.total), seeley_reference(NormalCoords{}, 2));
  // (1/2)(beta R/12)^2
  EXPECT_EQ(second.square.at(TensorLabel::Rsq), RegValue::beta(2, Rational(1, 288)));
  for (const auto& [l, v] : second.connected) EXPECT_EQ(v.max_delta0_power(), 0) << label_name(l);
}

TEST(Diagrams, ArbitraryCoordinatesGiveMinusROver24) {
  LabelValues s = prune(sum_order(ArbitraryCoords{}, 1, RuleSet::dimreg()));
  for (const auto& [l, v] : s) EXPECT_EQ(v.max_delta0_power(), 0) << label_name(l);
  for (std::uint64_t seed : {2u, 3u, 5u, 7u, 19u}) {
    MetricJet jet = MetricJet::random(3, seed);
    EXPECT_NEAR(evaluate_on_jet(s, jet), -jet_scalar_curvature(jet) / 24.0, 1e-9) << seed;
  }
  EXPECT_THROW(catalog(ArbitraryCoords{}, 2), std::invalid_argument);
}

TEST(Diagrams, EvaluatedContributions) {
  Reducer reducer(RuleSet::dimreg());
  for (const auto& d : catalog(FlatTransform{}, 2)) {
    EvaluatedDiagram e = evaluate_diagram(d, reducer);
    RegValue expect = RegValue::term(0, d.delta0_power, d.prefactor) * e.integral * RegValue(Rational(d.multiplicity));
    EXPECT_EQ(e.contribution.at(TensorLabel::One), expect) << d.str();
  }
}

TEST(Diagrams, JsonShape) {
  nlohmann::json j = catalog_json(FlatTransform{}, 2);
  EXPECT_EQ(j["model"], "flat");
  EXPECT_EQ(j["order"], 2);
  ASSERT_EQ(j["diagrams"].size(), 17u);
  const auto& d = j["diagrams"][0];
  for (const char* key : {"vertices", "topology", "edges", "multiplicity", "prefactor", "delta0_power", "weight",
                          "labels", "local", "category"})
    EXPECT_TRUE(d.contains(key)) << key;
  for (const auto& e : d["edges"]) EXPECT_GE(e["a"].get<int>(), 1);
}
