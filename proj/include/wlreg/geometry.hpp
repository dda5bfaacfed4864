#pragma once

#include "wlreg/exactalg.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wlreg {

// Scalar markers multiplying diagram values. Curvature labels use R = R_ijji, Ric_jk = R_ijki.
// The seven arbitrary-coordinate labels form a basis of the quadratic metric-jet scalars at g = 1
// (a_ijk = d_k g_ij, b_ijkl = d_k d_l g_ij, G_ijk = Christoffel symbol with lowered last index):
//   HessianTrace b_iikk, HessianCross b_ijij,
//   TraceTrace  A,  TraceMixed A + B,  TraceChain C + A + 2B,
//   CrossedPair GG2 + 3 GG3,  CrossedLoop GG2 + GG3,
// with A = G_lii G_ljj, B = G_lii G_jjl, C = G_iij G_kkj, GG2 = G_iln G_iln, GG3 = G_iln G_nil.
enum class TensorLabel {
  One,
  R,
  Rsq,
  RicciSq,
  RiemannSq,
  HessianTrace,
  HessianCross,
  TraceTrace,
  TraceMixed,
  TraceChain,
  CrossedPair,
  CrossedLoop
};

std::string label_name(TensorLabel l);
TensorLabel label_from_name(const std::string& name);  // throws std::invalid_argument

using LabelCombo = std::map<TensorLabel, Rational>;
using LabelValues = std::map<TensorLabel, RegValue>;

LabelValues scale(const LabelCombo& c, const RegValue& v);
void accumulate(LabelValues& into, const LabelValues& add);
// Product of label sums; One is the unit and R * R = Rsq. Other products are not representable.
LabelValues label_product(const LabelValues& a, const LabelValues& b);
// Drops zero entries.
LabelValues prune(const LabelValues& v);
nlohmann::json to_json(const LabelValues& v);
std::string str(const LabelValues& v);

struct Vertex {
  std::string name;
  Rational order_in_eps;  // 1/2, 1 or 2
  int q_power = 0;
  int qdot_power = 0;     // 0 or 2
  int delta0_power = 0;   // 0 or 1
  Rational coefficient;   // multiplies the tensor (curved) or the field monomial (flat)
  std::string tensor;     // tensor structure of the vertex, for reports
};

// x = q + c1 eps q^3 + c2 eps^2 q^5.
struct FlatTransform {
  Rational c1{-1, 3};
  Rational c2{1, 5};
};
struct NormalCoords {
  int dimension = 0;  // 0: symbolic
};
struct ArbitraryCoords {};
struct Sphere {
  int D = 3;
  double r = 1.0;
};
using MetricModel = std::variant<FlatTransform, NormalCoords, ArbitraryCoords, Sphere>;

std::string model_name(const MetricModel& m);  // "flat", "normal", "arbitrary", "sphere"
// {"model":"flat","c1":"-1/3","c2":"1/5"}, {"model":"normal"}, {"model":"arbitrary"}, {"model":"sphere","D":3,"r":1.0}
MetricModel parse_model(const nlohmann::json& j);

// Interaction vertices through max_order (1 or 2). Sphere models use the normal-coordinate vertices.
std::vector<Vertex> vertices(const MetricModel& m, int max_order);

// Topology key of a set of Wick lines, "0q-0q,0d-1q,...": each line joins (vertex, q|d) legs.
// With symmetric set, the two vertices are of the same type and the smaller of both labelings is kept.
using Leg = std::pair<int, int>;  // (vertex slot, 0 = q, 1 = qdot)
std::string topology_key(std::vector<std::pair<Leg, Leg>> lines, bool symmetric);
std::vector<std::pair<Leg, Leg>> parse_topology(const std::string& key);

// Bare tensor contraction (vertex coefficients excluded) summed over all Wick pairings of the given
// topology. nullopt for the scalar flat model, where every pairing contributes One.
std::optional<LabelCombo> contraction(const MetricModel& m, const std::vector<std::string>& vertex_names,
                                      const std::string& topology);

// Exponent contribution of the path-integral measure at first order.
LabelValues measure_contribution(const MetricModel& m);

// Curvature invariants of the round sphere S^(D-1) of radius r: coefficient times r^r_power.
struct CurvatureValue {
  Rational coefficient;
  int r_power = 0;
  double at(double r) const;
};
std::map<TensorLabel, CurvatureValue> sphere_tensors(int D);

// Order-k coefficient of the short-time expansion of the diagonal amplitude (relative to the free one).
// NormalCoords: label form. Sphere: {One: c_k beta^k} with beta measured in units of r^2.
LabelValues seeley_reference(const MetricModel& m, int order);
// Substitutes sphere curvature values (in units r = 1) into a curvature label sum.
RegValue substitute_sphere(const LabelValues& v, int D);

// g(q) = f'(q)^2 as coefficients of eps^k q^(2k), k = 0..2.
std::vector<Rational> flat_metric_series(const FlatTransform& f);

// Numeric metric jet at the origin for the arbitrary-coordinate model.
struct MetricJet {
  int n = 0;
  std::vector<double> a;  // a[(i*n + j)*n + k] = d_k g_ij
  std::vector<double> b;  // b[((i*n + j)*n + k)*n + l] = d_k d_l g_ij
  static MetricJet random(int n, std::uint64_t seed);
  double A(int i, int j, int k) const { return a[(i * n + j) * n + k]; }
  double B(int i, int j, int k, int l) const { return b[((i * n + j) * n + k) * n + l]; }
};

std::map<TensorLabel, double> jet_label_values(const MetricJet& jet);
// R_abab with R_abcd = 1/2 (b_adbc + b_bcad - b_bdac - b_acbd) + G_bcn G_adn - G_bdn G_acn.
double jet_scalar_curvature(const MetricJet& jet);
// Evaluates a label sum on a jet at beta = 1 (delta(0)-free parts only).
double evaluate_on_jet(const LabelValues& v, const MetricJet& jet);

}  // namespace wlreg
