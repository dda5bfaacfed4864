#include "wlreg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace wlreg {

namespace {

const std::vector<std::pair<TensorLabel, const char*>>& label_names() {
  static const std::vector<std::pair<TensorLabel, const char*>> names = {
      {TensorLabel::One, "One"},
      {TensorLabel::R, "R"},
      {TensorLabel::Rsq, "Rsq"},
      {TensorLabel::RicciSq, "RicciSq"},
      {TensorLabel::RiemannSq, "RiemannSq"},
      {TensorLabel::HessianTrace, "HessianTrace"},
      {TensorLabel::HessianCross, "HessianCross"},
      {TensorLabel::TraceTrace, "TraceTrace"},
      {TensorLabel::TraceMixed, "TraceMixed"},
      {TensorLabel::TraceChain, "TraceChain"},
      {TensorLabel::CrossedPair, "CrossedPair"},
      {TensorLabel::CrossedLoop, "CrossedLoop"},
  };
  return names;
}

}  // namespace

std::string label_name(TensorLabel l) {
  for (const auto& [k, n] : label_names())
    if (k == l) return n;
  return "?";
}

TensorLabel label_from_name(const std::string& name) {
  for (const auto& [k, n] : label_names())
    if (name == n) return k;
  throw std::invalid_argument("unknown tensor label: " + name);
}

LabelValues scale(const LabelCombo& c, const RegValue& v) {
  LabelValues out;
  for (const auto& [l, x] : c) {
    RegValue t = v * x;
    if (!t.is_zero()) out[l] = t;
  }
  return out;
}

void accumulate(LabelValues& into, const LabelValues& add) {
  for (const auto& [l, v] : add) {
    into[l] += v;
    if (into[l].is_zero()) into.erase(l);
  }
}

LabelValues label_product(const LabelValues& a, const LabelValues& b) {
  LabelValues out;
  for (const auto& [la, va] : a)
    for (const auto& [lb, vb] : b) {
      TensorLabel l;
      if (la == TensorLabel::One) l = lb;
      else if (lb == TensorLabel::One) l = la;
      else if (la == TensorLabel::R && lb == TensorLabel::R) l = TensorLabel::Rsq;
      else throw std::invalid_argument("label product " + label_name(la) + " * " + label_name(lb) + " is not tabulated");
      accumulate(out, {{l, va * vb}});
    }
  return out;
}

LabelValues prune(const LabelValues& v) {
  LabelValues out;
  for (const auto& [l, x] : v)
    if (!x.is_zero()) out[l] = x;
  return out;
}

nlohmann::json to_json(const LabelValues& v) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [l, x] : v) j[label_name(l)] = x.str();
  return j;
}

std::string str(const LabelValues& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, x] : v) {
    if (!first) os << "; ";
    first = false;
    os << label_name(l) << ": " << x.str();
  }
  return os.str();
}

std::string model_name(const MetricModel& m) {
  switch (m.index()) {
    case 0: return "flat";
    case 1: return "normal";
    case 2: return "arbitrary";
    default: return "sphere";
  }
}

namespace {

Rational json_rational(const nlohmann::json& j, const char* key, const Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw std::invalid_argument(std::string("model field '") + key + "' must be an integer or a rational string");
}

}  // namespace

MetricModel parse_model(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("model") || !j.at("model").is_string())
    throw std::invalid_argument("model specification needs a string field 'model'");
  const std::string name = j.at("model").get<std::string>();
  if (name == "flat") {
    FlatTransform f;
    f.c1 = json_rational(j, "c1", f.c1);
    f.c2 = json_rational(j, "c2", f.c2);
    return f;
  }
  if (name == "normal") {
    NormalCoords n;
    if (j.contains("n")) n.dimension = j.at("n").get<int>();
    return n;
  }
  if (name == "arbitrary") return ArbitraryCoords{};
  if (name == "sphere") {
    Sphere s;
    if (j.contains("D")) s.D = j.at("D").get<int>();
    if (j.contains("r")) s.r = j.at("r").get<double>();
    if (s.D < 2) throw std::invalid_argument("sphere needs D >= 2");
    if (!(s.r > 0.0)) throw std::invalid_argument("sphere needs r > 0");
    return s;
  }
  throw std::invalid_argument("unknown model: " + name);
}

std::vector<Vertex> vertices(const MetricModel& m, int max_order) {
  if (max_order < 1 || max_order > 2) throw std::invalid_argument("vertices: only orders 1 and 2 are supported");
  std::vector<Vertex> out;
  if (const auto* f = std::get_if<FlatTransform>(&m)) {
    // 1/2 (g - 1) qdot^2 and -delta(0) log f' with g = f'^2.
    out.push_back({"K1", 1, 2, 2, 0, Rational(3) * f->c1, "q^2 qdot^2"});
    out.push_back({"J1", 1, 2, 0, 1, Rational(-3) * f->c1, "q^2"});
    if (max_order >= 2) {
      out.push_back({"K2", 2, 4, 2, 0, Rational(1, 2) * (Rational(9) * f->c1 * f->c1 + Rational(10) * f->c2), "q^4 qdot^2"});
      out.push_back({"J2", 2, 4, 0, 1, -(Rational(5) * f->c2 - Rational(9, 2) * f->c1 * f->c1), "q^4"});
    }
    return out;
  }
  if (std::holds_alternative<ArbitraryCoords>(m)) {
    out.push_back({"V1", Rational(1, 2), 1, 2, 0, Rational(1, 2), "a_ijk q^k qdot^i qdot^j"});
    out.push_back({"V3", Rational(1, 2), 1, 0, 1, Rational(-1, 2), "a_iik q^k"});
    out.push_back({"V2", 1, 2, 2, 0, Rational(1, 4), "b_ijkl q^k q^l qdot^i qdot^j"});
    out.push_back({"V4", 1, 2, 0, 1, Rational(-1, 4), "(b_iikl - a_imk a_iml) q^k q^l"});
    return out;
  }
  out.push_back({"K1", 1, 2, 2, 0, Rational(1, 6), "R_ikjl q^k q^l qdot^i qdot^j"});
  out.push_back({"J1", 1, 2, 0, 1, Rational(1, 6), "Ric_kl q^k q^l"});
  if (max_order >= 2) {
    out.push_back({"K2", 2, 4, 2, 0, Rational(1, 45), "R_mjnl R_risl q^m q^n q^r q^s qdot^i qdot^j"});
    out.push_back({"J2", 2, 4, 0, 1, Rational(1, 180), "R_imjn R_knlm q^i q^j q^k q^l"});
  }
  return out;
}

std::string topology_key(std::vector<std::pair<Leg, Leg>> lines, bool symmetric) {
  auto normal = [](std::vector<std::pair<Leg, Leg>> ls) {
    for (auto& l : ls)
      if (l.second < l.first) std::swap(l.first, l.second);
    std::sort(ls.begin(), ls.end());
    return ls;
  };
  auto best = normal(lines);
  if (symmetric) {
    for (auto& l : lines) {
      l.first.first = 1 - l.first.first;
      l.second.first = 1 - l.second.first;
    }
    best = std::min(best, normal(lines));
  }
  std::string key;
  for (const auto& [x, y] : best) {
    if (!key.empty()) key += ",";
    key += std::to_string(x.first) + (x.second ? "d" : "q") + "-" + std::to_string(y.first) + (y.second ? "d" : "q");
  }
  return key;
}

std::vector<std::pair<Leg, Leg>> parse_topology(const std::string& key) {
  std::vector<std::pair<Leg, Leg>> out;
  std::stringstream ss(key);
  std::string item;
  auto leg = [&](const std::string& s) -> Leg {
    if (s.size() < 2 || (s.back() != 'q' && s.back() != 'd')) throw std::invalid_argument("bad topology leg: " + s);
    return {std::stoi(s.substr(0, s.size() - 1)), s.back() == 'd' ? 1 : 0};
  };
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("bad topology line: " + item);
    out.emplace_back(leg(item.substr(0, dash)), leg(item.substr(dash + 1)));
  }
  return out;
}

namespace {

using Table = std::map<std::string, LabelCombo>;

// Keys are re-canonicalized on load so the table does not depend on how they were written.
Table make_table(bool symmetric, std::initializer_list<std::pair<const char*, LabelCombo>> rows) {
  Table t;
  for (const auto& [k, v] : rows) t[topology_key(parse_topology(k), symmetric)] = v;
  return t;
}

const std::map<std::vector<std::string>, Table>& normal_tables() {
  using L = TensorLabel;
  static const std::map<std::vector<std::string>, Table> tables = {
      {{"K1"}, make_table(false, {{"0q-0q,0d-0d", {{L::R, -1}}}, {"0q-0d,0q-0d", {{L::R, 1}}}})},
      {{"J1"}, make_table(false, {{"0q-0q", {{L::R, 1}}}})},
      {{"K2"},
       make_table(false, {{"0q-0q,0q-0q,0d-0d", {{L::RicciSq, 1}, {L::RiemannSq, Rational(3, 2)}}},
                          {"0q-0q,0q-0d,0q-0d", {{L::RicciSq, -1}, {L::RiemannSq, Rational(-3, 2)}}}})},
      {{"J2"}, make_table(false, {{"0q-0q,0q-0q", {{L::RicciSq, 1}, {L::RiemannSq, Rational(3, 2)}}}})},
      {{"K1", "K1"},
       make_table(true, {{"0q-0q,0d-1q,0d-1q,1d-1d", {{L::RicciSq, 4}}},
                         {"0q-0q,0d-1q,0d-1d,1q-1d", {{L::RicciSq, -8}}},
                         {"0q-0q,0d-1d,0d-1d,1q-1q", {{L::RicciSq, 2}}},
                         {"0q-0d,0q-1q,0d-1q,1d-1d", {{L::RicciSq, -8}}},
                         {"0q-0d,0q-1q,0d-1d,1q-1d", {{L::RicciSq, 4}}},
                         {"0q-0d,0q-1d,0d-1q,1q-1d", {{L::RicciSq, 4}}},
                         {"0q-1q,0q-1q,0d-0d,1d-1d", {{L::RicciSq, 2}}},
                         {"0q-1q,0q-1q,0d-1d,0d-1d", {{L::RiemannSq, 3}}},
                         {"0q-1q,0q-1d,0d-1q,0d-1d", {{L::RiemannSq, -6}}},
                         {"0q-1d,0q-1d,0d-1q,0d-1q", {{L::RiemannSq, 3}}}})},
      {{"K1", "J1"},
       make_table(false, {{"0q-0q,0d-1q,0d-1q", {{L::RicciSq, -2}}},
                          {"0q-0d,0q-1q,0d-1q", {{L::RicciSq, 4}}},
                          {"0q-1q,0q-1q,0d-0d", {{L::RicciSq, -2}}}})},
      {{"J1", "J1"}, make_table(true, {{"0q-1q,0q-1q", {{L::RicciSq, 2}}}})},
  };
  return tables;
}

const std::map<std::vector<std::string>, Table>& arbitrary_tables() {
  using L = TensorLabel;
  static const std::map<std::vector<std::string>, Table> tables = {
      {{"V2"}, make_table(false, {{"0q-0d,0q-0d", {{L::HessianCross, 2}}}, {"0q-0q,0d-0d", {{L::HessianTrace, 1}}}})},
      {{"V4"}, make_table(false, {{"0q-0q", {{L::HessianTrace, 1}, {L::CrossedLoop, -2}}}})},
      {{"V1", "V1"},
       make_table(true, {{"0q-0d,0d-1d,1q-1d", {{L::TraceChain, 4}}},
                         {"0q-0d,0d-1q,1d-1d", {{L::TraceMixed, 8}}},
                         {"0q-1d,0d-1q,0d-1d", {{L::CrossedPair, 4}}},
                         {"0q-1q,0d-0d,1d-1d", {{L::TraceTrace, 4}}},
                         {"0q-1q,0d-1d,0d-1d", {{L::CrossedLoop, 4}}}})},
      {{"V1", "V3"}, make_table(false, {{"0q-0d,0d-1q", {{L::TraceMixed, 4}}}, {"0q-1q,0d-0d", {{L::TraceTrace, 4}}}})},
      {{"V3", "V3"}, make_table(true, {{"0q-1q", {{L::TraceTrace, 4}}}})},
  };
  return tables;
}

}  // namespace

std::optional<LabelCombo> contraction(const MetricModel& m, const std::vector<std::string>& vertex_names,
                                      const std::string& topology) {
  if (std::holds_alternative<FlatTransform>(m)) return std::nullopt;
  const auto& tables = std::holds_alternative<ArbitraryCoords>(m) ? arbitrary_tables() : normal_tables();
  auto t = tables.find(vertex_names);
  if (t == tables.end()) throw std::invalid_argument("no contraction table for this vertex set");
  bool symmetric = vertex_names.size() == 2 && vertex_names[0] == vertex_names[1];
  std::string key = topology_key(parse_topology(topology), symmetric);
  auto row = t->second.find(key);
  if (row == t->second.end()) return LabelCombo{};  // the tensor contraction vanishes identically
  return row->second;
}

LabelValues measure_contribution(const MetricModel& m) {
  if (std::holds_alternative<NormalCoords>(m) || std::holds_alternative<Sphere>(m))
    return {{TensorLabel::R, RegValue::beta(1, Rational(1, 8))}};
  return {};
}

double CurvatureValue::at(double r) const { return coefficient.to_double() * std::pow(r, r_power); }

std::map<TensorLabel, CurvatureValue> sphere_tensors(int D) {
  if (D < 2) throw std::invalid_argument("sphere needs D >= 2");
  Rational d1(D - 1), d2(D - 2);
  return {
      {TensorLabel::One, {1, 0}},
      {TensorLabel::R, {d1 * d2, -2}},
      {TensorLabel::Rsq, {d1 * d1 * d2 * d2, -4}},
      {TensorLabel::RicciSq, {d1 * d2 * d2, -4}},
      {TensorLabel::RiemannSq, {Rational(2) * d1 * d2, -4}},
  };
}

LabelValues seeley_reference(const MetricModel& m, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("seeley_reference: orders 0..2");
  if (order == 0) return {{TensorLabel::One, RegValue(1)}};
  if (const auto* s = std::get_if<Sphere>(&m)) {
    Rational d(s->D);
    Rational c = order == 1 ? (d - 1) * (d - 2) / 12
                            : (d - 1) * (d - 2) * (Rational(5) * d * d - Rational(17) * d + 18) / 1440;
    if (c.is_zero()) return {};
    return {{TensorLabel::One, RegValue::beta(order, c)}};
  }
  if (!std::holds_alternative<NormalCoords>(m)) throw std::invalid_argument("seeley_reference: normal or sphere model");
  if (order == 1) return {{TensorLabel::R, RegValue::beta(1, Rational(1, 12))}};
  return {{TensorLabel::Rsq, RegValue::beta(2, Rational(1, 288))},
          {TensorLabel::RicciSq, RegValue::beta(2, Rational(-1, 720))},
          {TensorLabel::RiemannSq, RegValue::beta(2, Rational(1, 720))}};
}

RegValue substitute_sphere(const LabelValues& v, int D) {
  auto t = sphere_tensors(D);
  RegValue out;
  for (const auto& [l, x] : v) {
    auto it = t.find(l);
    if (it == t.end()) throw std::invalid_argument("label " + label_name(l) + " has no sphere value");
    out += x * it->second.coefficient;
  }
  return out;
}

std::vector<Rational> flat_metric_series(const FlatTransform& f) {
  // f' = 1 + 3 c1 eps q^2 + 5 c2 eps^2 q^4, squared and truncated at eps^2.
  Rational a = Rational(3) * f.c1, b = Rational(5) * f.c2;
  return {Rational(1), Rational(2) * a, a * a + Rational(2) * b};
}

MetricJet MetricJet::random(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  MetricJet j;
  j.n = n;
  std::vector<double> x(n * n * n), y(n * n * n * n);
  for (auto& v : x) v = dist(rng);
  for (auto& v : y) v = dist(rng);
  j.a.assign(n * n * n, 0.0);
  j.b.assign(n * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        j.a[(i * n + k) * n + l] = x[(i * n + k) * n + l] + x[(k * n + i) * n + l];
        for (int m = 0; m < n; ++m) {
          auto at = [&](int p, int q, int r, int s) { return y[((p * n + q) * n + r) * n + s]; };
          j.b[((i * n + k) * n + l) * n + m] = at(i, k, l, m) + at(k, i, l, m) + at(i, k, m, l) + at(k, i, m, l);
        }
      }
  return j;
}

namespace {

// G_ijk = 1/2 (d_i g_jk + d_j g_ik - d_k g_ij).
std::vector<double> christoffel(const MetricJet& jet) {
  const int n = jet.n;
  std::vector<double> g(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) g[(i * n + j) * n + k] = 0.5 * (jet.A(j, k, i) + jet.A(i, k, j) - jet.A(i, j, k));
  return g;
}

}  // namespace

std::map<TensorLabel, double> jet_label_values(const MetricJet& jet) {
  const int n = jet.n;
  auto G = christoffel(jet);
  auto g = [&](int i, int j, int k) { return G[(i * n + j) * n + k]; };
  double A = 0, B = 0, C = 0, GG2 = 0, GG3 = 0, ht = 0, hc = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ht += jet.B(i, i, j, j);
      hc += jet.B(i, j, i, j);
      for (int l = 0; l < n; ++l) {
        A += g(l, i, i) * g(l, j, j);
        B += g(l, i, i) * g(j, j, l);
        C += g(i, i, l) * g(j, j, l);
        GG2 += g(i, j, l) * g(i, j, l);
        GG3 += g(i, j, l) * g(l, i, j);
      }
    }
  return {{TensorLabel::HessianTrace, ht},        {TensorLabel::HessianCross, hc},
          {TensorLabel::TraceTrace, A},           {TensorLabel::TraceMixed, A + B},
          {TensorLabel::TraceChain, C + A + 2 * B}, {TensorLabel::CrossedPair, GG2 + 3 * GG3},
          {TensorLabel::CrossedLoop, GG3 + GG2}};
}

double jet_scalar_curvature(const MetricJet& jet) {
  const int n = jet.n;
  auto G = christoffel(jet);
  auto g = [&](int i, int j, int k) { return G[(i * n + j) * n + k]; };
  double r = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // c = a, d = b
      r += 0.5 * (jet.B(a, b, b, a) + jet.B(b, a, a, b) - jet.B(b, b, a, a) - jet.B(a, a, b, b));
      for (int m = 0; m < n; ++m) r += g(b, a, m) * g(a, b, m) - g(b, b, m) * g(a, a, m);
    }
  return r;
}

double evaluate_on_jet(const LabelValues& v, const MetricJet& jet) {
  auto values = jet_label_values(jet);
  values[TensorLabel::One] = 1.0;
  values[TensorLabel::R] = jet_scalar_curvature(jet);
  double out = 0;
  for (const auto& [l, x] : v) {
    auto it = values.find(l);
    if (it == values.end()) throw std::invalid_argument("label " + label_name(l) + " has no metric-jet value");
    out += x.grade(0).evaluate(1.0, 0.0) * it->second;
  }
  return out;
}

}  // namespace wlreg
