#include "wlreg/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wlreg {

RegValue Diagram::weight() const {
  return RegValue::term(0, delta0_power, prefactor * Rational(multiplicity));
}

IntegrandTerm Diagram::integrand() const {
  IntegrandTerm t = IntegrandTerm::unit(static_cast<int>(vertex_names.size()));
  t.props = edges;
  return t;
}

std::string Diagram::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) os << (i ? "," : "") << vertex_names[i];
  os << " [" << topology << "] x" << multiplicity << " weight " << weight().str();
  return os.str();
}

namespace {

using Line = std::pair<Leg, Leg>;

std::vector<Leg> legs_of(const std::vector<Vertex>& tuple) {
  std::vector<Leg> legs;
  for (int v = 0; v < static_cast<int>(tuple.size()); ++v) {
    for (int k = 0; k < tuple[v].q_power; ++k) legs.push_back({v, 0});
    for (int k = 0; k < tuple[v].qdot_power; ++k) legs.push_back({v, 1});
  }
  return legs;
}

void enumerate_pairings(std::vector<Leg>& rest, std::vector<Line>& current,
                        const std::function<void(const std::vector<Line>&)>& emit) {
  if (rest.empty()) {
    emit(current);
    return;
  }
  Leg first = rest.front();
  for (std::size_t k = 1; k < rest.size(); ++k) {
    std::vector<Leg> next;
    next.reserve(rest.size() - 2);
    for (std::size_t m = 1; m < rest.size(); ++m)
      if (m != k) next.push_back(rest[m]);
    current.emplace_back(first, rest[k]);
    enumerate_pairings(next, current, emit);
    current.pop_back();
  }
}

bool is_connected(const std::vector<Line>& lines, int n) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [x, y] : lines) parent[find(x.first)] = find(y.first);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

PropagatorFactor edge_of(const Line& line) {
  auto [x, y] = line;
  if (y < x) std::swap(x, y);
  if (x.first == y.first) {
    int derivs = x.second + y.second;
    PropagatorKind k = derivs == 0 ? PropagatorKind::D : derivs == 1 ? PropagatorKind::DotLeft : PropagatorKind::DotDot;
    return {k, x.first, x.first};
  }
  return {kind_from_derivatives(x.second == 1, y.second == 1), x.first, y.first};
}

bool edge_less(const PropagatorFactor& p, const PropagatorFactor& q) {
  return std::tuple(p.a, p.b, static_cast<int>(p.kind)) < std::tuple(q.a, q.b, static_cast<int>(q.kind));
}

std::string categorize(const std::vector<Vertex>& tuple, const std::vector<Line>& lines) {
  Rational order;
  for (const auto& v : tuple) order += v.order_in_eps;
  if (order == Rational(1)) return "first-order";
  if (tuple.size() == 1) return "local";
  for (const auto& v : tuple)
    if (v.delta0_power > 0) return "jacobian";
  int cross = 0;
  for (const auto& [x, y] : lines)
    if (x.first != y.first) ++cross;
  if (cross == 2) return "three-bubble";
  if (cross == 4) return "watermelon";
  return "nonlocal";
}

}  // namespace

long long total_pairings(const std::vector<Vertex>& tuple) {
  long long legs = static_cast<long long>(legs_of(tuple).size());
  if (legs % 2) return 0;
  long long out = 1;
  for (long long k = legs - 1; k > 1; k -= 2) out *= k;
  return out;
}

std::vector<Diagram> wick(const MetricModel& model, const std::vector<Vertex>& tuple, bool connected_only) {
  if (tuple.empty() || tuple.size() > 2) throw std::invalid_argument("wick: one or two vertices");
  const int n = static_cast<int>(tuple.size());
  const bool symmetric = n == 2 && tuple[0].name == tuple[1].name;

  Rational prefactor = n % 2 ? Rational(-1) : Rational(1);
  if (symmetric) prefactor *= Rational(1, 2);
  int delta0 = 0;
  std::vector<std::string> names;
  for (const auto& v : tuple) {
    prefactor *= v.coefficient;
    delta0 += v.delta0_power;
    names.push_back(v.name);
  }

  struct Group {
    long long count = 0;
    std::vector<Line> representative;
    bool connected = true;
  };
  std::map<std::string, Group> groups;
  std::vector<Leg> legs = legs_of(tuple);
  if (legs.size() % 2) return {};
  std::vector<Line> current;
  enumerate_pairings(legs, current, [&](const std::vector<Line>& lines) {
    bool conn = is_connected(lines, n);
    if (connected_only && !conn) return;
    auto& g = groups[topology_key(lines, symmetric)];
    if (g.count++ == 0) {
      g.representative = lines;
      g.connected = conn;
    }
  });

  std::vector<Diagram> out;
  for (const auto& [key, g] : groups) {
    Diagram d;
    d.vertex_names = names;
    d.topology = key;
    d.multiplicity = g.count;
    d.prefactor = prefactor;
    d.delta0_power = delta0;
    d.connected = g.connected;
    // Edges follow the canonical key so that identical topologies give identical integrands.
    auto lines = parse_topology(key);
    d.local = true;
    for (const auto& line : lines) {
      d.edges.push_back(edge_of(line));
      if (line.first.first != line.second.first) d.local = false;
    }
    std::sort(d.edges.begin(), d.edges.end(), edge_less);
    auto labels = contraction(model, names, key);
    d.labels = labels ? *labels : LabelCombo{{TensorLabel::One, Rational(g.count)}};
    d.category = categorize(tuple, lines);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::vector<Vertex>> vertex_tuples(const MetricModel& model, int order) {
  if (order < 1 || order > 2) throw std::invalid_argument("only orders 1 and 2 are supported");
  if (std::holds_alternative<ArbitraryCoords>(model) && order != 1)
    throw std::invalid_argument("the arbitrary-coordinate model is available at order 1 only");
  auto vs = vertices(model, order);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i].order_in_eps == Rational(order)) out.push_back({vs[i]});
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i; j < vs.size(); ++j)
      if (vs[i].order_in_eps + vs[j].order_in_eps == Rational(order)) out.push_back({vs[i], vs[j]});
  return out;
}

std::vector<Diagram> catalog(const MetricModel& model, int order) {
  std::vector<Diagram> out;
  for (const auto& tuple : vertex_tuples(model, order))
    for (auto& d : wick(model, tuple)) out.push_back(std::move(d));
  return out;
}

EvaluatedDiagram evaluate_diagram(const Diagram& d, Reducer& reducer) {
  EvaluatedDiagram e;
  e.diagram = d;
  ReduceResult r = reducer.reduce(d.integrand());
  e.integral = r.value;
  e.log = std::move(r.log);
  // Labels already sum over the pairings, so the multiplicity is not applied again.
  e.contribution = prune(scale(d.labels, RegValue::term(0, d.delta0_power, d.prefactor) * e.integral));
  return e;
}

EvaluatedDiagram evaluate_diagram(const Diagram& d, const RuleSet& rules) {
  Reducer reducer(rules);
  return evaluate_diagram(d, reducer);
}

OrderSum sum_order_detailed(const MetricModel& model, int order, const RuleSet& rules) {
  OrderSum s;
  Reducer reducer(rules);
  for (const auto& d : catalog(model, order)) {
    s.diagrams.push_back(evaluate_diagram(d, reducer));
    accumulate(s.connected, s.diagrams.back().contribution);
  }
  if (order == 2) {
    LabelValues first;
    for (const auto& d : catalog(model, 1)) accumulate(first, evaluate_diagram(d, reducer).contribution);
    accumulate(first, measure_contribution(model));
    LabelValues sq = label_product(first, first);
    for (auto& [l, v] : sq) v *= Rational(1, 2);
    s.square = prune(sq);
  }
  s.total = s.connected;
  accumulate(s.total, s.square);
  return s;
}

LabelValues sum_order(const MetricModel& model, int order, const RuleSet& rules) {
  return sum_order_detailed(model, order, rules).total;
}

nlohmann::json diagram_to_json(const Diagram& d) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : d.edges)
    edges.push_back({{"kind", kind_name(e.kind)}, {"a", e.a + 1}, {"b", e.b + 1}});
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [l, c] : d.labels) labels[label_name(l)] = c.str();
  return {{"vertices", d.vertex_names},
          {"topology", d.topology},
          {"edges", edges},
          {"multiplicity", d.multiplicity},
          {"prefactor", d.prefactor.str()},
          {"delta0_power", d.delta0_power},
          {"weight", d.weight().str()},
          {"labels", labels},
          {"local", d.local},
          {"category", d.category}};
}

nlohmann::json catalog_json(const MetricModel& model, int order) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : catalog(model, order)) arr.push_back(diagram_to_json(d));
  return {{"model", model_name(model)}, {"order", order}, {"diagrams", arr}};
}

}  // namespace wlreg
