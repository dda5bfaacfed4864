#pragma once

#include "wlreg/dimreg.hpp"
#include "wlreg/geometry.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace wlreg {

// One Wick topology of a vertex tuple. Vertex slot i carries time variable i.
struct Diagram {
  std::vector<std::string> vertex_names;
  std::vector<PropagatorFactor> edges;  // sorted; a <= b
  std::string topology;                 // canonical topology_key
  long long multiplicity = 0;           // Wick pairings with this topology
  Rational prefactor;                   // (-1)^n / prod(repeats!) * prod(vertex coefficients)
  int delta0_power = 0;                 // from Jacobian-type vertices
  LabelCombo labels;                    // tensor contraction summed over the pairings (flat: {One: multiplicity})
  bool connected = true;
  bool local = false;                   // every line is an equal-time contraction
  std::string category;                 // "first-order", "local", "jacobian", "three-bubble", "watermelon", "nonlocal"

  // Combinatorial weight: prefactor * multiplicity * delta(0)^delta0_power.
  RegValue weight() const;
  // Product of the edges over [0, beta]^n with unit coefficient.
  IntegrandTerm integrand() const;
  std::string str() const;
};

// All topologies of the given vertex tuple (one or two vertices), sorted by topology key.
std::vector<Diagram> wick(const MetricModel& model, const std::vector<Vertex>& vertex_tuple, bool connected_only = true);

// Number of perfect pairings of the tuple's legs, (L - 1)!! for L legs.
long long total_pairings(const std::vector<Vertex>& vertex_tuple);

// Vertex tuples (multisets of at most two vertices, in model vertex order) whose orders sum to `order`.
std::vector<std::vector<Vertex>> vertex_tuples(const MetricModel& model, int order);

// Connected diagrams at the given order, tuple by tuple.
std::vector<Diagram> catalog(const MetricModel& model, int order);

struct EvaluatedDiagram {
  Diagram diagram;
  RegValue integral;
  LabelValues contribution;  // labels * prefactor * delta(0)^power * integral
  std::vector<LogEntry> log;
};

EvaluatedDiagram evaluate_diagram(const Diagram& d, Reducer& reducer);
EvaluatedDiagram evaluate_diagram(const Diagram& d, const RuleSet& rules);

struct OrderSum {
  std::vector<EvaluatedDiagram> diagrams;
  LabelValues connected;  // sum of the connected diagrams at this order
  LabelValues square;     // order 2: (1/2)(first-order connected + measure)^2
  LabelValues total;      // connected + square
};

// Coefficient of eps^order in the logarithm-free expansion of the amplitude relative to the free one:
// order 1 gives the connected sum, order 2 adds the square of the first-order exponent.
// The measure contribution enters only through that square.
OrderSum sum_order_detailed(const MetricModel& model, int order, const RuleSet& rules);
LabelValues sum_order(const MetricModel& model, int order, const RuleSet& rules);

nlohmann::json diagram_to_json(const Diagram& d);
nlohmann::json catalog_json(const MetricModel& model, int order);

}  // namespace wlreg
