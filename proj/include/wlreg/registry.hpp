#pragma once

#include "wlreg/dimreg.hpp"

#include <string>
#include <vector>

namespace wlreg {

// Named two-loop integrals. Derived entries select a part of a base integral:
// "R" suffix = finite part (delta(0)-free grade), "div" suffix = the split-off delta^2 piece.
struct RegistryEntry {
  enum class Part { Total, Finite, Divergent };
  std::string name;
  std::string integrand;  // integrand text (1-based times)
  Part part = Part::Total;
};

const std::vector<RegistryEntry>& registry();
const RegistryEntry& registry_entry(const std::string& name);  // throws std::invalid_argument

struct NamedResult {
  std::string name;
  RegValue value;
  std::vector<LogEntry> log;
};

NamedResult evaluate_named(const std::string& name, const RuleSet& rules);

}  // namespace wlreg
