#include "wlreg/registry.hpp"

#include <stdexcept>

namespace wlreg {

const std::vector<RegistryEntry>& registry() {
  using P = RegistryEntry::Part;
  static const std::vector<RegistryEntry> entries = {
      {"I2", "D(1,1)*DD(1,2)*DD(1,2)*D(2,2)", P::Total},
      {"I2R", "D(1,1)*DD(1,2)*DD(1,2)*D(2,2)", P::Finite},
      {"I4", "D(1,1)*Dl(1,2)*DD(1,2)*Dr(2,2)", P::Total},
      {"I6", "Dl(1,1)*D(1,2)*DD(1,2)*Dr(2,2)", P::Total},
      {"I7", "Dl(1,1)*Dl(1,2)*Dr(1,2)*Dr(2,2)", P::Total},
      {"I8", "D(1,2)^2*DD(1,2)^2", P::Total},
      {"I8R", "D(1,2)^2*DD(1,2)^2", P::Finite},
      {"I9", "D(1,2)*Dl(1,2)*Dr(1,2)*DD(1,2)", P::Total},
      {"I10", "Dl(1,2)^2*Dr(1,2)^2", P::Total},
      {"I11", "DD(1,1)*D(1,2)*DD(2,2) - 2*delta0*DD(1,1)*D(1,2) + delta0^2*D(1,2)", P::Total},
      {"I12", "Dl(1,1)*Dl(1,2)*DD(2,2) - delta0*Dl(1,1)*Dl(1,2)", P::Total},
      {"I13", "Dl(1,1)*Dr(2,2)*DD(1,2)", P::Total},
      {"I14", "Dl(1,2)*Dr(1,2)*DD(1,2)", P::Total},
      {"I15", "D(1,2)*DD(1,2)^2", P::Total},
      {"I15R", "D(1,2)*DD(1,2)^2", P::Finite},
      {"I15div", "D(1,2)*DD(1,2)^2", P::Divergent},
  };
  return entries;
}

const RegistryEntry& registry_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown integral name: " + name);
}

NamedResult evaluate_named(const std::string& name, const RuleSet& rules) {
  const RegistryEntry& e = registry_entry(name);
  ReduceResult r = reduce(parse_integrand(e.integrand), rules);
  NamedResult out{name, {}, std::move(r.log)};
  switch (e.part) {
    case RegistryEntry::Part::Total: out.value = r.value; break;
    case RegistryEntry::Part::Finite: out.value = r.value.grade(0); break;
    case RegistryEntry::Part::Divergent: out.value = r.divergent_part; break;
  }
  return out;
}

}  // namespace wlreg
