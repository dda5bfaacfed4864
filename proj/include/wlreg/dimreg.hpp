#pragma once

#include "wlreg/distalg.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlreg {

// Index structure of a factor once time is continued to d dimensions.
enum class DerivTag {
  None,           // no derivative
  Single,         // one derivative on one slot
  MuNu,           // derivatives on both slots, distinct time arguments
  MuMuEqualTime,  // contracted derivatives at equal times (DD(t,t))
  Laplacian,      // two contracted derivatives on one slot, other slot bare
  Irregular       // anything else (more than two derivatives, Laplacian plus a derivative on the other slot)
};

std::string tag_name(DerivTag t);

// Every time variable carries at most one contracted index pair, so an index is named by its
// variable and a slot only needs its derivative count.
struct TaggedFactor {
  enum class Type { Prop, EqualTime, MuMuEqualTime, Delta };
  Type type = Type::Prop;
  int a = 0, b = 0;  // time variables; equal-time factors use a == b
  int left = 0;      // derivatives on the first slot; EqualTime: number of free time-direction indices (0 or 1)
  int right = 0;     // derivatives on the second slot
  Poly poly;         // EqualTime: one-variable polynomial in its time

  DerivTag tag() const;
  std::string str() const;
};

struct TaggedTerm {
  RegValue coefficient{1};
  int num_vars = 1;
  std::vector<TaggedFactor> factors;
  std::string str() const;
};

struct Move {
  enum class Type { PartialIntegration, FieldEquation, EqualTimeSubstitute, ReturnTo1D };
  Type type = Type::ReturnTo1D;
  int var = -1;     // PartialIntegration: integration variable
  int factor = -1;  // target / source factor position
  int slot = 0;     // PartialIntegration: 0 left, 1 right (the slot at var)
  std::string str() const;
};

struct IllegalMove : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoLegalReduction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of one move: sum of terms plus an evaluated 1D boundary contribution.
struct MoveResult {
  std::vector<TaggedTerm> terms;
  RegValue boundary;
};

// Lifts a term built only from propagator factors (and a polynomial-free unit prefactor).
TaggedTerm lift(const IntegrandTerm& term);

MoveResult apply(const Move& move, const TaggedTerm& term, const RuleSet& rules);

bool return_to_1d_legal(const TaggedTerm& term, std::string* why = nullptr);
IntegrandTerm to_1d(const TaggedTerm& term);

// Canonical shape key, invariant under factor order, index relabeling, and time relabeling.
std::string canonical_key(const TaggedTerm& term);

struct LogEntry {
  std::string move;
  std::string target;
  std::string tag;
  std::string status;  // "applied", "rejected", "evaluated", "memo", "split"
  std::string detail;
  int depth = 0;
};

struct ReduceResult {
  RegValue value;
  RegValue divergent_part;  // value of the delta^2 terms split off (zero when none)
  std::vector<LogEntry> log;
};

class Reducer {
 public:
  explicit Reducer(RuleSet rules, int max_depth = 6) : rules_(std::move(rules)), max_depth_(max_depth) {}

  ReduceResult reduce(const IntegrandTerm& term);
  ReduceResult reduce(const Integrand& terms);
  const RuleSet& rules() const { return rules_; }

 private:
  struct Outcome {
    bool ok = false;
    RegValue value;
  };
  Outcome solve(const TaggedTerm& unit, int depth, std::vector<std::string>& ancestors, std::vector<LogEntry>& log);
  std::vector<TaggedTerm> normalize(std::vector<TaggedTerm> terms, std::vector<LogEntry>& log, int depth);

  RuleSet rules_;
  int max_depth_;
  std::map<std::string, RegValue> memo_;
};

ReduceResult reduce(const IntegrandTerm& term, const RuleSet& rules);
ReduceResult reduce(const Integrand& terms, const RuleSet& rules);

nlohmann::json log_to_json(const std::vector<LogEntry>& log);

// True when no FieldEquation or EqualTimeSubstitute in the log targets a MuNu factor.
bool audit_log(const std::vector<LogEntry>& log, std::string* violation = nullptr);

struct ScriptResult {
  bool completed = false;
  std::string error;
  RegValue value;
  std::vector<LogEntry> log;
};

// Applies an explicit move sequence to the lifted term, following the first produced term.
// A move that violates a tag constraint stops the script and is recorded as rejected.
ScriptResult run_script(const IntegrandTerm& term, const std::vector<Move>& moves, const RuleSet& rules);

// The 1D route for Dl*Dr*DD: return to one dimension with the MuNu factor still present.
ScriptResult forbidden_double_partial_integration(const RuleSet& rules);

}  // namespace wlreg
