#include "wlreg/dimreg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace wlreg {

std::string tag_name(DerivTag t) {
  switch (t) {
    case DerivTag::None: return "None";
    case DerivTag::Single: return "Single";
    case DerivTag::MuNu: return "MuNu";
    case DerivTag::MuMuEqualTime: return "MuMuEqualTime";
    case DerivTag::Laplacian: return "Laplacian";
    case DerivTag::Irregular: return "Irregular";
  }
  return "?";
}

DerivTag TaggedFactor::tag() const {
  switch (type) {
    case Type::MuMuEqualTime: return DerivTag::MuMuEqualTime;
    case Type::Delta: return DerivTag::None;
    case Type::EqualTime: return left > 0 ? DerivTag::Single : DerivTag::None;
    case Type::Prop: break;
  }
  if (left == 0 && right == 0) return DerivTag::None;
  if (left + right == 1) return DerivTag::Single;
  if (left == 1 && right == 1) return DerivTag::MuNu;
  if ((left == 2 && right == 0) || (left == 0 && right == 2)) return DerivTag::Laplacian;
  return DerivTag::Irregular;
}

std::string TaggedFactor::str() const {
  std::ostringstream os;
  switch (type) {
    case Type::Prop:
      if (left <= 1 && right <= 1) os << kind_name(kind_from_derivatives(left, right));
      else os << "D^{" << left << "," << right << "}";
      os << "(" << a + 1 << "," << b + 1 << ")";
      break;
    case Type::EqualTime:
      os << "[" << poly.str({"t" + std::to_string(a + 1)}) << "]";
      if (left) os << "_u";
      break;
    case Type::MuMuEqualTime:
      os << "DD(" << a + 1 << "," << a + 1 << ")";
      break;
    case Type::Delta:
      os << "delta(" << a + 1 << "," << b + 1 << ")";
      break;
  }
  return os.str();
}

std::string TaggedTerm::str() const {
  std::ostringstream os;
  os << "(" << coefficient.str() << ")";
  for (const auto& f : factors) os << " * " << f.str();
  return os.str();
}

std::string Move::str() const {
  std::ostringstream os;
  switch (type) {
    case Type::PartialIntegration: os << "PartialIntegration(t" << var + 1 << ", factor " << factor << ")"; break;
    case Type::FieldEquation: os << "FieldEquation(factor " << factor << ")"; break;
    case Type::EqualTimeSubstitute: os << "EqualTimeSubstitute(factor " << factor << ")"; break;
    case Type::ReturnTo1D: os << "ReturnTo1D"; break;
  }
  return os.str();
}

namespace {

using Type = TaggedFactor::Type;

RegValue equal_time_dd() { return RegValue::delta0(1) - RegValue::beta(-1); }

bool touches(const TaggedFactor& f, int v) {
  if (f.type == Type::Prop || f.type == Type::Delta) return f.a == v || f.b == v;
  return f.a == v;
}

int& slot_at(TaggedFactor& f, int v) { return f.a == v ? f.left : f.right; }
int slot_at(const TaggedFactor& f, int v) {
  if (f.type != Type::Prop) return 0;
  return f.a == v ? f.left : (f.b == v ? f.right : 0);
}

// Absorbs index-free constant equal-time factors, makes equal-time polynomials monic in their
// highest power of t, and returns false when the term vanishes.
bool tidy(TaggedTerm& t) {
  if (t.coefficient.is_zero()) return false;
  std::vector<TaggedFactor> kept;
  for (auto& f : t.factors) {
    if (f.type == Type::EqualTime) {
      if (f.poly.is_zero()) return false;
      if (f.poly.is_constant() && f.left == 0) {
        t.coefficient *= f.poly.to_regvalue();
        continue;
      }
      auto lead = std::prev(f.poly.terms().end());
      Rational c = lead->second;
      int k = lead->first.beta;
      f.poly = (f.poly * (Rational(1) / c)).times_beta(-k);
      t.coefficient *= RegValue::beta(k, c);
    }
    kept.push_back(std::move(f));
  }
  t.factors = std::move(kept);
  return !t.coefficient.is_zero();
}

std::string descriptor(const TaggedFactor& f, const std::vector<int>& perm) {
  std::ostringstream os;
  switch (f.type) {
    case Type::Prop: {
      int a = perm[f.a], b = perm[f.b], l = f.left, r = f.right;
      if (a > b) {
        std::swap(a, b);
        std::swap(l, r);
      }
      os << "P" << a << "." << b << ":" << l << r;
      break;
    }
    case Type::EqualTime: os << "E" << perm[f.a] << ":" << f.left << ":" << f.poly.str({"t"}); break;
    case Type::MuMuEqualTime: os << "M" << perm[f.a]; break;
    case Type::Delta: os << "X" << std::min(perm[f.a], perm[f.b]) << "." << std::max(perm[f.a], perm[f.b]); break;
  }
  return os.str();
}

bool is_1d_compatible(const TaggedFactor& f) {
  if (f.type != Type::Prop) return true;
  return f.left <= 1 && f.right <= 1 && f.tag() != DerivTag::MuNu;
}

PropagatorKind prop_kind(const TaggedFactor& f) { return kind_from_derivatives(f.left > 0, f.right > 0); }

RegValue integrate_1d(const IntegrandTerm& t, const RuleSet& rules) { return integrate(t, rules); }

// [F G] at t_v = beta minus t_v = 0, integrated over the remaining variables in one dimension.
RegValue boundary_term(const TaggedTerm& term, int v, const RuleSet& rules) {
  for (const auto& f : term.factors) {
    if (!touches(f, v)) continue;
    if (f.type == Type::Prop && slot_at(f, v) == 0) return {};  // Dirichlet: vanishes with all derivatives of the other argument
    if (f.type == Type::EqualTime) {
      if (f.poly.at_endpoint(0, true).is_zero() && f.poly.at_endpoint(0, false).is_zero()) return {};
    }
  }
  for (const auto& f : term.factors) {
    if (touches(f, v)) {
      if (f.type == Type::Delta || f.type == Type::MuMuEqualTime)
        throw IllegalMove("boundary term at t" + std::to_string(v + 1) + " meets " + f.str());
      if (f.type == Type::Prop && (f.left > 1 || f.right > 1))
        throw IllegalMove("boundary term has no one-dimensional form: " + f.str() + " is tagged " + tag_name(f.tag()));
    } else if (!is_1d_compatible(f)) {
      throw IllegalMove("boundary term has no one-dimensional form: " + f.str() + " is tagged " + tag_name(f.tag()));
    }
  }
  const int nv = term.num_vars - 1;
  std::vector<int> map(term.num_vars);
  for (int u = 0; u < term.num_vars; ++u) map[u] = u < v ? u : (u == v ? -1 : u - 1);

  RegValue total;
  for (bool at_beta : {true, false}) {
    Poly poly = Poly::constant(std::max(nv, 1), 1);
    IntegrandTerm out = IntegrandTerm::unit(std::max(nv, 1));
    for (const auto& f : term.factors) {
      if (touches(f, v)) {
        if (f.type == Type::EqualTime) {
          poly *= Poly::constant(std::max(nv, 1), 1) * f.poly.at_endpoint(0, at_beta).with_num_vars(std::max(nv, 1));
          continue;
        }
        PiecewiseRep rep = symbolic_rep(prop_kind(f));
        bool v_first = f.a == v;
        // t_v = beta lies above every other time, t_v = 0 below.
        bool greater = v_first == at_beta;
        Poly region = greater ? rep.region_greater : rep.region_less;
        region = region.at_endpoint(v_first ? 0 : 1, at_beta);
        std::vector<int> rmap{v_first ? -1 : map[f.a], v_first ? map[f.b] : -1};
        poly *= region.remap(rmap, std::max(nv, 1));
      } else if (f.type == Type::EqualTime) {
        poly *= f.poly.remap({map[f.a]}, std::max(nv, 1));
      } else if (f.type == Type::Prop) {
        out.props.push_back({prop_kind(f), map[f.a], map[f.b]});
      } else if (f.type == Type::Delta) {
        out.atoms.push_back({AtomKind::Delta, map[f.a], map[f.b], 1});
      }
    }
    out.poly = poly;
    RegValue value;
    if (nv == 0) {
      value = poly.to_regvalue();
    } else {
      value = integrate_1d(out, rules);
    }
    if (at_beta) total += value;
    else total -= value;
  }
  return total * term.coefficient;
}

void check_index(const TaggedTerm& term, int factor) {
  if (factor < 0 || factor >= static_cast<int>(term.factors.size()))
    throw IllegalMove("move targets factor " + std::to_string(factor) + " of a term with " +
                      std::to_string(term.factors.size()) + " factors");
}

}  // namespace

TaggedTerm lift(const IntegrandTerm& term) {
  TaggedTerm out;
  out.num_vars = term.num_vars;
  out.coefficient = term.coefficient;
  if (!(term.poly.is_zero() && term.poly.num_vars() == 0)) {
    if (!term.poly.is_constant()) throw IllegalMove("lift: polynomial prefactors must be constant");
    out.coefficient *= term.poly.to_regvalue();
  }
  for (const auto& a : term.atoms) {
    if (a.kind == AtomKind::Epsilon) throw IllegalMove("lift: explicit eps atoms have no d-dimensional form");
    for (int p = 0; p < a.power; ++p) {
      TaggedFactor f;
      f.type = Type::Delta;
      f.a = a.i;
      f.b = a.j;
      out.factors.push_back(f);
    }
  }
  for (const auto& p : term.props) {
    TaggedFactor f;
    f.a = p.a;
    f.b = p.b;
    if (p.a == p.b) {
      if (p.kind == PropagatorKind::DotDot) {
        f.type = Type::MuMuEqualTime;
      } else {
        f.type = Type::EqualTime;
        f.poly = diagonal(p.kind).poly;
        f.left = p.kind == PropagatorKind::D ? 0 : 1;
      }
    } else {
      f.type = Type::Prop;
      f.left = left_derivatives(p.kind);
      f.right = right_derivatives(p.kind);
    }
    out.factors.push_back(f);
  }
  for (int v = 0; v < term.num_vars; ++v) {
    int count = 0;
    bool mumu = false;
    for (const auto& f : out.factors) {
      if (f.type == Type::Prop) count += slot_at(f, v);
      else if (f.type == Type::EqualTime && f.a == v) count += f.left;
      else if (f.type == Type::MuMuEqualTime && f.a == v) {
        count += 2;
        mumu = true;
      }
    }
    if (count != 0 && count != 2)
      throw IllegalMove("lift: time t" + std::to_string(v + 1) + " carries " + std::to_string(count) +
                        " derivatives; only contracted pairs have a d-dimensional form");
    (void)mumu;
  }
  if (!tidy(out)) out.factors.clear(), out.coefficient = RegValue();
  return out;
}

bool return_to_1d_legal(const TaggedTerm& term, std::string* why) {
  for (const auto& f : term.factors) {
    if (f.type != Type::Prop) continue;
    if (f.tag() == DerivTag::MuNu) {
      if (why) *why = "factor " + f.str() + " is tagged MuNu";
      return false;
    }
    if (f.left > 1 || f.right > 1) {
      if (why) *why = "factor " + f.str() + " is tagged " + tag_name(f.tag());
      return false;
    }
  }
  return true;
}

IntegrandTerm to_1d(const TaggedTerm& term) {
  std::string why;
  if (!return_to_1d_legal(term, &why)) throw IllegalMove("ReturnTo1D blocked: " + why);
  IntegrandTerm out = IntegrandTerm::unit(term.num_vars);
  out.coefficient = term.coefficient;
  for (const auto& f : term.factors) {
    switch (f.type) {
      case Type::Prop: out.props.push_back({prop_kind(f), f.a, f.b}); break;
      case Type::EqualTime: out.poly *= f.poly.remap({f.a}, term.num_vars); break;
      case Type::MuMuEqualTime: out.props.push_back({PropagatorKind::DotDot, f.a, f.a}); break;
      case Type::Delta: out.atoms.push_back({AtomKind::Delta, f.a, f.b, 1}); break;
    }
  }
  return out;
}

std::string canonical_key(const TaggedTerm& term) {
  std::vector<int> perm(term.num_vars);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::vector<std::string> parts;
    parts.reserve(term.factors.size());
    for (const auto& f : term.factors) parts.push_back(descriptor(f, perm));
    std::sort(parts.begin(), parts.end());
    std::string key = std::to_string(term.num_vars) + "|";
    for (const auto& p : parts) key += p + ";";
    if (first || key < best) best = key;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

MoveResult apply(const Move& move, const TaggedTerm& term, const RuleSet& rules) {
  MoveResult out;
  switch (move.type) {
    case Move::Type::EqualTimeSubstitute: {
      check_index(term, move.factor);
      const auto& f = term.factors[move.factor];
      if (f.tag() != DerivTag::MuMuEqualTime)
        throw IllegalMove("EqualTimeSubstitute requires a MuMuEqualTime factor; " + f.str() + " is tagged " +
                          tag_name(f.tag()));
      TaggedTerm t = term;
      t.factors.erase(t.factors.begin() + move.factor);
      t.coefficient *= equal_time_dd();
      if (tidy(t)) out.terms.push_back(std::move(t));
      return out;
    }
    case Move::Type::FieldEquation: {
      check_index(term, move.factor);
      const auto& f = term.factors[move.factor];
      if (f.tag() != DerivTag::Laplacian)
        throw IllegalMove("FieldEquation requires a Laplacian factor; " + f.str() + " is tagged " + tag_name(f.tag()));
      TaggedTerm t = term;
      auto& g = t.factors[move.factor];
      g.type = Type::Delta;
      g.left = g.right = 0;
      t.coefficient = -t.coefficient;
      out.terms.push_back(std::move(t));
      return out;
    }
    case Move::Type::ReturnTo1D:
      out.boundary = integrate(to_1d(term), rules);
      return out;
    case Move::Type::PartialIntegration: break;
  }

  check_index(term, move.factor);
  const int v = move.var;
  if (v < 0 || v >= term.num_vars) throw IllegalMove("partial integration over a nonexistent time variable");
  const auto& src = term.factors[move.factor];
  if (src.type != Type::Prop || slot_at(src, v) == 0)
    throw IllegalMove("partial integration at t" + std::to_string(v + 1) + " needs a derivative of " + src.str() +
                      " at that time");
  for (const auto& f : term.factors) {
    if (!touches(f, v)) continue;
    if (f.type == Type::Delta)
      throw IllegalMove("partial integration at t" + std::to_string(v + 1) + " across " + f.str());
    if (f.type == Type::MuMuEqualTime)
      throw IllegalMove("partial integration at t" + std::to_string(v + 1) + " before EqualTimeSubstitute on " + f.str());
  }
  TaggedTerm reduced = term;
  slot_at(reduced.factors[move.factor], v) -= 1;
  out.boundary = boundary_term(reduced, v, rules);
  for (std::size_t j = 0; j < reduced.factors.size(); ++j) {
    if (static_cast<int>(j) == move.factor || !touches(reduced.factors[j], v)) continue;
    TaggedTerm child = reduced;
    child.coefficient = -child.coefficient;
    auto& g = child.factors[j];
    if (g.type == Type::Prop) {
      slot_at(g, v) += 1;
    } else {  // EqualTime: time derivative; the index pairs with an existing one or becomes free
      g.poly = g.poly.derivative(0);
      g.left = 1 - g.left;
    }
    if (tidy(child)) out.terms.push_back(std::move(child));
  }
  return out;
}

namespace {

int munu_cost(const TaggedTerm& t) {
  int c = 0;
  for (const auto& f : t.factors) {
    auto tag = f.tag();
    if (tag == DerivTag::MuNu) c += 2;
    else if (tag == DerivTag::Irregular) c += 3;
  }
  return c;
}

LogEntry entry(const std::string& move, const std::string& target, const std::string& tag, const std::string& status,
               const std::string& detail, int depth) {
  return {move, target, tag, status, detail, depth};
}

struct Candidate {
  Move move;
  std::vector<std::pair<RegValue, TaggedTerm>> children;  // unit terms
  std::vector<std::string> keys;
  RegValue boundary;
  int cost = 0;
};

bool is_rational_constant(const RegValue& v, Rational* out) {
  if (v.is_zero()) {
    *out = Rational(0);
    return true;
  }
  if (v.terms().size() != 1 || v.terms().begin()->first != RegKey{0, 0}) return false;
  *out = v.terms().begin()->second;
  return true;
}

// Two MuNu lines on the same pair of times: returns their positions.
std::optional<std::pair<int, int>> munu_pair(const TaggedTerm& t) {
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    const auto& f = t.factors[i];
    if (f.type != Type::Prop || f.tag() != DerivTag::MuNu) continue;
    for (std::size_t j = i + 1; j < t.factors.size(); ++j) {
      const auto& g = t.factors[j];
      if (g.type != Type::Prop || g.tag() != DerivTag::MuNu) continue;
      if (std::min(f.a, f.b) == std::min(g.a, g.b) && std::max(f.a, f.b) == std::max(g.a, g.b))
        return std::make_pair(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<TaggedTerm> Reducer::normalize(std::vector<TaggedTerm> terms, std::vector<LogEntry>& log, int depth) {
  std::vector<TaggedTerm> out;
  for (auto& t : terms) {
    bool alive = true;
    for (bool changed = true; changed && alive;) {
      changed = false;
      for (std::size_t i = 0; i < t.factors.size(); ++i) {
        auto tag = t.factors[i].tag();
        Move m;
        if (tag == DerivTag::MuMuEqualTime) m.type = Move::Type::EqualTimeSubstitute;
        else if (tag == DerivTag::Laplacian) m.type = Move::Type::FieldEquation;
        else continue;
        m.factor = static_cast<int>(i);
        std::string target = t.factors[i].str();
        MoveResult r = apply(m, t, rules_);
        log.push_back(entry(m.str(), target, tag_name(tag), "applied", "", depth));
        if (r.terms.empty()) {
          alive = false;
        } else {
          t = r.terms.front();
        }
        changed = true;
        break;
      }
    }
    if (alive && tidy(t)) out.push_back(std::move(t));
  }
  return out;
}

Reducer::Outcome Reducer::solve(const TaggedTerm& unit, int depth, std::vector<std::string>& ancestors,
                                std::vector<LogEntry>& log) {
  const std::string key = canonical_key(unit);
  if (auto it = memo_.find(key); it != memo_.end()) {
    log.push_back(entry("Memo", unit.str(), "", "memo", it->second.str(), depth));
    return {true, it->second};
  }
  std::string why;
  if (return_to_1d_legal(unit, &why)) {
    try {
      RegValue v = integrate(to_1d(unit), rules_);
      log.push_back(entry("ReturnTo1D", unit.str(), "", "evaluated", v.str(), depth));
      memo_[key] = v;
      return {true, v};
    } catch (const UnreducedSingularStructure& e) {
      log.push_back(entry("ReturnTo1D", unit.str(), "", "rejected", e.what(), depth));
      return {};
    }
  }
  log.push_back(entry("ReturnTo1D", unit.str(), "", "rejected", why, depth));
  if (depth >= max_depth_) return {};

  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < unit.factors.size(); ++i) {
    const auto& f = unit.factors[i];
    if (f.type != Type::Prop) continue;
    for (int v : {f.a, f.b}) {
      if (slot_at(f, v) == 0) continue;
      Move m;
      m.type = Move::Type::PartialIntegration;
      m.var = v;
      m.factor = static_cast<int>(i);
      m.slot = v == f.a ? 0 : 1;
      Candidate c;
      c.move = m;
      try {
        MoveResult r = apply(m, unit, rules_);
        std::vector<LogEntry> scratch;
        auto children = normalize(std::move(r.terms), scratch, depth + 1);
        std::map<std::string, std::size_t> where;
        for (auto& ch : children) {
          RegValue coef = ch.coefficient;
          ch.coefficient = RegValue(1);
          std::string k = canonical_key(ch);
          if (auto w = where.find(k); w != where.end()) {
            c.children[w->second].first += coef;
          } else {
            where[k] = c.children.size();
            c.children.emplace_back(coef, std::move(ch));
            c.keys.push_back(k);
          }
        }
        c.boundary = r.boundary;
        for (const auto& [coef, ch] : c.children) c.cost += coef.is_zero() ? 0 : munu_cost(ch) + 1;
        candidates.push_back(std::move(c));
      } catch (const IllegalMove& e) {
        log.push_back(entry(m.str(), f.str(), tag_name(f.tag()), "rejected", e.what(), depth));
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.cost < y.cost; });

  ancestors.push_back(key);
  for (const auto& c : candidates) {
    const std::string target = unit.factors[c.move.factor].str();
    const std::string tag = tag_name(unit.factors[c.move.factor].tag());
    RegValue self;
    bool cyclic = false;
    for (std::size_t k = 0; k < c.children.size(); ++k) {
      if (c.children[k].first.is_zero()) continue;
      if (c.keys[k] == key) self += c.children[k].first;
      else if (std::find(ancestors.begin(), ancestors.end(), c.keys[k]) != ancestors.end()) cyclic = true;
    }
    if (cyclic) continue;
    Rational s;
    if (!is_rational_constant(self, &s) || s == Rational(1)) continue;
    std::vector<LogEntry> sub;
    RegValue total = c.boundary;
    bool ok = true;
    for (std::size_t k = 0; k < c.children.size() && ok; ++k) {
      if (c.children[k].first.is_zero() || c.keys[k] == key) continue;
      Outcome o = solve(c.children[k].second, depth + 1, ancestors, sub);
      if (!o.ok) ok = false;
      else total += c.children[k].first * o.value;
    }
    if (!ok) continue;
    if (!s.is_zero()) total = total * (Rational(1) / (Rational(1) - s));
    std::string detail = "boundary " + c.boundary.str();
    if (!s.is_zero()) detail += "; term recurs with coefficient " + s.str();
    log.push_back(entry(c.move.str(), target, tag, "applied", detail, depth));
    log.insert(log.end(), sub.begin(), sub.end());
    ancestors.pop_back();
    memo_[key] = total;
    return {true, total};
  }
  ancestors.pop_back();
  return {};
}

ReduceResult Reducer::reduce(const IntegrandTerm& term) { return reduce(Integrand{term}); }

ReduceResult Reducer::reduce(const Integrand& terms) {
  ReduceResult out;
  for (const auto& term : terms) {
    TaggedTerm lifted = lift(term);
    out.log.push_back(entry("Lift", term.str(), "", "applied", lifted.str(), 0));
    if (lifted.coefficient.is_zero()) continue;
    for (auto& t : normalize({lifted}, out.log, 0)) {
      RegValue coef = t.coefficient;
      TaggedTerm unit = t;
      unit.coefficient = RegValue(1);
      if (auto pair = munu_pair(unit)) {
        // Add and subtract the delta^2 piece: both lines take contracted pairs on opposite times.
        TaggedTerm split = unit;
        auto& f = split.factors[pair->first];
        auto& g = split.factors[pair->second];
        int x = f.a;
        f.left = f.right = 0;
        slot_at(f, x) = 2;
        g.left = g.right = 0;
        slot_at(g, g.a == x ? g.b : g.a) = 2;
        auto split_terms = normalize({split}, out.log, 0);
        RegValue div;
        for (const auto& st : split_terms) {
          TaggedTerm su = st;
          su.coefficient = RegValue(1);
          std::vector<std::string> anc;
          Outcome o = solve(su, 0, anc, out.log);
          if (!o.ok) throw NoLegalReduction("no legal reduction for divergent piece " + st.str());
          div += st.coefficient * o.value;
        }
        out.log.push_back(entry("DivergenceSplit", unit.str(), "MuNu", "split", div.str(), 0));
        out.divergent_part += coef * div;
      }
      std::vector<std::string> anc;
      Outcome o = solve(unit, 0, anc, out.log);
      if (!o.ok) throw NoLegalReduction("no legal reduction for " + t.str());
      out.value += coef * o.value;
    }
  }
  return out;
}

ReduceResult reduce(const IntegrandTerm& term, const RuleSet& rules) { return Reducer(rules).reduce(term); }
ReduceResult reduce(const Integrand& terms, const RuleSet& rules) { return Reducer(rules).reduce(terms); }

nlohmann::json log_to_json(const std::vector<LogEntry>& log) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : log) {
    arr.push_back({{"move", e.move},
                   {"target", e.target},
                   {"tag", e.tag},
                   {"status", e.status},
                   {"detail", e.detail},
                   {"depth", e.depth}});
  }
  return arr;
}

bool audit_log(const std::vector<LogEntry>& log, std::string* violation) {
  for (const auto& e : log) {
    bool replacement = e.move.rfind("FieldEquation", 0) == 0 || e.move.rfind("EqualTimeSubstitute", 0) == 0;
    if (replacement && e.status == "applied" && e.tag == tag_name(DerivTag::MuNu)) {
      if (violation) *violation = e.move + " on " + e.target;
      return false;
    }
  }
  return true;
}

ScriptResult run_script(const IntegrandTerm& term, const std::vector<Move>& moves, const RuleSet& rules) {
  ScriptResult out;
  TaggedTerm root = lift(term);
  out.log.push_back(entry("Lift", term.str(), "", "applied", root.str(), 0));
  const RegValue root_coef = root.coefficient;
  root.coefficient = RegValue(1);
  const std::string root_key = canonical_key(root);
  std::vector<TaggedTerm> pending{root};
  RegValue recurring;  // coefficient with which the root reappears
  RegValue accumulated;
  for (const auto& m : moves) {
    if (pending.empty()) {
      out.error = "script has moves left after every term was evaluated";
      return out;
    }
    TaggedTerm head = pending.front();
    std::string target = m.factor >= 0 && m.factor < static_cast<int>(head.factors.size())
                             ? head.factors[m.factor].str()
                             : std::string();
    std::string tag = target.empty() ? std::string() : tag_name(head.factors[m.factor].tag());
    if (m.type == Move::Type::ReturnTo1D) {
      std::string why;
      if (!return_to_1d_legal(head, &why)) {
        tag = tag_name(DerivTag::MuNu);
        for (const auto& f : head.factors)
          if (f.type == Type::Prop && !is_1d_compatible(f)) {
            target = f.str();
            tag = tag_name(f.tag());
            break;
          }
      }
    }
    try {
      MoveResult r = apply(m, head, rules);
      out.log.push_back(entry(m.str(), target.empty() ? head.str() : target, tag, "applied",
                              "boundary " + r.boundary.str(), 0));
      pending.erase(pending.begin());
      accumulated += r.boundary;
      std::vector<TaggedTerm> next;
      for (auto& ch : r.terms) {
        TaggedTerm u = ch;
        u.coefficient = RegValue(1);
        if (canonical_key(u) == root_key) recurring += ch.coefficient;
        else next.push_back(std::move(ch));
      }
      pending.insert(pending.begin(), next.begin(), next.end());
    } catch (const IllegalMove& e) {
      out.log.push_back(entry(m.str(), target.empty() ? head.str() : target, tag, "rejected", e.what(), 0));
      out.error = e.what();
      return out;
    }
  }
  if (!pending.empty()) {
    out.error = "script ended with " + std::to_string(pending.size()) + " unevaluated terms";
    return out;
  }
  Rational s;
  if (!is_rational_constant(recurring, &s) || s == Rational(1)) {
    out.error = "the term recurs with a coefficient that cannot be solved for";
    return out;
  }
  out.value = root_coef * accumulated * (Rational(1) / (Rational(1) - s));
  out.completed = true;
  return out;
}

ScriptResult forbidden_double_partial_integration(const RuleSet& rules) {
  Integrand i14 = parse_integrand("Dl(1,2)*Dr(1,2)*DD(1,2)");
  Move back;
  back.type = Move::Type::ReturnTo1D;
  return run_script(i14.front(), {back}, rules);
}

}  // namespace wlreg
