#include "wlreg/registry.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace wlreg;

namespace {

RegValue b(int k, Rational c) { return RegValue::beta(k, c); }
RegValue named(const std::string& n, const RuleSet& r = RuleSet::dimreg()) { return evaluate_named(n, r).value; }
TaggedTerm lifted(const std::string& text) { return lift(parse_integrand(text).front()); }

std::vector<DerivTag> sorted_tags(const TaggedTerm& t) {
  std::vector<DerivTag> tags;
  for (const auto& f : t.factors)
    if (f.type != TaggedFactor::Type::EqualTime) tags.push_back(f.tag());
  std::sort(tags.begin(), tags.end());
  return tags;
}

}  // namespace

TEST(Dimreg, RegistryValues) {
  EXPECT_EQ(named("I2"), b(2, Rational(-7, 180)) + RegValue::term(3, 1, Rational(1, 30)));
  EXPECT_EQ(named("I2R"), b(2, Rational(-7, 180)));
  EXPECT_EQ(named("I4"), b(2, Rational(1, 90)));
  EXPECT_EQ(named("I6"), b(2, Rational(1, 144)));
  EXPECT_EQ(named("I6") + named("I7"), b(2, Rational(1, 180)));
  EXPECT_EQ(named("I7"), b(2, Rational(-1, 720)));
  EXPECT_EQ(named("I8"), b(2, Rational(-1, 72)) + RegValue::term(3, 1, Rational(1, 30)));
  EXPECT_EQ(named("I8R"), b(2, Rational(-1, 72)));
  EXPECT_EQ(named("I9"), b(2, Rational(-1, 720)));
  EXPECT_EQ(named("I10"), b(2, Rational(1, 90)));
  EXPECT_EQ(named("I11"), b(1, Rational(1, 12)));
  EXPECT_EQ(named("I12"), b(1, Rational(-1, 12)));
  EXPECT_EQ(named("I13"), b(1, Rational(1, 12)));
  EXPECT_EQ(named("I14"), b(1, Rational(1, 24)));
  EXPECT_EQ(named("I15"), b(1, Rational(-1, 8)) + RegValue::term(2, 1, Rational(1, 6)));
  EXPECT_EQ(named("I15R"), b(1, Rational(-1, 8)));
  EXPECT_EQ(named("I15div"), RegValue::term(2, 1, Rational(1, 6)));
  EXPECT_THROW(registry_entry("I99"), std::invalid_argument);
}

TEST(Dimreg, ModeRegValues) {
  const RuleSet mr = RuleSet::modereg();
  EXPECT_EQ(named("I14", mr), b(1, Rational(1, 12)));
  EXPECT_EQ(named("I15R", mr), b(1, Rational(-1, 4)));
  EXPECT_EQ(named("I9", mr), b(2, Rational(1, 180)));
  EXPECT_EQ(named("I8R", mr), b(2, Rational(-1, 18)));
  EXPECT_EQ(named("I10", mr), b(2, Rational(1, 90)));
}

TEST(Dimreg, ConstraintSystems) {
  RegValue i14 = named("I14"), i15 = named("I15R");
  EXPECT_EQ(i14 + i15, b(1, Rational(-1, 12)));
  EXPECT_TRUE((Rational(3) * i14 + i15).is_zero());
  RegValue i8 = named("I8R"), i9 = named("I9"), i10 = named("I10");
  EXPECT_EQ(i8 + Rational(4) * i9 + i10, b(2, Rational(-1, 120)));
  EXPECT_TRUE((i8 - Rational(2) * i9 + i10).is_zero());
}

TEST(Dimreg, LiftTags) {
  EXPECT_EQ(sorted_tags(lifted("Dl(1,2)*Dr(1,2)*DD(1,2)")),
            (std::vector<DerivTag>{DerivTag::Single, DerivTag::Single, DerivTag::MuNu}));
  EXPECT_EQ(sorted_tags(lifted("D(1,2)*DD(1,2)^2")),
            (std::vector<DerivTag>{DerivTag::None, DerivTag::MuNu, DerivTag::MuNu}));
  TaggedTerm eq = lifted("DD(1,1)*D(1,1)");
  bool mumu = false;
  for (const auto& f : eq.factors) mumu = mumu || f.type == TaggedFactor::Type::MuMuEqualTime;
  EXPECT_TRUE(mumu);
  EXPECT_THROW(lift(parse_integrand("eps(1,2)*D(1,2)").front()), IllegalMove);
  EXPECT_THROW(lift(parse_integrand("Dl(1,2)*Dl(1,3)*Dl(1,4)").front()), IllegalMove);
}

TEST(Dimreg, EqualTimeSubstitution) {
  TaggedTerm t = lifted("DD(1,1)*D(1,1)");
  int idx = -1;
  for (int k = 0; k < static_cast<int>(t.factors.size()); ++k)
    if (t.factors[k].type == TaggedFactor::Type::MuMuEqualTime) idx = k;
  ASSERT_GE(idx, 0);
  Move m;
  m.type = Move::Type::EqualTimeSubstitute;
  m.factor = idx;
  MoveResult r = apply(m, t, RuleSet::dimreg());
  ASSERT_EQ(r.terms.size(), 1u);
  for (const auto& f : r.terms[0].factors) EXPECT_NE(f.type, TaggedFactor::Type::MuMuEqualTime);
  // DD(t,t) -> delta0 - 1/beta; the remaining D(t,t) integrates to beta^2/6.
  EXPECT_EQ(integrate(to_1d(r.terms[0]), RuleSet::dimreg()),
            (RegValue::delta0() - RegValue::beta(-1)) * b(2, Rational(1, 6)));
}

TEST(Dimreg, IllegalMovesNameTheTag) {
  TaggedTerm t = lifted("Dl(1,2)*Dr(1,2)*DD(1,2)");
  int munu = -1;
  for (int k = 0; k < static_cast<int>(t.factors.size()); ++k)
    if (t.factors[k].tag() == DerivTag::MuNu) munu = k;
  ASSERT_GE(munu, 0);
  for (auto type : {Move::Type::EqualTimeSubstitute, Move::Type::FieldEquation, Move::Type::ReturnTo1D}) {
    Move m;
    m.type = type;
    m.factor = munu;
    try {
      apply(m, t, RuleSet::dimreg());
      FAIL() << "move was accepted: " << m.str();
    } catch (const IllegalMove& e) {
      EXPECT_NE(std::string(e.what()).find("MuNu"), std::string::npos) << e.what();
    }
  }
  std::string why;
  EXPECT_FALSE(return_to_1d_legal(t, &why));
  EXPECT_NE(why.find("MuNu"), std::string::npos);
}

TEST(Dimreg, ScriptedLegalRoute) {
  Move pi;
  pi.type = Move::Type::PartialIntegration;
  pi.var = 0;
  pi.factor = 2;
  pi.slot = 0;
  Move fe;
  fe.type = Move::Type::FieldEquation;
  fe.factor = 0;
  Move back;
  back.type = Move::Type::ReturnTo1D;
  ScriptResult r = run_script(parse_integrand("Dl(1,2)*Dr(1,2)*DD(1,2)").front(), {pi, fe, back}, RuleSet::dimreg());
  ASSERT_TRUE(r.completed) << r.error;
  EXPECT_EQ(r.value, b(1, Rational(1, 24)));
  std::string violation;
  EXPECT_TRUE(audit_log(r.log, &violation)) << violation;
}

TEST(Dimreg, ForbiddenRouteIsRejected) {
  ScriptResult r = forbidden_double_partial_integration(RuleSet::dimreg());
  EXPECT_FALSE(r.completed);
  EXPECT_NE(r.error.find("MuNu"), std::string::npos);
  bool rejected = false;
  for (const auto& e : r.log) rejected = rejected || (e.status == "rejected" && e.tag == "MuNu");
  EXPECT_TRUE(rejected);
}

TEST(Dimreg, MoveLogAudit) {
  for (const auto& e : registry()) {
    NamedResult r = evaluate_named(e.name, RuleSet::dimreg());
    std::string violation;
    EXPECT_TRUE(audit_log(r.log, &violation)) << e.name << ": " << violation;
  }
  std::vector<LogEntry> bad = {{"FieldEquation(factor 1)", "DD(1,2)", "MuNu", "applied", "", 1}};
  EXPECT_FALSE(audit_log(bad));
  std::vector<LogEntry> bad2 = {{"EqualTimeSubstitute(factor 0)", "DD(1,2)", "MuNu", "applied", "", 0}};
  EXPECT_FALSE(audit_log(bad2));
}

TEST(Dimreg, DivergenceSplitIsLogged) {
  ReduceResult r = reduce(parse_integrand("D(1,2)*DD(1,2)^2"), RuleSet::dimreg());
  bool split = false;
  for (const auto& e : r.log) split = split || e.move == "DivergenceSplit";
  EXPECT_TRUE(split);
  EXPECT_EQ(r.divergent_part, RegValue::term(2, 1, Rational(1, 6)));
}

TEST(Dimreg, Linearity) {
  RegValue i14 = named("I14"), i15 = named("I15"), i10 = named("I10");
  RegValue combo = reduce(parse_integrand("2/5*Dl(1,2)*Dr(1,2)*DD(1,2) - 3*D(1,2)*DD(1,2)^2 + 7*Dl(1,2)^2*Dr(1,2)^2"),
                          RuleSet::dimreg())
                       .value;
  EXPECT_EQ(combo, Rational(2, 5) * i14 - Rational(3) * i15 + Rational(7) * i10);
}

TEST(Dimreg, CanonicalKeyIgnoresLabels) {
  EXPECT_EQ(canonical_key(lifted("Dl(1,2)*Dr(1,2)*DD(1,2)")), canonical_key(lifted("DD(2,1)*Dr(2,1)*Dl(2,1)")));
  EXPECT_NE(canonical_key(lifted("Dl(1,2)*Dr(1,2)*DD(1,2)")), canonical_key(lifted("D(1,2)*DD(1,2)^2")));
}

TEST(Dimreg, DepthLimitNeverGuesses) {
  Reducer shallow(RuleSet::dimreg(), 0);
  EXPECT_THROW(shallow.reduce(parse_integrand("Dl(1,2)*Dr(1,2)*DD(1,2)").front()), NoLegalReduction);
}

TEST(Dimreg, LogJsonShape) {
  NamedResult r = evaluate_named("I14", RuleSet::dimreg());
  nlohmann::json j = log_to_json(r.log);
  ASSERT_TRUE(j.is_array());
  ASSERT_FALSE(j.empty());
  for (const char* key : {"move", "target", "tag", "status", "detail", "depth"}) EXPECT_TRUE(j[0].contains(key));
}
