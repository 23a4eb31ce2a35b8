#include <gtest/gtest.h>

#include "support/common.hpp"

using namespace covtypes;
using namespace reftest;

namespace {

CorePtr term(const std::string& body, const std::string& goal = "[int | true]") {
  return load_program("check " + body + " : " + goal).term;
}

Membership member(const std::string& body, const std::string& goal) {
  return member_type(term(body, goal), T(goal), OracleOptions{}).membership;
}

}  // namespace

TEST(MemberType, GridRows) {
  EXPECT_EQ(member("int_gen ()", "[int | true]"), Membership::Member);
  EXPECT_EQ(member("int_gen ()", "{int | v == 1}"), Membership::NonMember);
  EXPECT_EQ(member("1", "[int | v == 1]"), Membership::Member);
  EXPECT_EQ(member("1", "[int | true]"), Membership::NonMember);
  EXPECT_EQ(member("1", "{int | true}"), Membership::Member);
}

TEST(MemberType, ArrowGoal) {
  const char* imp1 = "let imp1 (x : int) = if x > 0 then 1 else 2\ncheck imp1 : [int | true] -> [int | 1 <= v && v <= 2]";
  CoreProgram p = load_program(imp1);
  EXPECT_TRUE(member_type(p.term, p.goal, OracleOptions{}).member());
  CoreProgram bad = load_program(
      "let imp (x : int) = if x > 0 then 1 else 1\ncheck imp : [int | true] -> [int | 1 <= v && v <= 2]");
  EXPECT_EQ(member_type(bad.term, bad.goal, OracleOptions{}).membership, Membership::NonMember);
}

TEST(MemberType, OverArrowDependentResult) {
  CoreProgram p = load_program("let f (x : int) = x + 1\ncheck f : x:{int | 0 <= v} -> [int | v == x + 1]");
  EXPECT_TRUE(member_type(p.term, p.goal, OracleOptions{}).member());
  CoreProgram q = load_program("let f (x : int) = x\ncheck f : x:{int | 0 <= v} -> [int | v == x + 1]");
  EXPECT_EQ(member_type(q.term, q.goal, OracleOptions{}).membership, Membership::NonMember);
}

TEST(MemberCtx, GeneratorReading) {
  CoreTerm v{CoreTerm::Kind::Val};
  v.value = Value::var("x");
  CorePtr e = CoreTerm::make(v);
  Context wide{cover_binding("x", T("[int | v == 1 || v == 2]"))};
  EXPECT_TRUE(member_ctx(e, T("[int | v == 1 || v == 2]"), wide, OracleOptions{}).member());
  Context narrow{cover_binding("x", T("[int | v == 1]"))};
  EXPECT_EQ(member_ctx(e, T("[int | v == 1 || v == 2]"), narrow, OracleOptions{}).membership, Membership::NonMember);
}

TEST(MemberCtx, EmptyContextIsMemberType) {
  CorePtr e = term("int_range 1 2");
  for (const char* g : {"[int | v == 1]", "[int | v == 3]", "{int | 0 < v}", "{int | v == 1}"})
    EXPECT_EQ(member_ctx(e, T(g), {}, OracleOptions{}).membership, member_type(e, T(g), OracleOptions{}).membership) << g;
}

TEST(ProbeGenerators, StrictSupersets) {
  auto gens = probe_generators(Q("v == 1"), BaseType::integer(), {}, 4);
  ASSERT_GE(gens.size(), 2u);
  EvalOptions o;
  o.window = 4;
  EXPECT_EQ(outcomes(gens[0], o).values, (std::set<SemanticValue>{I(1)}));
  for (std::size_t k = 1; k < gens.size(); ++k) {
    auto vs = outcomes(gens[k], o).values;
    EXPECT_TRUE(vs.count(I(1)));
    EXPECT_GT(vs.size(), 1u);
  }
}

TEST(Fundamental, Examples) {
  const auto verdict = [](const std::string& stem) {
    CoreProgram p = load_file(corpus_file(stem));
    OracleOptions o;
    o.window = effective_window(8, p.pragma);
    return fundamental_check(p, check(p), o).verdict;
  };
  EXPECT_EQ(verdict("incor_42"), "consistent");
  EXPECT_EQ(verdict("incor_43"), "consistent");
  EXPECT_EQ(verdict("grid_lit_cover_top"), "consistent");
}

TEST(Fundamental, ReportsFakeAcceptance) {
  // feed the comparison an accepting verdict for a nonmember
  CoreProgram p = load_file(corpus_file("grid_lit_cover_top"));
  CheckResult fake;
  fake.outcome = CheckResult::Outcome::Accepted;
  EXPECT_EQ(fundamental_check(p, fake, OracleOptions{}).verdict, "SOUNDNESS-BUG");
}

TEST(Fundamental, CorollaryOnArrowGoals) {
  CoreProgram p = load_file(corpus_file("imp1"));
  FundamentalReport r = fundamental_check(p, check(p), OracleOptions{});
  EXPECT_EQ(r.corollary, "holds");
}
