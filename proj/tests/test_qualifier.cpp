#include <gtest/gtest.h>

#include "covtypes/error.hpp"
#include "covtypes/vc.hpp"
#include "support/common.hpp"

using namespace covtypes;
using namespace reftest;

TEST(Qualifier, SubstNuIntoProjection) {
  Qualifier got = subst_nu(Q("v == x"), q::snd(q::nu()));
  EXPECT_EQ(got, Q("snd(v) == x"));
}

TEST(Qualifier, SubstTrueIsTrue) { EXPECT_TRUE(subst_nu(q::tt(), q::lit(3)).is_true()); }

TEST(Qualifier, SubstNamedVariable) { EXPECT_EQ(subst(Q("v == 1 || v == y"), "y", q::lit(2)), Q("v == 1 || v == 2")); }

TEST(Qualifier, SubstAvoidsCapture) {
  // z is bound inside; substituting a term that mentions z must not capture
  Qualifier body = q::eq(q::var("y"), q::var("z"));
  Qualifier ex = q::exists("z", BaseType::integer(), q::tt(), body);
  Qualifier got = subst(ex, "y", q::add(q::var("z"), q::lit(1)));
  Valuation sigma{{"z", I(2)}};
  EXPECT_TRUE(eval(got, sigma, 4));  // ∃z'. z+1 = z' holds at z = 2
  EXPECT_TRUE(free_names(got).count("z"));
}

TEST(Qualifier, EvalExamples) {
  EXPECT_TRUE(eval(Q("v == 1 || v == 2"), {}, I(2)));
  EXPECT_FALSE(eval(q::ff(), {}, I(0)));
  EXPECT_FALSE(eval(Q("fst(v)"), {}, P(B(false), I(3))));
  EXPECT_TRUE(eval(Q("!fst(v) && odd(snd(v))"), {}, P(B(false), I(3))));
  EXPECT_TRUE(eval(Q("v <=> even(x)"), {{"x", I(4)}}, B(true)));
}

TEST(Qualifier, EvalNegativeParity) {
  EXPECT_TRUE(eval(Q("odd(v)"), {}, I(-3)));
  EXPECT_TRUE(eval(Q("even(v)"), {}, I(-4)));
}

TEST(Qualifier, SortErrors) {
  SortEnv env{{"b", BaseType::boolean()}};
  EXPECT_THROW(check_formula(Q("v + 1"), {}, BaseType::integer()), SortError);
  EXPECT_THROW(check_formula(Q("b == 1"), env, BaseType::integer()), SortError);
  EXPECT_THROW(check_formula(Q("fst(v)"), {}, BaseType::integer()), SortError);
  EXPECT_THROW(check_formula(Q("y == 1"), {}, BaseType::integer()), ScopeError);
  EXPECT_NO_THROW(check_formula(Q("fst(v) && snd(v) == 3"), {}, BaseType::prod(BaseType::boolean(), BaseType::integer())));
}

TEST(Qualifier, FreeNamesExcludeNu) {
  auto names = free_names(Q("v == x + y"));
  EXPECT_EQ(names, (std::set<std::string>{"x", "y"}));
  EXPECT_TRUE(mentions_nu(Q("v == x")));
  EXPECT_FALSE(mentions_nu(Q("x == 1")));
}

TEST(Qualifier, PrintParseRoundTrip) {
  for (const char* s : {"v == 1 || v == 2", "!fst(v) && odd(snd(v))", "1 <= v && v <= 2", "v <=> even(x)",
                        "x - 1 < v ==> false", "true"}) {
    Qualifier a = Q(s);
    EXPECT_EQ(Q(to_string(a)), a) << s;
  }
}

TEST(Qualifier, MaxAbsLiteral) { EXPECT_EQ(max_abs_literal(Q("v == 42 || v == -43")), 43); }

TEST(Satisfiable, Examples) {
  EXPECT_TRUE(satisfiable(Q("v == 11"), {}, 16, BaseType::integer()));
  EXPECT_FALSE(satisfiable(q::ff(), {}, 16, BaseType::integer()));
  EXPECT_FALSE(satisfiable(Q("v == 1 && v == 2"), {}, 16, BaseType::integer()));
}

namespace {

VC forall_nu(Qualifier bound, Qualifier matrix) {
  VC vc;
  vc.prefix.push_back({Quant::Forall, kNuName, BaseType::integer(), subst_nu(bound, q::var(kNuName))});
  vc.matrix = subst_nu(matrix, q::var(kNuName));
  return vc;
}

}  // namespace

TEST(DecideBounded, Examples) {
  EXPECT_TRUE(decide_bounded(forall_nu(Q("v == 1"), Q("v == 1 || v == 2")), 4).valid());

  Verdict bad = decide_bounded(forall_nu(Q("v == 1 || v == 2"), Q("v == 1")), 4);
  ASSERT_EQ(bad.kind, Verdict::Kind::Invalid);
  ASSERT_EQ(bad.witness.size(), 1u);
  EXPECT_EQ(bad.witness[0].second, I(2));

  Qualifier ex = q::exists("x", BaseType::integer(), Q("x == 1 || x == 2"), q::eq(q::var(kNuName), q::var("x")));
  VC vc = forall_nu(Q("v == 1 || v == 2"), q::tt());
  vc.matrix = ex;
  EXPECT_TRUE(decide_bounded(vc, 4).valid());
}

TEST(DecideBounded, LiteralOutsideWindow) {
  EXPECT_EQ(decide_bounded(forall_nu(Q("v == 42"), q::tt()), 8).kind, Verdict::Kind::WindowInsufficient);
}

TEST(DecideBounded, PairsAndBools) {
  VC vc;
  const BaseType bi = BaseType::prod(BaseType::boolean(), BaseType::integer());
  vc.prefix.push_back({Quant::Forall, "p", bi, q::tt()});
  vc.matrix = q::or_(q::fst(q::var("p")), q::not_(q::fst(q::var("p"))));
  EXPECT_TRUE(decide_bounded(vc, 2).valid());
  vc.matrix = q::le(q::snd(q::var("p")), q::lit(1));
  Verdict v = decide_bounded(vc, 2);
  ASSERT_EQ(v.kind, Verdict::Kind::Invalid);
  EXPECT_EQ(v.witness[0].second, P(B(false), I(2)));
}

TEST(DecideBounded, RejectsOpenVc) {
  VC vc;
  vc.matrix = Q("x == 1");
  EXPECT_THROW(decide_bounded(vc, 4), ScopeError);
}
