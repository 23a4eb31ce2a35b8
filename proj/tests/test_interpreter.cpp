#include <gtest/gtest.h>

#include "covtypes/error.hpp"
#include "covtypes/vc.hpp"
#include "support/common.hpp"

using namespace covtypes;
using namespace reftest;

using Values = std::set<SemanticValue>;

namespace {

const char* kIncor =
    "check\n"
    "let x = int_gen () in\n"
    "let y = int_gen () in\n"
    "let z = int_range 11 11 in\n"
    "if x == y then 42 else z\n"
    ": [int | v == 42]\n";

}  // namespace

TEST(Outcomes, GeneratorEnumeratesWindow) {
  EXPECT_EQ(run("check let x = int_gen () in x : [int | true]", 2), (Values{I(-2), I(-1), I(0), I(1), I(2)}));
}

TEST(Outcomes, IncorrectnessExample) { EXPECT_EQ(run(kIncor, 64), (Values{I(11), I(42)})); }

TEST(Outcomes, FooOfThree) {
  const char* src =
      "let foo (x : int) = if is_even x then (false, x) else if bool_gen () then (true, x) else (false, x)\n"
      "check foo 3 : [bool * int | true]";
  EXPECT_EQ(run(src), (Values{P(B(false), I(3)), P(B(true), I(3))}));
}

TEST(Outcomes, AssertFailure) {
  EXPECT_EQ(run("check let x = 3 in assert {int | v == 4} x : [bool * int | true]"), (Values{P(B(false), I(3))}));
  EvalOptions o;
  o.assert_unit_payload = true;
  CoreProgram p = load_program("check let x = 3 in assert {int | v == 4} x : [bool * unit | true]");
  EXPECT_EQ(outcomes(p.term, o).values, (Values{P(B(false), SemanticValue::unit())}));
}

TEST(Outcomes, Builtins) {
  EXPECT_EQ(run("check int_range 11 11 : [int | true]"), Values{I(11)});
  EXPECT_EQ(run("check is_even 4 : [bool | true]"), Values{B(true)});
  EXPECT_EQ(run("check 3 + 2 : [int | true]"), Values{I(5)});
  EXPECT_EQ(run("check (+) 3 2 : [int | true]"), Values{I(5)});
  EXPECT_EQ(run("check snd (1, 2) : [int | true]"), Values{I(2)});
}

TEST(Outcomes, Errors) {
  EXPECT_THROW(run("check int_range 3 1 : [int | true]"), EvalError);
  EXPECT_THROW(run("check (fun (x : int) -> x) : [int | true]"), EvalError);
}

TEST(Outcomes, EmptyAssumeHasNoOutcome) { EXPECT_TRUE(run("check assume [int | false] : [int | true]").empty()); }

TEST(CanonicalGenerator, Examples) {
  EXPECT_EQ(outcomes(canonical_generator(Q("v == 1 || v == 2"), BaseType::integer(), 8), EvalOptions{}).values,
            (Values{I(1), I(2)}));
  EXPECT_EQ(outcomes(canonical_generator(q::tt(), BaseType::boolean(), 8), EvalOptions{}).values,
            (Values{B(false), B(true)}));
  EvalOptions w2;
  w2.window = 2;
  EXPECT_EQ(outcomes(canonical_generator(Q("even(v)"), BaseType::integer(), 2), w2).values,
            (Values{I(-2), I(0), I(2)}));
  EXPECT_THROW(canonical_generator(q::ff(), BaseType::integer(), 8), EvalError);
}

TEST(BuiltinEnv, BindsEveryBuiltin) {
  RtEnv env = builtin_env();
  for (const auto& b : builtins()) EXPECT_NE(env.lookup(b.name), nullptr) << b.name;
}

// Set semantics: both traversal orders reach the same outcomes.
TEST(Outcomes, StrategiesAgreeOnCorpus) {
  for (const auto& f : corpus_files()) {
    CoreProgram p = load_file(f);
    EvalOptions dfs, bfs;
    dfs.window = bfs.window = effective_window(8, p.pragma);
    bfs.strategy = Strategy::BreadthFirst;
    std::vector<RtValue> raw;
    try {
      raw = evaluate(p.term, RtEnv{}, dfs);
    } catch (const CovError&) {
      continue;  // programs that are functions or ill-typed on purpose
    }
    if (!raw.empty() && !std::holds_alternative<SemanticValue>(raw.front())) continue;
    EXPECT_EQ(outcomes(p.term, dfs), outcomes(p.term, bfs)) << f;
  }
}
