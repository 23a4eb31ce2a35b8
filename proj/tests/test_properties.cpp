// Randomized property suites. Every suite runs at least kCases cases from a
// fixed seed so failures reproduce; the failing input is printed.

#include <algorithm>

#include <gtest/gtest.h>

#include "covtypes/error.hpp"
#include "covtypes/vc.hpp"
#include "support/common.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace covtypes;
using namespace reftest;

namespace {

constexpr int kCases = 1000;
constexpr std::int64_t kW = 3;

Env random_env(Rng& rng, const std::vector<std::string>& names) {
  Env env;
  std::uniform_int_distribution<std::int64_t> d(-kW, kW);
  for (const auto& n : names) env[n] = I(d(rng));
  return env;
}

}  // namespace

// ---------------------------------------------------------------------------
// Qualifiers

TEST(Property, EvalMatchesReference) {
  Rng rng(11);
  const std::vector<std::string> names{"x", "y"};
  for (int c = 0; c < 2 * kCases; ++c) {
    Qualifier q = random_formula(rng, 3, names, true, true);
    Env env = random_env(rng, names);
    SemanticValue nu = I(std::uniform_int_distribution<std::int64_t>(-kW, kW)(rng));
    ASSERT_EQ(eval(q, env, nu, kW), ref_holds(q, env, &nu, kW)) << to_string(q);
  }
}

TEST(Property, SubstitutionLemma) {
  Rng rng(12);
  const std::vector<std::string> names{"x", "y", "z"};
  int cases = 0;
  for (int c = 0; c < kCases; ++c, ++cases) {
    Qualifier q = random_formula(rng, 3, names, true, true);
    // terms may mention z, which quantifiers inside q may rebind
    Qualifier t = random_int_term(rng, 2, names, false);
    Env env = random_env(rng, names);
    const SemanticValue tv = eval_term(t, env, nullptr, 0);

    // ν ↦ t
    ASSERT_EQ(eval(q, env, tv, kW), eval(subst_nu(q, t), env, kW)) << to_string(q) << " [v := " << to_string(t) << "]";

    // x ↦ t
    Env moved = env;
    moved["x"] = tv;
    SemanticValue nu = I(1);
    ASSERT_EQ(eval(q, moved, nu, kW), eval(subst(q, "x", t), env, nu, kW))
        << to_string(q) << " [x := " << to_string(t) << "]";
  }
  EXPECT_GE(cases, kCases);
}

// ---------------------------------------------------------------------------
// Deciders

TEST(Property, ParallelDecideMatchesSerialAndReference) {
  Rng rng(13);
  for (int c = 0; c < kCases; ++c) {
    VC vc = random_vc(rng);
    Verdict par = decide_bounded(vc, kW);
    Verdict ser = decide_bounded_reference(vc, kW);
    ASSERT_EQ(par.kind, ser.kind) << vc.to_string();
    ASSERT_EQ(par.witness, ser.witness) << vc.to_string();
    ASSERT_NE(par.kind, Verdict::Kind::WindowInsufficient);
    ASSERT_EQ(par.valid(), ref_holds(vc.as_formula(), {}, nullptr, kW)) << vc.to_string();
  }
}

TEST(Property, UniversalVcWindowMonotone) {
  // for purely universal VCs, a wider window can only find more counterexamples
  Rng rng(14);
  for (int c = 0; c < kCases; ++c) {
    VC vc = random_vc(rng, true);
    const bool small = decide_bounded(vc, kW).valid();
    const bool large = decide_bounded(vc, kW + 2).valid();
    ASSERT_TRUE(small || !large) << vc.to_string();
  }
}

// ---------------------------------------------------------------------------
// sub_base

namespace {

struct SubCase {
  Context ctx;
  std::vector<std::string> names;  // base names visible to qualifiers
};

SubCase random_ctx(Rng& rng) {
  SubCase s;
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: break;
    case 1:
      s.ctx.push_back(over_binding("x", RType::over(BaseType::integer(), random_formula(rng, 1, {}, true))));
      s.names = {"x"};
      break;
    case 2:
      s.ctx.push_back(cover_binding("y", RType::cover(BaseType::integer(), random_formula(rng, 1, {}, true))));
      s.names = {"y"};
      break;
    default:
      s.ctx.push_back(over_binding("x", RType::over(BaseType::integer(), random_formula(rng, 1, {}, true))));
      s.ctx.push_back(cover_binding("y", RType::cover(BaseType::integer(), random_formula(rng, 1, {"x"}, true))));
      s.names = {"x", "y"};
  }
  return s;
}

bool well_formed(const Context& ctx) {
  try {
    wf_ctx(ctx, kW);
    return true;
  } catch (const CovError&) {
    return false;
  }
}

bool decide(const Context& ctx, const RType& a, const RType& b) {
  Verdict v = decide_bounded(sub_base(ctx, a, b), kW);
  if (v.kind == Verdict::Kind::WindowInsufficient) throw std::runtime_error("window too small for generated case");
  return v.valid();
}

// Direct reading of the subtyping VC: over bindings universal, then ν,
// then cover bindings existential (self-framing when the super type
// mentions a cover name). Over/Over quantifies everything universally.
bool expected_sub(const Context& ctx, bool cover, const Qualifier& phi, const Qualifier& psi) {
  std::vector<SemanticValue> ints;
  for (std::int64_t n = -kW; n <= kW; ++n) ints.push_back(I(n));
  std::vector<const Binding*> overs, covers;
  for (const auto& b : ctx) (b.kind == Binding::Kind::Over ? overs : covers).push_back(&b);
  if (!cover) {
    std::function<bool(std::size_t, Env)> all = [&](std::size_t k, Env env) {
      if (k == ctx.size()) {
        for (const auto& v : ints)
          if (ref_holds(phi, env, &v, kW) && !ref_holds(psi, env, &v, kW)) return false;
        return true;
      }
      for (const auto& v : ints) {
        if (!ref_holds(ctx[k].type.qual(), env, &v, kW)) continue;
        Env inner = env;
        inner[ctx[k].name] = v;
        if (!all(k + 1, inner)) return false;
      }
      return true;
    };
    return all(0, {});
  }
  bool framed = false;
  for (const auto* b : covers) framed |= mentions(psi, b->name);
  // ∃ over the cover block, in context order
  const auto exists_block = [&](const Env& base, const std::function<bool(const Env&)>& body) {
    std::function<bool(std::size_t, Env)> go = [&](std::size_t k, Env env) {
      if (k == covers.size()) return body(env);
      for (const auto& v : ints) {
        if (!ref_holds(covers[k]->type.qual(), env, &v, kW)) continue;
        Env inner = env;
        inner[covers[k]->name] = v;
        if (go(k + 1, inner)) return true;
      }
      return false;
    };
    return go(0, base);
  };
  std::function<bool(std::size_t, Env)> forall_over = [&](std::size_t k, Env env) {
    if (k == overs.size()) {
      for (const auto& nu : ints) {
        bool ok;
        if (framed) {
          const bool lhs = exists_block(env, [&](const Env& e) { return ref_holds(psi, e, &nu, kW); });
          ok = !lhs || exists_block(env, [&](const Env& e) { return ref_holds(psi, e, &nu, kW) && ref_holds(phi, e, &nu, kW); });
        } else {
          // an empty cover block for this valuation leaves nothing to reach
          ok = !ref_holds(psi, env, &nu, kW) || exists_block(env, [&](const Env& e) { return ref_holds(phi, e, &nu, kW); });
        }
        if (!ok) return false;
      }
      return true;
    }
    for (const auto& v : ints) {
      if (!ref_holds(overs[k]->type.qual(), env, &v, kW)) continue;
      Env inner = env;
      inner[overs[k]->name] = v;
      if (!forall_over(k + 1, inner)) return false;
    }
    return true;
  };
  return forall_over(0, {});
}

}  // namespace

TEST(Property, SubBaseMatchesDenotationReading) {
  Rng rng(15);
  int cases = 0;
  while (cases < kCases) {
    SubCase s = random_ctx(rng);
    if (!well_formed(s.ctx)) continue;
    const bool cover = std::bernoulli_distribution(0.5)(rng);
    Qualifier phi = random_formula(rng, 2, s.names, true);
    Qualifier psi = random_formula(rng, 2, s.names, true);
    const auto mk = [&](const Qualifier& q) {
      return cover ? RType::cover(BaseType::integer(), q) : RType::over(BaseType::integer(), q);
    };
    ASSERT_EQ(decide(s.ctx, mk(phi), mk(psi)), expected_sub(s.ctx, cover, phi, psi))
        << (cover ? "cover " : "over ") << to_string(phi) << " <: " << to_string(psi) << " ctx size " << s.ctx.size();
    ++cases;
  }
}

TEST(Property, CoverageStrengtheningMonotone) {
  // [phi] <: [psi] valid  ==>  [phi || chi] <: [psi] and [phi] <: [psi && chi] valid
  Rng rng(16);
  int cases = 0, nontrivial = 0;
  while (cases < kCases) {
    SubCase s = random_ctx(rng);
    if (!well_formed(s.ctx)) continue;
    // the super side stays free of cover names: with the self-framing
    // reading, shrinking a framed goal can pick a different witness
    std::vector<std::string> over_names;
    for (const auto& b : s.ctx)
      if (b.kind == Binding::Kind::Over) over_names.push_back(b.name);
    Qualifier phi = random_formula(rng, 2, s.names, true);
    Qualifier psi = random_formula(rng, 2, over_names, true);
    Qualifier chi = random_formula(rng, 1, over_names, true);
    const auto C = [](const Qualifier& q) { return RType::cover(BaseType::integer(), q); };
    ++cases;
    if (!decide(s.ctx, C(phi), C(psi))) continue;
    ++nontrivial;
    ASSERT_TRUE(decide(s.ctx, C(q::or_(phi, chi)), C(psi))) << to_string(phi) << " | " << to_string(chi);
    ASSERT_TRUE(decide(s.ctx, C(phi), C(q::and_(psi, chi)))) << to_string(psi) << " & " << to_string(chi);
  }
  EXPECT_GT(nontrivial, kCases / 10);
}

TEST(Property, OverWeakeningMonotone) {
  // {phi} <: {psi} valid  ==>  {phi && chi} <: {psi} and {phi} <: {psi || chi} valid
  Rng rng(17);
  int cases = 0, nontrivial = 0;
  while (cases < kCases) {
    SubCase s = random_ctx(rng);
    if (!well_formed(s.ctx)) continue;
    Qualifier phi = random_formula(rng, 2, s.names, true);
    Qualifier psi = random_formula(rng, 2, s.names, true);
    Qualifier chi = random_formula(rng, 1, s.names, true);
    const auto O = [](const Qualifier& q) { return RType::over(BaseType::integer(), q); };
    ++cases;
    if (!decide(s.ctx, O(phi), O(psi))) continue;
    ++nontrivial;
    ASSERT_TRUE(decide(s.ctx, O(q::and_(phi, chi)), O(psi))) << to_string(phi) << " & " << to_string(chi);
    ASSERT_TRUE(decide(s.ctx, O(phi), O(q::or_(psi, chi)))) << to_string(psi) << " | " << to_string(chi);
  }
  EXPECT_GT(nontrivial, kCases / 10);
}

// ---------------------------------------------------------------------------
// Programs

namespace {

std::set<SemanticValue> core_outcomes(const CoreProgram& p, std::int64_t w, Strategy s = Strategy::DepthFirst) {
  EvalOptions o;
  o.window = w;
  o.strategy = s;
  return outcomes(p.term, o).values;
}

}  // namespace

TEST(Property, AnfPreservesOutcomes) {
  Rng rng(18);
  for (int c = 0; c < kCases; ++c) {
    const std::string src = random_program(rng);
    SurfaceProgram surface = parse_program(src);
    CoreProgram core = elaborate(surface);
    ASSERT_NO_THROW(check_anf(core.term)) << src;
    const auto want = surface_outcomes(surface, 2);
    ASSERT_EQ(core_outcomes(core, 2), want) << src;
    ASSERT_EQ(core_outcomes(core, 2, Strategy::BreadthFirst), want) << src;
  }
}

TEST(Property, OutcomesWindowMonotone) {
  Rng rng(19);
  for (int c = 0; c < kCases; ++c) {
    const std::string src = random_program(rng);
    CoreProgram core = load_program(src);
    auto small = core_outcomes(core, 1), mid = core_outcomes(core, 2), large = core_outcomes(core, 3);
    ASSERT_TRUE(std::includes(mid.begin(), mid.end(), small.begin(), small.end())) << src;
    ASSERT_TRUE(std::includes(large.begin(), large.end(), mid.begin(), mid.end())) << src;
  }
}
