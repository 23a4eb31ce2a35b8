#include "generators.hpp"

#include <utility>

namespace reftest {

using namespace covtypes;

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
std::int64_t small(Rng& rng) { return std::uniform_int_distribution<std::int64_t>(-3, 3)(rng); }

}  // namespace

Qualifier random_int_term(Rng& rng, int depth, const std::vector<std::string>& names, bool nu) {
  const int leaves = 1 + (nu ? 1 : 0) + (names.empty() ? 0 : 1);
  if (depth <= 0 || coin(rng, 0.4)) {
    int k = pick(rng, leaves);
    if (k == 0) return q::lit(small(rng));
    if (nu && k == 1) return q::nu();
    return q::var(names[pick(rng, static_cast<int>(names.size()))]);
  }
  Qualifier a = random_int_term(rng, depth - 1, names, nu);
  Qualifier b = random_int_term(rng, depth - 1, names, nu);
  return coin(rng) ? q::add(a, b) : q::sub(a, b);
}

Qualifier random_formula(Rng& rng, int depth, const std::vector<std::string>& names, bool nu, bool quantifiers) {
  const auto term = [&] { return random_int_term(rng, 1, names, nu); };
  if (depth <= 0 || coin(rng, 0.3)) {
    switch (pick(rng, 6)) {
      case 0: return coin(rng, 0.8) ? q::eq(term(), term()) : q::boolean(coin(rng));
      case 1: return q::le(term(), term());
      case 2: return q::lt(term(), term());
      case 3: return q::even(term());
      case 4: return q::odd(term());
      default: return q::eq(term(), term());
    }
  }
  const auto sub = [&] { return random_formula(rng, depth - 1, names, nu, quantifiers); };
  const int forms = quantifiers ? 7 : 6;
  switch (pick(rng, forms)) {
    case 0: return q::not_(sub());
    case 1: return q::and_(sub(), sub());
    case 2: return q::or_(sub(), sub());
    case 3: return q::implies(sub(), sub());
    case 4: return q::iff(sub(), sub());
    case 5: return q::and_(sub(), sub());
    default: {
      const std::string z = coin(rng) ? "z" : "z2";
      std::vector<std::string> inner = names;
      inner.push_back(z);
      Qualifier bound = q::and_(q::le(q::lit(-3), q::var(z)), q::le(q::var(z), q::lit(3)));
      Qualifier body = random_formula(rng, depth - 1, inner, nu, false);
      return coin(rng) ? q::forall(z, BaseType::integer(), bound, body)
                       : q::exists(z, BaseType::integer(), bound, body);
    }
  }
}

VC random_vc(Rng& rng, bool universal_only) {
  VC vc;
  std::vector<std::string> names;
  const int n = 1 + pick(rng, 3);
  for (int k = 0; k < n; ++k) {
    const std::string x = "x" + std::to_string(k);
    std::vector<std::string> visible = names;
    visible.push_back(x);
    Qualifier bound = coin(rng, 0.3) ? q::tt() : random_formula(rng, 1, visible, false);
    const Quant quant = universal_only || coin(rng, 0.6) ? Quant::Forall : Quant::Exists;
    vc.prefix.push_back({quant, x, BaseType::integer(), bound});
    names.push_back(x);
  }
  vc.matrix = random_formula(rng, 3, names, false, !universal_only && coin(rng, 0.3));
  return vc;
}

// ---------------------------------------------------------------------------
// Programs

namespace {

enum class Ty { Int, Bool, PairII, PairBI };

const char* goal_of(Ty t) {
  switch (t) {
    case Ty::Int: return "[int | true]";
    case Ty::Bool: return "[bool | true]";
    case Ty::PairII: return "[int * int | true]";
    case Ty::PairBI: return "[bool * int | true]";
  }
  return "";
}

class ProgramGen {
 public:
  explicit ProgramGen(Rng& rng) : rng_(rng) {}

  std::string program(int depth) {
    std::string out;
    const int defs = pick(rng_, 3);
    for (int k = 0; k < defs; ++k) {
      const std::string f = "g" + std::to_string(k);
      scope_ = {{"x", Ty::Int}};
      out += "let " + f + " (x : int) = " + gen(Ty::Int, 2) + "\n";
      defs_.push_back(f);
    }
    scope_.clear();
    const Ty t = static_cast<Ty>(pick(rng_, 4));
    out += "check\n  " + gen(t, depth) + "\n: " + goal_of(t) + "\n";
    return out;
  }

 private:
  std::string fresh_name() {
    static const char* pool[] = {"x", "y", "z", "w"};
    return pool[pick(rng_, 4)];
  }

  std::vector<std::string> vars_of(Ty t) const {
    std::vector<std::string> out;
    // the latest binding of a name wins
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      bool shadowed = false;
      for (auto jt = scope_.rbegin(); jt != it; ++jt) shadowed |= jt->first == it->first;
      if (!shadowed && it->second == t) out.push_back(it->first);
    }
    return out;
  }

  std::string int_atom() {
    auto vs = vars_of(Ty::Int);
    if (!vs.empty() && coin(rng_, 0.6)) return vs[pick(rng_, static_cast<int>(vs.size()))];
    return lit(small(rng_));
  }

  static std::string lit(std::int64_t n) { return n < 0 ? "(" + std::to_string(n) + ")" : std::to_string(n); }

  std::string qual() {
    std::vector<std::string> names = vars_of(Ty::Int);
    if (names.size() > 2) names.resize(2);
    return to_string(random_formula(rng_, 1, names, true));
  }

  std::string leaf(Ty t) {
    auto vs = vars_of(t);
    if (!vs.empty() && coin(rng_, 0.5)) return vs[pick(rng_, static_cast<int>(vs.size()))];
    switch (t) {
      case Ty::Int:
        switch (pick(rng_, 4)) {
          case 0: return "(int_gen ())";
          case 1: {
            std::int64_t a = small(rng_), b = a + pick(rng_, 3);
            return "(int_range " + lit(a) + " " + lit(b) + ")";
          }
          case 2: return "(assume [int | " + qual() + "])";
          default: return int_atom();
        }
      case Ty::Bool:
        switch (pick(rng_, 3)) {
          case 0: return "(bool_gen ())";
          case 1: return coin(rng_) ? "true" : "false";
          default: return std::string("(assume [bool | ") + (coin(rng_) ? "v" : "!v") + "])";
        }
      case Ty::PairII: return "(" + int_atom() + ", " + int_atom() + ")";
      case Ty::PairBI: return "(assert {int | " + qual() + "} " + int_atom() + ")";
    }
    return "()";
  }

  std::string let_in(Ty t, int depth) {
    const Ty bt = static_cast<Ty>(pick(rng_, 4));
    std::string bound = gen(bt, depth - 1);
    const std::string x = fresh_name();
    scope_.push_back({x, bt});
    std::string body = gen(t, depth - 1);
    scope_.pop_back();
    return "(let " + x + " = " + bound + " in " + body + ")";
  }

  std::string let_pair(Ty t, int depth) {
    const bool bi = coin(rng_);
    std::string bound = gen(bi ? Ty::PairBI : Ty::PairII, depth - 1);
    std::string a = fresh_name(), b = fresh_name();
    if (a == b) b = a == "w" ? "x" : "w";
    scope_.push_back({a, bi ? Ty::Bool : Ty::Int});
    scope_.push_back({b, Ty::Int});
    std::string body = gen(t, depth - 1);
    scope_.pop_back();
    scope_.pop_back();
    return "(let (" + a + ", " + b + ") = " + bound + " in " + body + ")";
  }

  std::string if_then(Ty t, int depth) {
    return "(if " + gen(Ty::Bool, depth - 1) + " then " + gen(t, depth - 1) + " else " + gen(t, depth - 1) + ")";
  }

  std::string lambda_app(Ty t, int depth) {
    std::string arg = gen(Ty::Int, depth - 1);
    const std::string x = fresh_name();
    scope_.push_back({x, Ty::Int});
    std::string body = gen(t, depth - 1);
    scope_.pop_back();
    const std::string param = coin(rng_) ? x : "(" + x + " : int)";
    return "((fun " + param + " -> " + body + ") " + arg + ")";
  }

  std::string gen(Ty t, int depth) {
    if (depth <= 0 || coin(rng_, 0.2)) return leaf(t);
    const int common = 4;
    int k = pick(rng_, common + 3);
    if (k == 0) return let_in(t, depth);
    if (k == 1) return let_pair(t, depth);
    if (k == 2) return if_then(t, depth);
    if (k == 3) return lambda_app(t, depth);
    switch (t) {
      case Ty::Int:
        switch (k) {
          case 4: return "(" + gen(Ty::Int, depth - 1) + (coin(rng_) ? " + " : " - ") + gen(Ty::Int, depth - 1) + ")";
          case 5: return "(" + std::string(coin(rng_) ? "fst " : "snd ") + gen(Ty::PairII, depth - 1) + ")";
          default:
            if (!defs_.empty()) return "(" + defs_[pick(rng_, static_cast<int>(defs_.size()))] + " " + int_atom() + ")";
            return "(snd " + gen(Ty::PairBI, depth - 1) + ")";
        }
      case Ty::Bool:
        switch (k) {
          case 4: {
            static const char* ops[] = {" < ", " <= ", " == ", " > ", " >= "};
            return "(" + gen(Ty::Int, depth - 1) + ops[pick(rng_, 5)] + gen(Ty::Int, depth - 1) + ")";
          }
          case 5: return "(" + gen(Ty::Bool, depth - 1) + (coin(rng_) ? " && " : " || ") + gen(Ty::Bool, depth - 1) + ")";
          default: return coin(rng_) ? "(not " + gen(Ty::Bool, depth - 1) + ")" : "(is_even " + gen(Ty::Int, depth - 1) + ")";
        }
      case Ty::PairII:
        return "(" + gen(Ty::Int, depth - 1) + ", " + gen(Ty::Int, depth - 1) + ")";
      case Ty::PairBI:
        if (k == 4) return "(" + gen(Ty::Bool, depth - 1) + ", " + gen(Ty::Int, depth - 1) + ")";
        {
          std::string bound = gen(Ty::PairBI, depth - 1);
          const std::string x = fresh_name();
          scope_.push_back({x, Ty::Int});
          std::string body = gen(Ty::PairBI, depth - 1);
          scope_.pop_back();
          return "(let* " + x + " = " + bound + " in " + body + ")";
        }
    }
    return leaf(t);
  }

  Rng& rng_;
  std::vector<std::pair<std::string, Ty>> scope_;
  std::vector<std::string> defs_;
};

}  // namespace

std::string random_program(Rng& rng, int depth) { return ProgramGen(rng).program(depth); }

}  // namespace reftest
