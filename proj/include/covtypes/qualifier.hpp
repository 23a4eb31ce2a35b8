#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "covtypes/base_type.hpp"
#include "covtypes/semantic_value.hpp"

namespace covtypes {

enum class QOp {
  True,
  False,
  Nu,
  Var,
  IntLit,
  Eq,
  Le,
  Lt,
  Add,
  Sub,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Even,
  Odd,
  Fst,
  Snd,
  // Bounded quantifiers. Never produced by the parser; they only appear in
  // verification conditions. args = {bound, body}; the bound mentions the
  // quantified variable by name.
  Forall,
  Exists,
};

/// Sorted first-order term/formula over the value variable ν and program
/// variables. Immutable and cheap to copy (shared tree).
class Qualifier {
 public:
  Qualifier();  // `true`

  QOp op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  std::int64_t value() const { return node_->value; }
  const BaseType& bound_sort() const { return node_->sort; }
  std::size_t arity() const { return node_->args.size(); }
  const Qualifier& arg(std::size_t i) const { return node_->args[i]; }
  const std::vector<Qualifier>& args() const { return node_->args; }

  bool is_true() const { return op() == QOp::True; }
  bool is_false() const { return op() == QOp::False; }
  bool is_quantifier() const { return op() == QOp::Forall || op() == QOp::Exists; }

  static Qualifier make(QOp op, std::vector<Qualifier> args, std::string name = {},
                        std::int64_t value = 0, BaseType sort = {});

  friend bool operator==(const Qualifier& a, const Qualifier& b);

 private:
  struct Node {
    QOp op;
    std::string name;
    std::int64_t value = 0;
    BaseType sort;
    std::vector<Qualifier> args;
  };
  explicit Qualifier(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Builders. The connective builders fold `true`/`false` operands.
namespace q {
Qualifier tt();
Qualifier ff();
Qualifier boolean(bool b);
Qualifier nu();
Qualifier var(std::string name);
Qualifier lit(std::int64_t n);
Qualifier eq(Qualifier a, Qualifier b);
Qualifier le(Qualifier a, Qualifier b);
Qualifier lt(Qualifier a, Qualifier b);
Qualifier add(Qualifier a, Qualifier b);
Qualifier sub(Qualifier a, Qualifier b);
Qualifier not_(Qualifier a);
Qualifier and_(Qualifier a, Qualifier b);
Qualifier or_(Qualifier a, Qualifier b);
Qualifier implies(Qualifier a, Qualifier b);
Qualifier iff(Qualifier a, Qualifier b);
Qualifier even(Qualifier a);
Qualifier odd(Qualifier a);
Qualifier fst(Qualifier a);
Qualifier snd(Qualifier a);
Qualifier forall(std::string name, BaseType sort, Qualifier bound, Qualifier body);
Qualifier exists(std::string name, BaseType sort, Qualifier bound, Qualifier body);
Qualifier conj(const std::vector<Qualifier>& parts);
Qualifier disj(const std::vector<Qualifier>& parts);
/// Formula stating that `term` equals the value `v` (pairs compared through
/// projections, unit trivially).
Qualifier equals_value(const Qualifier& term, const SemanticValue& v);
/// Term denoting `v`, when the qualifier language has one (ints, bools).
std::optional<Qualifier> term_of(const SemanticValue& v);
}  // namespace q

using SortEnv = std::map<std::string, BaseType>;
using Valuation = std::map<std::string, SemanticValue>;

/// Sort of `q` under `env`, with ν of sort `nu_sort` (absent = ν unbound).
/// Throws SortError / ScopeError.
BaseType sort_of(const Qualifier& q, const SortEnv& env, const std::optional<BaseType>& nu_sort);

/// Checks that `q` is a well-sorted boolean formula.
void check_formula(const Qualifier& q, const SortEnv& env, const std::optional<BaseType>& nu_sort);

std::set<std::string> free_names(const Qualifier& q);
bool mentions(const Qualifier& q, const std::string& name);
bool mentions_nu(const Qualifier& q);

/// Capture-avoiding substitution of a term for a variable (or for ν).
Qualifier subst(const Qualifier& q, const std::string& name, const Qualifier& replacement);
Qualifier subst_nu(const Qualifier& q, const Qualifier& replacement);

/// Evaluates a term. `nu` may be null when ν does not occur. Quantifiers
/// are enumerated over [-window, window]; window 0 rejects them.
SemanticValue eval_term(const Qualifier& q, const Valuation& valuation, const SemanticValue* nu,
                        std::int64_t window = 0);
bool eval(const Qualifier& q, const Valuation& valuation, const SemanticValue& nu,
          std::int64_t window = 0);
bool eval(const Qualifier& q, const Valuation& valuation, std::int64_t window = 0);

/// Largest |n| over integer literals in `q`.
std::int64_t max_abs_literal(const Qualifier& q);

/// Surface rendering (`v` for ν); parseable back for quantifier-free input.
std::string to_string(const Qualifier& q);

}  // namespace covtypes
