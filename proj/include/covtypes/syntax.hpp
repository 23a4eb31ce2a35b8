#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "covtypes/error.hpp"
#include "covtypes/rtype.hpp"

namespace covtypes {

// ---------------------------------------------------------------------------
// Surface syntax

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct Pattern {
  enum class Kind { Name, Pair, Unit };
  Kind kind = Kind::Name;
  std::string first;   // Name, Pair
  std::string second;  // Pair
  std::optional<BaseType> annot;  // `(x : int)`; erased, checked by basic typing
};

/// Lambda parameter annotation: none, a bare base type (`x : int`) or a full
/// refinement type.
struct ParamAnnot {
  std::optional<BaseType> base;
  std::optional<RType> rtype;

  bool empty() const { return !base && !rtype; }
};

struct SExpr {
  enum class Kind {
    Int,
    Bool,
    Unit,
    Var,
    Pair,
    App,
    Let,      // let pat = bound in body
    LetStar,  // let* pat = bound in body
    If,
    Assume,
    Assert,
    Lambda,
  };

  Kind kind;
  SourcePos pos;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string name;  // Var, Lambda parameter
  Pattern pat;       // Let, LetStar
  ParamAnnot param;  // Lambda
  RType type;        // Assume (cover), Assert (over)
  std::vector<SExprPtr> kids;  // Pair{a,b} App{f,a} Let{bound,body} If{c,t,e} Assert{v} Lambda{body}

  static SExprPtr make(SExpr e) { return std::make_shared<const SExpr>(std::move(e)); }
};

struct SurfaceDef {
  std::string name;
  std::vector<std::pair<std::string, ParamAnnot>> params;
  std::optional<RType> ascription;
  SExprPtr body;
  SourcePos pos;
};

/// Window / expectation hints read from a `(* covcheck: ... *)` header.
struct Pragma {
  std::optional<std::int64_t> window;
  std::optional<bool> expect_accept;
};

struct SurfaceProgram {
  std::vector<SurfaceDef> defs;
  SExprPtr main;
  RType goal;
  SourcePos goal_pos;
  Pragma pragma;
};

// ---------------------------------------------------------------------------
// Core (A-normal form)

struct CoreTerm;
using CorePtr = std::shared_ptr<const CoreTerm>;

struct Value {
  enum class Kind { Const, Var, Lambda, Pair };

  Kind kind = Kind::Const;
  SemanticValue constant;  // Const
  std::string name;        // Var; Lambda parameter
  ParamAnnot param;        // Lambda
  CorePtr body;            // Lambda
  std::shared_ptr<const Value> first, second;  // Pair (Const or Var only)

  static Value constant_of(SemanticValue v);
  static Value var(std::string n);
  static Value lambda(std::string param, ParamAnnot annot, CorePtr body);
  static Value pair(Value a, Value b);
};

struct CoreTerm {
  enum class Kind { Val, LetApp, LetTerm, LetPair, If, LetAssume, Assert };

  Kind kind;
  SourcePos pos;
  std::string name;    // bound name (LetApp, LetTerm, LetAssume, LetPair first)
  std::string name2;   // LetPair second
  Value value;         // Val, LetApp function, LetPair scrutinee, If condition, Assert operand
  Value arg;           // LetApp argument
  CorePtr bound;       // LetTerm
  CorePtr body;        // continuation; If then-branch
  CorePtr other;       // If else-branch
  RType type;          // LetAssume (cover), Assert (over)
  std::optional<RType> ascription;  // LetTerm of an annotated definition
  std::optional<BaseType> annot;    // `let (x : b) = ...`; erased

  static CorePtr make(CoreTerm t) { return std::make_shared<const CoreTerm>(std::move(t)); }
};

/// An elaborated program: one core term (top-level definitions become
/// let-bindings around the checked expression) plus its goal.
struct CoreProgram {
  CorePtr term;
  RType goal;
  Pragma pragma;
  /// Names of top-level definitions, in order (used as higher-order probes).
  std::vector<std::string> top_level;
};

}  // namespace covtypes
