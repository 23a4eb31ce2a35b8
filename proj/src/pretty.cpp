#include "covtypes/pretty.hpp"

#include <algorithm>

#include "covtypes/builtins.hpp"

namespace covtypes {

namespace {

std::string name_of(const std::string& n) {
  if (!n.empty() && !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return "(" + n + ")";
  return n;
}

std::string constant(const SemanticValue& v) {
  if (v.is_int()) return v.as_int() < 0 ? "(" + v.to_string() + ")" : v.to_string();
  if (v.is_pair()) return "(" + constant(v.first()) + ", " + constant(v.second()) + ")";
  return v.to_string();
}

std::string param(const std::string& name, const ParamAnnot& a) {
  if (a.base) return "(" + name + " : " + a.base->to_string() + ")";
  if (a.rtype) return "(" + name + " : " + a.rtype->to_string() + ")";
  return name;
}

std::string binder(const std::string& name, const std::optional<BaseType>& annot) {
  return annot ? "(" + name + " : " + annot->to_string() + ")" : name;
}

bool simple(const CorePtr& t) { return t->kind == CoreTerm::Kind::Val; }

std::string parens_unless_simple(const CorePtr& t) {
  std::string s = pretty_print(t);
  return simple(t) ? s : "(" + s + ")";
}

}  // namespace

std::string pretty_print(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Const: return constant(v.constant);
    case Value::Kind::Var: return name_of(v.name);
    case Value::Kind::Pair: return "(" + pretty_print(*v.first) + ", " + pretty_print(*v.second) + ")";
    case Value::Kind::Lambda: return "(fun " + param(v.name, v.param) + " -> " + pretty_print(v.body) + ")";
  }
  return "?";
}

std::string pretty_print(const CorePtr& t) {
  switch (t->kind) {
    case CoreTerm::Kind::Val:
      return pretty_print(t->value);
    case CoreTerm::Kind::LetApp:
      return "let " + binder(t->name, t->annot) + " = " + pretty_print(t->value) + " " + pretty_print(t->arg) +
             " in " + pretty_print(t->body);
    case CoreTerm::Kind::LetTerm:
      return "let " + binder(t->name, t->annot) + " = " + parens_unless_simple(t->bound) + " in " +
             pretty_print(t->body);
    case CoreTerm::Kind::LetPair:
      return "let (" + t->name + ", " + t->name2 + ") = " + pretty_print(t->value) + " in " + pretty_print(t->body);
    case CoreTerm::Kind::If:
      return "if " + pretty_print(t->value) + " then " + parens_unless_simple(t->body) + " else " +
             parens_unless_simple(t->other);
    case CoreTerm::Kind::LetAssume:
      return "let " + binder(t->name, t->annot) + " = assume " + t->type.to_string() + " in " + pretty_print(t->body);
    case CoreTerm::Kind::Assert:
      return "assert " + t->type.to_string() + " " + pretty_print(t->value);
  }
  return "?";
}

std::string pretty_print(const CoreProgram& p) {
  std::string out;
  if (p.pragma.window || p.pragma.expect_accept) {
    out += "(* covcheck:";
    if (p.pragma.window) out += " window=" + std::to_string(*p.pragma.window);
    if (p.pragma.expect_accept) out += std::string(" expect=") + (*p.pragma.expect_accept ? "accept" : "reject");
    out += " *)\n";
  }
  CorePtr t = p.term;
  const auto top = [&](const std::string& n) {
    return std::find(p.top_level.begin(), p.top_level.end(), n) != p.top_level.end();
  };
  for (;;) {
    if (t->kind == CoreTerm::Kind::LetTerm && top(t->name)) {
      if (t->ascription)
        out += "let " + t->name + " : " + t->ascription->to_string() + " =\n  " + pretty_print(t->bound) + "\n";
      else
        out += "let " + t->name + " =\n  " + pretty_print(t->bound) + "\n";
      t = t->body;
    } else if (t->kind == CoreTerm::Kind::LetApp && top(t->name)) {
      out += "let " + t->name + " = " + pretty_print(t->value) + " " + pretty_print(t->arg) + "\n";
      t = t->body;
    } else if (t->kind == CoreTerm::Kind::LetAssume && top(t->name)) {
      out += "let " + t->name + " = assume " + t->type.to_string() + "\n";
      t = t->body;
    } else {
      break;
    }
  }
  out += "check " + pretty_print(t) + "\n  : " + p.goal.to_string() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Surface

namespace {

bool atomic(const SExprPtr& e) {
  switch (e->kind) {
    case SExpr::Kind::Int:
    case SExpr::Kind::Bool:
    case SExpr::Kind::Unit:
    case SExpr::Kind::Var:
    case SExpr::Kind::Pair:
      return true;
    default:
      return false;
  }
}

std::string surface(const SExprPtr& e);

std::string wrap(const SExprPtr& e) {
  std::string s = surface(e);
  return atomic(e) ? s : "(" + s + ")";
}

std::string pattern(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Unit: return "()";
    case Pattern::Kind::Pair: return "(" + p.first + ", " + p.second + ")";
    case Pattern::Kind::Name: return binder(p.first, p.annot);
  }
  return "?";
}

std::string surface(const SExprPtr& e) {
  switch (e->kind) {
    case SExpr::Kind::Int: return constant(SemanticValue::integer(e->int_value));
    case SExpr::Kind::Bool: return e->bool_value ? "true" : "false";
    case SExpr::Kind::Unit: return "()";
    case SExpr::Kind::Var: return name_of(e->name);
    case SExpr::Kind::Pair: return "(" + surface(e->kids[0]) + ", " + surface(e->kids[1]) + ")";
    case SExpr::Kind::App: {
      const SExprPtr& f = e->kids[0];
      std::string fs = f->kind == SExpr::Kind::App ? surface(f) : wrap(f);
      return fs + " " + wrap(e->kids[1]);
    }
    case SExpr::Kind::Let:
    case SExpr::Kind::LetStar:
      return std::string(e->kind == SExpr::Kind::Let ? "let " : "let* ") + pattern(e->pat) + " = " +
             surface(e->kids[0]) + " in " + surface(e->kids[1]);
    case SExpr::Kind::If:
      return "if " + surface(e->kids[0]) + " then " + wrap(e->kids[1]) + " else " + wrap(e->kids[2]);
    case SExpr::Kind::Assume: return "assume " + e->type.to_string();
    case SExpr::Kind::Assert: return "assert " + e->type.to_string() + " " + wrap(e->kids[0]);
    case SExpr::Kind::Lambda: return "fun " + param(e->name, e->param) + " -> " + surface(e->kids[0]);
  }
  return "?";
}

}  // namespace

std::string print_surface(const SExprPtr& e) { return surface(e); }

std::string print_surface(const SurfaceProgram& p) {
  std::string out;
  for (const auto& d : p.defs) {
    out += "let " + d.name;
    if (d.ascription) out += " : " + d.ascription->to_string();
    for (const auto& [n, a] : d.params) out += " " + param(n, a);
    out += " =\n  " + surface(d.body) + "\n";
  }
  out += "check " + surface(p.main) + "\n  : " + p.goal.to_string() + "\n";
  return out;
}

}  // namespace covtypes
