#include "covtypes/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <regex>
#include <set>

namespace covtypes {

namespace {

constexpr std::array<std::string_view, 13> kKeywords = {
    "let", "in", "if", "then", "else", "assume", "assert", "fun", "check", "true", "false", "unit", "bool"};

// `int` is kept separate so the array stays readable.
bool keyword(std::string_view w) {
  return w == "int" || std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

enum class Tok { Ident, Int, Sym, Kw, LetStar, Eof };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Eof: return "end of input";
    case Tok::Int: return "integer " + t.text;
    case Tok::Ident: return "identifier `" + t.text + "`";
    default: return "`" + t.text + "`";
  }
}

const std::array<std::string_view, 25> kSymbols = {
    "==>", "<=>", "->", "==", "!=", "<=", ">=", "&&", "||", "(", ")", "[", "]",
    "{",   "}",   "|",  ",",  ":",  "=",  "<",  ">",  "!",  "+", "-", "*"};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  const auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (c == '(' && i + 1 < src.size() && src[i + 1] == '*') {
      int depth = 0;
      do {
        if (i + 1 < src.size() && src[i] == '(' && src[i + 1] == '*') {
          ++depth;
          advance(2);
        } else if (i + 1 < src.size() && src[i] == '*' && src[i + 1] == ')') {
          --depth;
          advance(2);
        } else if (i < src.size()) {
          advance(1);
        } else {
          throw ParseError("unterminated comment", pos, {"*)"});
        }
        if (i >= src.size() && depth > 0) throw ParseError("unterminated comment", pos, {"*)"});
      } while (depth > 0);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Token t{Tok::Int, std::string(src.substr(i, j - i)), 0, pos};
      auto [p, ec] = std::from_chars(src.data() + i, src.data() + j, t.value);
      if (ec != std::errc()) throw ParseError("integer literal out of range: " + t.text, pos);
      (void)p;
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      std::string word(src.substr(i, j - i));
      if (word == "let" && j < src.size() && src[j] == '*' && !(j + 1 < src.size() && src[j + 1] == ')')) {
        out.push_back({Tok::LetStar, "let*", 0, pos});
        advance(j + 1 - i);
        continue;
      }
      out.push_back({keyword(word) ? Tok::Kw : Tok::Ident, word, 0, pos});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        out.push_back({Tok::Sym, std::string(sym), 0, pos});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character `") + c + "`", pos);
  }
  out.push_back({Tok::Eof, "", 0, {line, col}});
  return out;
}

// Builtin operators usable infix in expressions and as sections `(+)`.
const std::set<std::string> kSectionOps = {"+", "-", "==", "<=", "<", ">", ">=", "&&", "||"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SurfaceProgram program() {
    SurfaceProgram prog;
    std::set<std::string> seen;
    for (;;) {
      if (is_kw("check")) {
        next();
        prog.main = expr();
        expect_sym(":");
        prog.goal_pos = peek().pos;
        prog.goal = rtype();
        break;
      }
      if (is_kw("let") && peek(1).kind == Tok::Ident) {
        std::size_t save = pos_;
        SurfaceDef def = definition();
        if (!is_kw("in")) {
          if (!seen.insert(def.name).second)
            throw ScopeError("duplicate top-level name `" + def.name + "`", def.pos);
          prog.defs.push_back(std::move(def));
          continue;
        }
        pos_ = save;  // a let-expression: the rest is the checked expression
      }
      prog.main = expr();
      expect_sym(":");
      prog.goal_pos = peek().pos;
      prog.goal = rtype();
      break;
    }
    expect_eof();
    return prog;
  }

  SExprPtr whole_expr() {
    auto e = expr();
    expect_eof();
    return e;
  }
  RType whole_rtype() {
    auto t = rtype();
    expect_eof();
    return t;
  }
  Qualifier whole_phi() {
    auto q = phi();
    expect_eof();
    return q;
  }
  BaseType whole_base() {
    auto b = base();
    expect_eof();
    return b;
  }

 private:
  // ---- token helpers
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_kw(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Kw && peek(k).text == s;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "unexpected " + describe(peek());
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    }
    throw ParseError(msg, peek().pos, std::move(expected));
  }
  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail({"`" + std::string(s) + "`"});
    next();
  }
  void expect_kw(std::string_view s) {
    if (!is_kw(s)) fail({"`" + std::string(s) + "`"});
    next();
  }
  void expect_eof() {
    if (peek().kind != Tok::Eof) fail({"end of input"});
  }
  std::string ident(const char* what = "identifier") {
    if (peek().kind != Tok::Ident) fail({what});
    const Token& t = next();
    if (t.text == "v") throw ParseError("`v` is reserved for the value variable", t.pos);
    return t.text;
  }

  // ---- definitions
  SurfaceDef definition() {
    SurfaceDef def;
    def.pos = peek().pos;
    expect_kw("let");
    def.name = ident("definition name");
    if (is_sym(":")) {
      next();
      def.ascription = rtype();
    } else {
      while (!is_sym("=")) def.params.push_back(param());
    }
    expect_sym("=");
    def.body = expr();
    return def;
  }

  std::pair<std::string, ParamAnnot> param() {
    if (peek().kind == Tok::Ident) return {ident(), {}};
    if (is_sym("(") && is_sym(")", 1)) {
      next();
      next();
      ParamAnnot a;
      a.base = BaseType::unit();
      return {"_", a};
    }
    if (!is_sym("(")) fail({"parameter", "`=`"});
    next();
    std::string name = ident("parameter name");
    expect_sym(":");
    ParamAnnot a = param_annot();
    expect_sym(")");
    return {name, a};
  }

  ParamAnnot param_annot() {
    ParamAnnot a;
    if (is_sym("[") || is_sym("{") || (is_sym("(") && peek(1).kind == Tok::Ident) ||
        (peek().kind == Tok::Ident && is_sym(":", 1)))
      a.rtype = rtype();
    else
      a.base = base();
    return a;
  }

  // ---- expressions
  SExprPtr expr() {
    const Token& t = peek();
    if (is_kw("let") || t.kind == Tok::LetStar) {
      const bool star = t.kind == Tok::LetStar;
      SExpr e{star ? SExpr::Kind::LetStar : SExpr::Kind::Let};
      e.pos = t.pos;
      next();
      e.pat = pattern();
      expect_sym("=");
      auto bound = expr();
      expect_kw("in");
      auto body = expr();
      e.kids = {bound, body};
      return SExpr::make(std::move(e));
    }
    if (is_kw("if")) {
      SExpr e{SExpr::Kind::If};
      e.pos = t.pos;
      next();
      auto c = expr();
      expect_kw("then");
      auto th = expr();
      expect_kw("else");
      auto el = expr();
      e.kids = {c, th, el};
      return SExpr::make(std::move(e));
    }
    if (is_kw("fun")) {
      SourcePos p = t.pos;
      next();
      std::vector<std::pair<std::string, ParamAnnot>> params;
      while (!is_sym("->")) params.push_back(param());
      if (params.empty()) fail({"parameter"});
      next();
      SExprPtr body = expr();
      for (auto it = params.rbegin(); it != params.rend(); ++it) {
        SExpr e{SExpr::Kind::Lambda};
        e.pos = p;
        e.name = it->first;
        e.param = it->second;
        e.kids = {body};
        body = SExpr::make(std::move(e));
      }
      return body;
    }
    if (is_kw("assume")) {
      SExpr e{SExpr::Kind::Assume};
      e.pos = t.pos;
      next();
      if (!is_sym("[")) fail({"coverage type `[b | phi]`"});
      e.type = rtype_base();
      return SExpr::make(std::move(e));
    }
    if (is_kw("assert")) {
      SExpr e{SExpr::Kind::Assert};
      e.pos = t.pos;
      next();
      if (!is_sym("{")) fail({"over type `{b | phi}`"});
      e.type = rtype_base();
      e.kids = {atom()};
      return SExpr::make(std::move(e));
    }
    return binary(0);
  }

  Pattern pattern() {
    Pattern p;
    if (peek().kind == Tok::Ident) {
      p.first = ident();
      return p;
    }
    if (!is_sym("(")) fail({"pattern"});
    next();
    if (is_sym(")")) {
      next();
      p.kind = Pattern::Kind::Unit;
      return p;
    }
    p.first = ident("pattern variable");
    if (is_sym(":")) {
      next();
      p.annot = base();
      expect_sym(")");
      return p;
    }
    expect_sym(",");
    p.kind = Pattern::Kind::Pair;
    p.second = ident("pattern variable");
    expect_sym(")");
    return p;
  }

  static int binary_level(const Token& t) {
    if (t.kind != Tok::Sym) return -1;
    if (t.text == "||") return 1;
    if (t.text == "&&") return 2;
    if (t.text == "==" || t.text == "<=" || t.text == "<" || t.text == ">" || t.text == ">=") return 3;
    if (t.text == "+" || t.text == "-") return 4;
    return -1;
  }

  SExprPtr binary(int min_level) {
    SExprPtr lhs = application();
    for (;;) {
      const Token& op = peek();
      int level = binary_level(op);
      if (level < 0 || level < min_level) return lhs;
      next();
      // comparisons are non-associative; the rest associate to the left
      SExprPtr rhs = binary(level + 1);
      lhs = apply2(op.text, lhs, rhs, op.pos);
      if (level == 3 && binary_level(peek()) == 3) fail({"parenthesized comparison"});
    }
  }

  static SExprPtr apply2(const std::string& op, SExprPtr a, SExprPtr b, SourcePos pos) {
    SExpr f{SExpr::Kind::Var};
    f.pos = pos;
    f.name = op;
    SExpr inner{SExpr::Kind::App};
    inner.pos = pos;
    inner.kids = {SExpr::make(std::move(f)), std::move(a)};
    SExpr outer{SExpr::Kind::App};
    outer.pos = pos;
    outer.kids = {SExpr::make(std::move(inner)), std::move(b)};
    return SExpr::make(std::move(outer));
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::Int || t.kind == Tok::Ident) return true;
    if (t.kind == Tok::Kw) return t.text == "true" || t.text == "false";
    return is_sym("(");
  }

  SExprPtr application() {
    SExprPtr f = atom();
    while (starts_atom()) {
      SExpr app{SExpr::Kind::App};
      app.pos = f->pos;
      app.kids = {f, atom()};
      f = SExpr::make(std::move(app));
    }
    return f;
  }

  SExprPtr atom() {
    const Token t = peek();
    SExpr e{SExpr::Kind::Unit};
    e.pos = t.pos;
    if (t.kind == Tok::Int) {
      next();
      e.kind = SExpr::Kind::Int;
      e.int_value = t.value;
      return SExpr::make(std::move(e));
    }
    if (is_sym("-") && peek(1).kind == Tok::Int) {
      next();
      const Token& n = next();
      e.kind = SExpr::Kind::Int;
      e.int_value = -n.value;
      return SExpr::make(std::move(e));
    }
    if (is_kw("true") || is_kw("false")) {
      next();
      e.kind = SExpr::Kind::Bool;
      e.bool_value = t.text == "true";
      return SExpr::make(std::move(e));
    }
    if (t.kind == Tok::Ident) {
      e.kind = SExpr::Kind::Var;
      e.name = ident();
      return SExpr::make(std::move(e));
    }
    if (is_sym("(")) {
      next();
      if (is_sym(")")) {
        next();
        return SExpr::make(std::move(e));
      }
      if (peek().kind == Tok::Sym && kSectionOps.count(peek().text) && is_sym(")", 1)) {
        e.kind = SExpr::Kind::Var;
        e.name = next().text;
        next();
        return SExpr::make(std::move(e));
      }
      SExprPtr inner = expr();
      if (is_sym(",")) {
        next();
        SExprPtr second = expr();
        expect_sym(")");
        e.kind = SExpr::Kind::Pair;
        e.kids = {inner, second};
        return SExpr::make(std::move(e));
      }
      expect_sym(")");
      return inner;
    }
    fail({"expression"});
  }

  // ---- types
  BaseType base() {
    BaseType left;
    if (is_kw("int")) {
      next();
      left = BaseType::integer();
    } else if (is_kw("bool")) {
      next();
      left = BaseType::boolean();
    } else if (is_kw("unit")) {
      next();
      left = BaseType::unit();
    } else if (is_sym("(")) {
      next();
      left = base();
      expect_sym(")");
    } else {
      fail({"base type"});
    }
    if (is_sym("*")) {
      next();
      return BaseType::prod(left, base());
    }
    return left;
  }

  RType rtype_base() {
    const bool cover = is_sym("[");
    next();
    BaseType b = base();
    expect_sym("|");
    Qualifier q = phi();
    expect_sym(cover ? "]" : "}");
    return cover ? RType::cover(b, q) : RType::over(b, q);
  }

  RType rtype() {
    if (is_sym("[")) {
      RType dom = rtype_base();
      if (!is_sym("->")) return dom;
      next();
      return RType::under_arrow(dom, rtype());
    }
    if (is_sym("{")) {
      RType t = rtype_base();
      if (is_sym("->")) throw ParseError("an over-approximate parameter needs a name (`x:{b | phi} -> t`)", peek().pos);
      return t;
    }
    if (peek().kind == Tok::Ident && is_sym(":", 1)) {
      std::string name = next().text;
      next();
      if (!is_sym("[") && !is_sym("{")) fail({"`[`", "`{`"});
      RType dom = rtype_base();
      expect_sym("->");
      RType cod = rtype();
      // named coverage parameters are accepted; the name is not in scope
      if (dom.is_cover()) return RType::under_arrow(dom, cod);
      return RType::over_arrow(name, dom, cod);
    }
    if (is_sym("(")) {
      next();
      std::string name = ident("parameter name");
      expect_sym(":");
      SourcePos p = peek().pos;
      RType dom = rtype();
      if (!dom.is_arrow()) throw ParseError("a parenthesized parameter must have a function type", p);
      expect_sym(")");
      expect_sym("->");
      return RType::ho_arrow(name, dom, rtype());
    }
    fail({"refinement type"});
  }

  // ---- qualifiers
  Qualifier phi() { return phi_implies(); }

  Qualifier phi_implies() {
    Qualifier lhs = phi_iff();
    if (is_sym("==>")) {
      next();
      return Qualifier::make(QOp::Implies, {lhs, phi_implies()});
    }
    return lhs;
  }
  Qualifier phi_iff() {
    Qualifier lhs = phi_or();
    while (is_sym("<=>")) {
      next();
      lhs = Qualifier::make(QOp::Iff, {lhs, phi_or()});
    }
    return lhs;
  }
  Qualifier phi_or() {
    Qualifier lhs = phi_and();
    while (is_sym("||")) {
      next();
      lhs = Qualifier::make(QOp::Or, {lhs, phi_and()});
    }
    return lhs;
  }
  Qualifier phi_and() {
    Qualifier lhs = phi_not();
    while (is_sym("&&")) {
      next();
      lhs = Qualifier::make(QOp::And, {lhs, phi_not()});
    }
    return lhs;
  }
  Qualifier phi_not() {
    if (is_sym("!")) {
      next();
      return Qualifier::make(QOp::Not, {phi_not()});
    }
    return phi_cmp();
  }
  Qualifier phi_cmp() {
    Qualifier lhs = phi_arith();
    if (peek().kind != Tok::Sym) return lhs;
    const std::string op = peek().text;
    if (op != "==" && op != "=" && op != "!=" && op != "<=" && op != "<" && op != ">=" && op != ">")
      return lhs;
    next();
    Qualifier rhs = phi_arith();
    if (op == "==" || op == "=") return Qualifier::make(QOp::Eq, {lhs, rhs});
    if (op == "!=") return Qualifier::make(QOp::Not, {Qualifier::make(QOp::Eq, {lhs, rhs})});
    if (op == "<=") return Qualifier::make(QOp::Le, {lhs, rhs});
    if (op == "<") return Qualifier::make(QOp::Lt, {lhs, rhs});
    if (op == ">=") return Qualifier::make(QOp::Le, {rhs, lhs});
    return Qualifier::make(QOp::Lt, {rhs, lhs});
  }
  Qualifier phi_arith() {
    Qualifier lhs = phi_atom();
    while (is_sym("+") || is_sym("-")) {
      QOp op = next().text == "+" ? QOp::Add : QOp::Sub;
      lhs = Qualifier::make(op, {lhs, phi_atom()});
    }
    return lhs;
  }
  Qualifier phi_atom() {
    const Token t = peek();
    if (is_kw("true")) {
      next();
      return q::tt();
    }
    if (is_kw("false")) {
      next();
      return q::ff();
    }
    if (t.kind == Tok::Int) {
      next();
      return q::lit(t.value);
    }
    if (is_sym("-") && peek(1).kind == Tok::Int) {
      next();
      return q::lit(-next().value);
    }
    if (t.kind == Tok::Ident) {
      next();
      if (t.text == "v") return q::nu();
      if ((t.text == "even" || t.text == "odd" || t.text == "fst" || t.text == "snd") && is_sym("(")) {
        next();
        Qualifier a = phi();
        expect_sym(")");
        QOp op = t.text == "even" ? QOp::Even : t.text == "odd" ? QOp::Odd : t.text == "fst" ? QOp::Fst : QOp::Snd;
        return Qualifier::make(op, {a});
      }
      return q::var(t.text);
    }
    if (is_sym("(")) {
      next();
      Qualifier inner = phi();
      expect_sym(")");
      return inner;
    }
    fail({"qualifier"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_keyword(std::string_view word) { return keyword(word) || word == "v"; }

SurfaceProgram parse_program(std::string_view source) {
  auto toks = lex(source);
  if (toks.size() == 1) throw ParseError("empty program", toks[0].pos);
  Parser p(std::move(toks));
  SurfaceProgram prog = p.program();
  prog.pragma = parse_pragma(source);
  return prog;
}

SExprPtr parse_expr(std::string_view source) { return Parser(lex(source)).whole_expr(); }
RType parse_rtype(std::string_view source) { return Parser(lex(source)).whole_rtype(); }
Qualifier parse_qualifier(std::string_view source) { return Parser(lex(source)).whole_phi(); }
BaseType parse_base_type(std::string_view source) { return Parser(lex(source)).whole_base(); }

Pragma parse_pragma(std::string_view source) {
  Pragma out;
  static const std::regex header(R"(\(\*\s*covcheck:([^*]*)\*\))");
  static const std::regex kv(R"((\w+)\s*=\s*([\w-]+))");
  std::string text(source);
  for (std::sregex_iterator it(text.begin(), text.end(), header), end; it != end; ++it) {
    std::string body = (*it)[1];
    for (std::sregex_iterator k(body.begin(), body.end(), kv); k != end; ++k) {
      std::string key = (*k)[1], val = (*k)[2];
      if (key == "window") {
        std::int64_t w = 0;
        auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), w);
        (void)p;
        if (ec != std::errc() || w < 1) throw ParseError("bad window in covcheck header: " + val, {});
        out.window = w;
      } else if (key == "expect") {
        if (val != "accept" && val != "reject") throw ParseError("bad expect in covcheck header: " + val, {});
        out.expect_accept = val == "accept";
      }
    }
  }
  return out;
}

}  // namespace covtypes
