#include "avasskit/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "avasskit/errors.hpp"

namespace avasskit {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Sym, Newline, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
      } else if (c == '\n') {
        out.push_back({Tok::Newline, "\n", here()});
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        SourceSpan at = here();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        out.push_back({Tok::Int, std::string(text_.substr(start, pos_ - start)), at});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        SourceSpan at = here();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          advance();
        }
        while (pos_ < text_.size() && (text_[pos_] == '\'' || text_[pos_] == '?')) {
          advance();
        }
        out.push_back(
            {Tok::Ident, std::string(text_.substr(start, pos_ - start)), at});
      } else {
        out.push_back(symbol());
      }
    }
    out.push_back({Tok::End, "", here()});
    return out;
  }

 private:
  SourceSpan here() const { return {line_, column_, pos_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }

  Token symbol() {
    static const char* const kSymbols[] = {
        "->", "..", "<=", ">=", "!=", "==", "&&", "||", "≤", "≥", "≠",
        "∧",  "∨",  "¬",  "≡",  "<",  ">",  "=",  "!",  "+", "-", "*",
        ":",  ";",  ",",  "[",  "]",  "(",  ")",  "{",  "}"};
    SourceSpan at = here();
    for (const char* s : kSymbols) {
      std::string_view sym(s);
      if (text_.substr(pos_, sym.size()) == sym) {
        for (std::size_t i = 0; i < sym.size(); ++i) {
          advance();
        }
        return {Tok::Sym, std::string(sym), at};
      }
    }
    throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'",
                     at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Token cursor with formula and term parsing

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) {
      ++pos_;
    }
    return t;
  }
  bool atSym(std::string_view s) const {
    return peek().kind == Tok::Sym && peek().text == s;
  }
  bool atWord(std::string_view s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }
  bool atLineEnd() const {
    return peek().kind == Tok::Newline || peek().kind == Tok::End;
  }
  void skipNewlines() {
    while (peek().kind == Tok::Newline) {
      next();
    }
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().span);
  }
  [[noreturn]] static void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.span);
  }
  Token expectSym(std::string_view s) {
    if (!atSym(s)) {
      fail("expected '" + std::string(s) + "'" + found());
    }
    return next();
  }
  Token expectWord(std::string_view s) {
    if (!atWord(s)) {
      fail("expected '" + std::string(s) + "'" + found());
    }
    return next();
  }
  Token expectIdent(const std::string& what) {
    if (peek().kind != Tok::Ident) {
      fail("expected " + what + found());
    }
    return next();
  }
  void expectLineEnd() {
    if (!atLineEnd()) {
      fail("unexpected " + describe(peek()));
    }
  }
  std::string found() const { return ", found " + describe(peek()); }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Newline: return "end of line";
      default: return "'" + t.text + "'";
    }
  }

  Integer integer(const std::string& what) {
    bool negative = false;
    while (atSym("-") || atSym("+")) {
      negative = negative != (next().text == "-");
    }
    if (peek().kind != Tok::Int) {
      fail("expected " + what + found());
    }
    Integer v(next().text);
    return negative ? Integer(-v) : v;
  }

  Integer natural(const std::string& what) {
    if (peek().kind != Tok::Int) {
      fail("expected " + what + found());
    }
    return Integer(next().text);
  }

  // Linear term: coefficients over `vars` plus a constant.
  struct Linear {
    std::vector<Integer> coeffs;
    Integer constant = 0;
  };

  Linear term(const std::vector<std::string>& vars) {
    Linear out{std::vector<Integer>(vars.size(), 0), 0};
    bool first = true;
    for (;;) {
      Integer sign = 1;
      if (!first) {
        if (atSym("+")) {
          next();
        } else if (atSym("-")) {
          next();
          sign = -1;
        } else {
          break;
        }
      }
      while (atSym("-") || atSym("+")) {
        if (next().text == "-") {
          sign = -sign;
        }
      }
      Integer coeff = 1;
      bool haveNumber = false;
      if (peek().kind == Tok::Int) {
        coeff = Integer(next().text);
        haveNumber = true;
        if (atSym("*")) {
          next();
          if (peek().kind != Tok::Ident) {
            fail("expected a variable after '*'" + found());
          }
        }
      }
      if (peek().kind == Tok::Ident && !isKeyword(peek().text)) {
        Token v = next();
        auto it = std::find(vars.begin(), vars.end(), v.text);
        if (it == vars.end()) {
          fail("unbound variable '" + v.text + "'", v);
        }
        out.coeffs[static_cast<std::size_t>(it - vars.begin())] += sign * coeff;
      } else if (haveNumber) {
        out.constant += sign * coeff;
      } else {
        fail("expected a term" + found());
      }
      first = false;
    }
    return out;
  }

  static bool isKeyword(const std::string& word) {
    return word == "and" || word == "or" || word == "not" || word == "mod" ||
           word == "true" || word == "false" || word == "guard";
  }

  Formula formula(const std::vector<std::string>& vars) {
    std::vector<Formula> parts{conjunction(vars)};
    while (atWord("or") || atSym("||") || atSym("∨")) {
      next();
      parts.push_back(conjunction(vars));
    }
    return Formula::disj(std::move(parts));
  }

  Formula conjunction(const std::vector<std::string>& vars) {
    std::vector<Formula> parts{unary(vars)};
    while (atWord("and") || atSym("&&") || atSym("∧")) {
      next();
      parts.push_back(unary(vars));
    }
    return Formula::conj(std::move(parts));
  }

  Formula unary(const std::vector<std::string>& vars) {
    if (atWord("not") || atSym("!") || atSym("¬")) {
      next();
      return Formula::negation(unary(vars));
    }
    if (atWord("true") || atWord("false")) {
      return Formula::constant(next().text == "true");
    }
    if (atSym("(")) {
      next();
      Formula inner = formula(vars);
      expectSym(")");
      return inner;
    }
    return comparison(vars);
  }

  Formula comparison(const std::vector<std::string>& vars) {
    Linear left = term(vars);
    Token op = next();
    std::optional<Rel> rel;
    if (op.kind == Tok::Sym) {
      const std::string& s = op.text;
      if (s == "<=" || s == "≤") rel = Rel::Le;
      else if (s == "<") rel = Rel::Lt;
      else if (s == "=" || s == "==" || s == "≡") rel = Rel::Eq;
      else if (s == "!=" || s == "≠") rel = Rel::Ne;
      else if (s == ">=" || s == "≥") rel = Rel::Ge;
      else if (s == ">") rel = Rel::Gt;
    }
    if (!rel) {
      fail("expected a comparison operator, found " + describe(op), op);
    }
    Linear right = term(vars);
    Atom atom;
    atom.coeffs.resize(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      atom.coeffs[i] = left.coeffs[i] - right.coeffs[i];
    }
    atom.bound = right.constant - left.constant;
    atom.rel = *rel;
    if (atWord("mod")) {
      Token mod = next();
      if (*rel != Rel::Eq && *rel != Rel::Ne) {
        fail("'mod' needs '=' or '!='", mod);
      }
      Token at = peek();
      Integer m = natural("a modulus");
      if (m == 0) {
        fail("zero modulus", at);
      }
      atom.rel = *rel == Rel::Eq ? Rel::Cong : Rel::NotCong;
      atom.modulus = m;
      atom.bound = floorMod(atom.bound, m);
    }
    return Formula::of(std::move(atom));
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Machine items

std::optional<Clause> guardClause(Parser& p) {
  Token open = p.expectSym("[");
  Integer lo = p.natural("a lower bound");
  p.expectSym("..");
  std::optional<Integer> hi;
  if (!p.atSym("]")) {
    hi = p.natural("an upper bound");
  }
  p.expectSym("]");
  Integer modulus = 1;
  Integer residue = 0;
  if (p.atWord("mod")) {
    p.next();
    Token at = p.peek();
    modulus = p.natural("a modulus");
    if (modulus == 0) {
      Parser::fail("zero modulus", at);
    }
    p.expectSym("=");
    residue = p.natural("a residue");
  }
  if (hi && *hi < lo) {
    Parser::fail("malformed guard: upper bound below lower bound", open);
  }
  auto clause = Clause::make(lo, hi, modulus, residue);
  if (!clause) {
    Parser::fail("malformed guard: no value satisfies it", open);
  }
  return clause;
}

std::vector<Integer> intList(Parser& p) {
  p.expectSym("[");
  std::vector<Integer> out;
  if (!p.atSym("]")) {
    out.push_back(p.integer("an integer"));
    while (p.atSym(",")) {
      p.next();
      out.push_back(p.integer("an integer"));
    }
  }
  p.expectSym("]");
  return out;
}

Payload affineD(Parser& p, std::size_t dim, const Token& at) {
  p.expectWord("A");
  p.expectSym("=");
  p.expectSym("[");
  AffineMapD m;
  m.matrix.push_back(intList(p));
  while (p.atSym(",")) {
    p.next();
    m.matrix.push_back(intList(p));
  }
  p.expectSym("]");
  p.expectSym(";");
  p.expectWord("b");
  p.expectSym("=");
  m.offset = intList(p);
  bool ok = m.matrix.size() == dim && m.offset.size() == dim;
  for (const auto& row : m.matrix) {
    ok = ok && row.size() == dim;
  }
  if (!ok) {
    Parser::fail("dimension mismatch: expected a " + std::to_string(dim) + "x" +
                     std::to_string(dim) + " matrix and offset",
                 at);
  }
  if (dim == 1) {
    return AffineMap1{m.matrix[0][0], m.offset[0], std::nullopt};
  }
  return m;
}

Payload affine1(Parser& p, std::size_t dim, const Token& at) {
  if (dim != 1) {
    Parser::fail("dimension mismatch: x' = ax + b needs dim 1", at);
  }
  p.next();  // x'
  p.expectSym("=");
  Parser::Linear rhs = p.term({"x"});
  AffineMap1 f{rhs.coeffs[0], rhs.constant, std::nullopt};
  if (p.atSym(";")) {
    p.next();
    p.expectWord("guard");
    f.guard = guardClause(p);
  }
  return f;
}

std::size_t counterIndex(Parser& p, std::size_t dim) {
  Token at = p.peek();
  Integer k = p.natural("a counter index");
  if (k < 1 || k > dim) {
    Parser::fail("counter " + k.str() + " out of range 1.." + std::to_string(dim),
                 at);
  }
  return k.convert_to<std::size_t>() - 1;
}

Payload minsky(Parser& p, std::size_t dim) {
  if (p.atWord("zero?")) {
    p.next();
    return MinskyOp::zeroTest(dim, counterIndex(p, dim));
  }
  std::vector<Integer> delta(dim, 0);
  std::vector<Integer> atLeast(dim, 0);
  for (;;) {
    Token op = p.expectIdent("a counter operation");
    if (op.text == "nop") {
    } else if (op.text == "inc") {
      delta[counterIndex(p, dim)] += 1;
    } else if (op.text == "dec") {
      delta[counterIndex(p, dim)] -= 1;
    } else if (op.text == "nz?") {
      std::size_t k = counterIndex(p, dim);
      atLeast[k] = std::max(atLeast[k], Integer(1));
    } else if (op.text == "ge?") {
      std::size_t k = counterIndex(p, dim);
      atLeast[k] = std::max(atLeast[k], p.natural("a bound"));
    } else if (op.text == "zero?") {
      Parser::fail("'zero?' cannot be combined with other operations", op);
    } else {
      Parser::fail("unknown operation '" + op.text + "'", op);
    }
    if (!p.atSym(",")) {
      break;
    }
    p.next();
  }
  return MinskyOp::translate(std::move(delta), std::move(atLeast));
}

Payload payload(Parser& p, std::size_t dim) {
  const Token at = p.peek();
  if (p.atSym("{")) {
    p.next();
    QFFormula f{relationalVariables(dim), Formula{}};
    f.body = p.formula(f.vars);
    p.expectSym("}");
    return Relational{std::move(f)};
  }
  if (at.kind == Tok::Ident && at.text == "A" && p.peek(1).text == "=") {
    return affineD(p, dim, at);
  }
  if (at.kind == Tok::Ident && at.text == "x'") {
    return affine1(p, dim, at);
  }
  return minsky(p, dim);
}

}  // namespace

Machine parseMachine(std::string_view text) {
  Parser p(Lexer(text).run());
  Machine m;
  p.skipNewlines();
  if (!p.atWord("machine")) {
    throw ParseError("no machine header", p.peek().span);
  }
  p.next();
  m.name = p.expectIdent("a machine name").text;
  p.expectLineEnd();
  bool sawItem = false;
  std::optional<Flavor> flavor;
  for (;;) {
    p.skipNewlines();
    if (p.peek().kind == Tok::End) {
      break;
    }
    Token head = p.expectIdent("'dim', 'state' or 'trans'");
    if (head.text == "dim") {
      if (sawItem) {
        Parser::fail("'dim' must come before states and transitions", head);
      }
      Token at = p.peek();
      Integer d = p.natural("a dimension");
      if (d < 1 || d > 64) {
        Parser::fail("dimension must be between 1 and 64", at);
      }
      m.dim = d.convert_to<std::size_t>();
    } else if (head.text == "state") {
      sawItem = true;
      Token name = p.expectIdent("a state name");
      if (m.stateIndex(name.text)) {
        Parser::fail("duplicate state '" + name.text + "'", name);
      }
      m.addState(name.text);
      if (p.atWord("init")) {
        Token init = p.next();
        if (m.initialState) {
          Parser::fail("second initial state", init);
        }
        m.initialState = m.states.size() - 1;
        if (!p.atLineEnd()) {
          Token at = p.peek();
          m.initialCounters.push_back(p.natural("a counter value"));
          while (p.atSym(",")) {
            p.next();
            m.initialCounters.push_back(p.natural("a counter value"));
          }
          if (m.initialCounters.size() != m.dim) {
            Parser::fail("dimension mismatch: expected " + std::to_string(m.dim) +
                             " initial values",
                         at);
          }
        }
      }
    } else if (head.text == "trans") {
      sawItem = true;
      Token from = p.expectIdent("a source state");
      p.expectSym("->");
      Token to = p.expectIdent("a target state");
      auto source = m.stateIndex(from.text);
      if (!source) {
        Parser::fail("unknown state '" + from.text + "'", from);
      }
      auto target = m.stateIndex(to.text);
      if (!target) {
        Parser::fail("unknown state '" + to.text + "'", to);
      }
      p.expectSym(":");
      Token at = p.peek();
      Transition t{*source, *target, payload(p, m.dim)};
      const Flavor f = static_cast<Flavor>(t.payload.index());
      if (flavor && *flavor != f) {
        Parser::fail("mixed flavors: " + str(f) + " transition in a " +
                         str(*flavor) + " machine",
                     at);
      }
      flavor = f;
      m.transitions.push_back(std::move(t));
    } else {
      Parser::fail("unknown item '" + head.text + "'", head);
    }
    p.expectLineEnd();
  }
  m.flavor = flavor ? *flavor : (m.dim == 1 ? Flavor::Affine1 : Flavor::AffineD);
  m.validate();
  return m;
}

std::string serializeMachine(const Machine& m) {
  std::string out = "machine " + (m.name.empty() ? std::string("M") : m.name) +
                    "\ndim " + std::to_string(m.dim) + "\n";
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    out += "state " + m.states[i];
    if (m.initialState == i) {
      out += " init";
      for (std::size_t k = 0; k < m.initialCounters.size(); ++k) {
        out += (k ? "," : " ") + m.initialCounters[k].str();
      }
    }
    out += "\n";
  }
  for (const Transition& t : m.transitions) {
    out += "trans " + m.states[t.source] + " -> " + m.states[t.target] + " : " +
           payloadStr(t.payload, m.dim) + "\n";
  }
  return out;
}

QFFormula parseFormula(std::string_view text, std::vector<std::string> vars) {
  Parser p(Lexer(text).run());
  QFFormula f{std::move(vars), Formula{}};
  p.skipNewlines();
  f.body = p.formula(f.vars);
  p.skipNewlines();
  if (p.peek().kind != Tok::End) {
    p.fail("unexpected " + Parser::describe(p.peek()));
  }
  return f;
}

QFFormula parseFormulaFile(std::string_view text) {
  std::vector<Token> tokens = Lexer(text).run();
  Parser p(tokens);
  p.skipNewlines();
  if (!p.atWord("vars")) {
    throw ParseError("formula file must start with 'vars'", p.peek().span);
  }
  p.next();
  std::vector<std::string> vars;
  while (!p.atLineEnd()) {
    Token v = p.expectIdent("a variable name");
    if (std::find(vars.begin(), vars.end(), v.text) != vars.end()) {
      Parser::fail("duplicate variable '" + v.text + "'", v);
    }
    vars.push_back(v.text);
  }
  if (vars.empty()) {
    p.fail("'vars' needs at least one variable");
  }
  std::vector<Token> rest;
  for (;;) {
    Token t = p.next();
    if (t.kind != Tok::Newline) {
      rest.push_back(t);
    }
    if (t.kind == Tok::End) {
      break;
    }
  }
  if (rest.size() == 1) {
    throw ParseError("missing formula after 'vars'", rest.front().span);
  }
  Parser body(std::move(rest));
  QFFormula f{std::move(vars), Formula{}};
  f.body = body.formula(f.vars);
  if (body.peek().kind != Tok::End) {
    body.fail("unexpected " + Parser::describe(body.peek()));
  }
  return f;
}

Configuration parseConfiguration(const Machine& m, std::string_view text) {
  Parser p(Lexer(text).run());
  Token name = p.expectIdent("a state name");
  auto state = m.stateIndex(name.text);
  if (!state) {
    Parser::fail("unknown state '" + name.text + "'", name);
  }
  p.expectSym(":");
  Configuration c{*state, {}};
  c.counters.push_back(p.natural("a counter value"));
  while (p.atSym(",")) {
    p.next();
    c.counters.push_back(p.natural("a counter value"));
  }
  if (p.peek().kind != Tok::End) {
    p.fail("unexpected " + Parser::describe(p.peek()));
  }
  if (c.counters.size() != m.dim) {
    throw ParseError("dimension mismatch: expected " + std::to_string(m.dim) +
                         " counter values",
                     name.span);
  }
  return c;
}

}  // namespace avasskit
