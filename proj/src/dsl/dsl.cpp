#include "hamcheck/dsl.hpp"

#include <cctype>
#include <sstream>

#include "hamcheck/error.hpp"
#include "hamcheck/jetcalc.hpp"

namespace hamcheck {

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, Arrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;       // identifier name or digits
  std::string subscript;  // after '_' for identifiers
  bool has_subscript = false;
  std::size_t column = 0;  // 1-based
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "'" + t.text + (t.has_subscript ? "_" + t.subscript : "") + "'";
    case Tok::Number: return "'" + t.text + "'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of line";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view s, std::size_t line, std::size_t column_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t at) { return at + 1 + column_offset; };
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '#') break;
    Token t;
    t.column = col(i);
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      if (j < s.size() && s[j] == '_') {
        std::size_t k = j + 1;
        while (k < s.size() && (s[k] == 'x' || s[k] == 'y')) ++k;
        if (k == j + 1 || (k < s.size() && ident_char(static_cast<unsigned char>(s[k]))))
          throw ParseError("derivative subscript must be a nonempty run of 'x' and 'y'", line, col(j + 1));
        t.has_subscript = true;
        t.subscript = std::string(s.substr(j + 1, k - j - 1));
        j = k;
      }
      i = j;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.')
        throw ParseError("decimal numbers are not allowed; write rationals such as 1/2", line, col(j));
      t.kind = Tok::Number;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else {
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-':
          if (i + 1 < s.size() && s[i + 1] == '>') {
            t.kind = Tok::Arrow;
            ++i;
          } else {
            t.kind = Tok::Minus;
          }
          break;
        case '*':
          if (i + 1 < s.size() && s[i + 1] == '*')
            throw ParseError("unexpected '**'; powers are written with '^'", line, col(i));
          t.kind = Tok::Star;
          break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '=': t.kind = Tok::Equals; break;
        default:
          throw ParseError(std::string("unexpected character '") + s[i] + "'", line, col(i));
      }
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.column = col(s.size());
  out.push_back(end);
  return out;
}

MultiIndex index_from_subscript(const std::string& sub) {
  unsigned x = 0, y = 0;
  for (char c : sub) (c == 'x' ? x : y)++;
  return {x, y};
}

/// Recursive-descent parser over one line of tokens. Every value is an operator; a density
/// is the multiplication operator a * Id.
class Parser {
 public:
  Parser(std::vector<Token> toks, std::size_t line, const DslDocument& ctx)
      : toks_(std::move(toks)), line_(line), ctx_(ctx), axes_(axes_of(ctx.domain())) {}

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, line_, at.column);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what + ", found " + describe(peek()));
    return take();
  }

  std::string expect_keyword(std::string_view kw) {
    const Token t = peek();
    if (t.kind != Tok::Ident || t.has_subscript || t.text != kw)
      fail("expected '" + std::string(kw) + "', found " + describe(t));
    take();
    return t.text;
  }

  void expect_end() {
    if (!at(Tok::End)) {
      const Token& t = peek();
      if (t.kind == Tok::Ident || t.kind == Tok::Number || t.kind == Tok::LParen)
        fail("juxtaposition is not multiplication; insert '*' before " + describe(t), t);
      fail("unexpected " + describe(t), t);
    }
  }

  LinDiffOp expression(bool density) {
    LinDiffOp acc = term(density);
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const bool minus = take().kind == Tok::Minus;
      LinDiffOp rhs = term(density);
      if (minus) acc -= rhs;
      else acc += rhs;
    }
    return acc;
  }

  /// Whole input must be a density expression.
  JetExpr density_expression() {
    LinDiffOp op = expression(true);
    expect_end();
    return op.coefficient(MultiIndex{}).with_axes(axes_);
  }

  LinDiffOp operator_expression() {
    LinDiffOp op = expression(false);
    expect_end();
    return LinDiffOp(axes_) + op;
  }

  JetExpr integral() {
    expect_keyword("int");
    expect(Tok::LParen, "'('");
    LinDiffOp body = expression(true);
    expect(Tok::RParen, "')'");
    expect_end();
    return body.coefficient(MultiIndex{}).with_axes(axes_);
  }

  std::string name(const std::string& what) {
    const Token t = peek();
    if (t.kind != Tok::Ident) fail("expected " + what + ", found " + describe(t));
    if (t.has_subscript) fail(what + " cannot carry a derivative subscript", t);
    take();
    return t.text;
  }

 private:
  LinDiffOp term(bool density) {
    LinDiffOp acc = factor(density);
    while (at(Tok::Star)) {
      take();
      acc = compose(acc, factor(density));
    }
    return acc;
  }

  LinDiffOp factor(bool density) {
    if (at(Tok::Minus)) {
      take();
      return -factor(density);
    }
    LinDiffOp base = atom(density);
    while (at(Tok::Caret)) {
      take();
      const Token n = expect(Tok::Number, "a natural-number exponent");
      const unsigned long e = std::stoul(n.text);
      LinDiffOp result = LinDiffOp::identity(axes_);
      for (unsigned long i = 0; i < e; ++i) result = compose(result, base);
      base = result;
    }
    return base;
  }

  LinDiffOp atom(bool density) {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        mpz_class num(t.text), den(1);
        if (at(Tok::Slash)) {
          take();
          const Token d = expect(Tok::Number, "a denominator");
          den = mpz_class(d.text);
          if (den == 0) fail("division by zero", d);
        }
        Rational q(num, den);
        q.canonicalize();
        return LinDiffOp::multiplication(JetExpr(q).with_axes(axes_));
      }
      case Tok::LParen: {
        take();
        LinDiffOp inner = expression(density);
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        take();
        if (t.text == "D") {
          if (!t.has_subscript) fail("D needs a direction: D_x or D_y", t);
          if (density) fail("D_" + t.subscript + " is an operator and cannot appear in a density", t);
          return LinDiffOp::derivative(checked_index(t), axes_);
        }
        if (t.text == "Id" && !t.has_subscript) {
          if (density) fail("Id is an operator and cannot appear in a density", t);
          return LinDiffOp::identity(axes_);
        }
        if (t.text == "int") fail("int(...) is only allowed as the whole right-hand side of func", t);
        if (!ctx_.has_var(t.text)) fail("unknown identifier '" + t.text + "'", t);
        const MultiIndex j = t.has_subscript ? checked_index(t) : MultiIndex{};
        return LinDiffOp::multiplication(JetExpr::var(t.text, j, axes_));
      }
      default:
        fail("expected a number, variable, operator or '(' but found " + describe(t), t);
    }
  }

  MultiIndex checked_index(const Token& t) {
    const MultiIndex j = index_from_subscript(t.subscript);
    if (j[1] > 0 && axes_ < 2) fail("'y' derivative requires a T2 domain", t);
    return j;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const DslDocument& ctx_;
  int axes_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

Domain DslDocument::domain() const {
  for (const auto& d : decls_)
    if (d.kind == Declaration::Kind::Var) return d.domain;
  return Domain::Circle;
}

std::optional<std::string> DslDocument::state() const {
  if (const auto* d = first(Declaration::Kind::Var)) return d->name;
  return std::nullopt;
}

bool DslDocument::has_var(const std::string& name) const {
  return find(Declaration::Kind::Var, name) != nullptr;
}

const Declaration* DslDocument::find(Declaration::Kind kind, const std::string& name) const {
  for (const auto& d : decls_)
    if (d.kind == kind && d.name == name) return &d;
  return nullptr;
}

const Declaration* DslDocument::first(Declaration::Kind kind) const {
  for (const auto& d : decls_)
    if (d.kind == kind) return &d;
  return nullptr;
}

std::vector<const Declaration*> DslDocument::all(Declaration::Kind kind) const {
  std::vector<const Declaration*> out;
  for (const auto& d : decls_)
    if (d.kind == kind) out.push_back(&d);
  return out;
}

Substitutions DslDocument::substitutions() const {
  Substitutions out;
  for (const auto* d : all(Declaration::Kind::Subst)) out.emplace_back(d->name, d->expr);
  return out;
}

BracketStructure DslDocument::bracket(const std::string& op_name) const {
  const Declaration* op = op_name.empty() ? first(Declaration::Kind::Op) : find(Declaration::Kind::Op, op_name);
  if (!op) throw Error(op_name.empty() ? "document declares no operator" : "no operator named '" + op_name + "'");
  const auto st = state();
  if (!st) throw Error("document declares no state variable");
  return BracketStructure(op->op, *st, domain());
}

void DslDocument::add(Declaration d) {
  using K = Declaration::Kind;
  if (d.kind == K::Subst) {
    if (!has_var(d.name)) throw ParseError("substitution target '" + d.name + "' is not a declared var", d.line, 1);
    if (find(K::Subst, d.name))
      throw ParseError("'" + d.name + "' already has a substitution", d.line, 1);
  } else {
    for (const auto& other : decls_) {
      if (other.kind != K::Subst && other.name == d.name)
        throw ParseError("name '" + d.name + "' is already declared on line " + std::to_string(other.line), d.line, 1);
    }
    if (d.kind == K::Var && first(K::Var) && d.domain != domain())
      throw ParseError("all variables must live on the same domain", d.line, 1);
  }
  decls_.push_back(std::move(d));
}

std::string DslDocument::to_string() const {
  std::ostringstream os;
  for (const auto& d : decls_) {
    switch (d.kind) {
      case Declaration::Kind::Var: os << "var " << d.name << " on " << domain_name(d.domain); break;
      case Declaration::Kind::Op: os << "op " << d.name << " = " << d.op.to_string(); break;
      case Declaration::Kind::Func: os << "func " << d.name << " = int(" << d.expr.to_string() << ")"; break;
      case Declaration::Kind::Grad: os << "grad " << d.name << " = " << d.expr.to_string(); break;
      case Declaration::Kind::Subst: os << "subst " << d.name << " -> " << d.expr.to_string(); break;
    }
    os << '\n';
  }
  return os.str();
}

DslDocument parse_document(std::string_view text) {
  DslDocument doc;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    Parser p(tokenize(line, line_no, 0), line_no, doc);
    if (p.at(Tok::End)) {
      if (end == text.size()) break;
      continue;
    }
    Declaration d;
    d.line = line_no;
    const Token head = p.peek();
    if (head.kind != Tok::Ident || head.has_subscript)
      p.fail("expected a declaration keyword (var, op, func, grad, subst)");
    p.take();
    if (head.text == "var") {
      d.kind = Declaration::Kind::Var;
      d.name = p.name("a variable name");
      if (d.name == "D" || d.name == "Id" || d.name == "int") p.fail("'" + d.name + "' is reserved", head);
      p.expect_keyword("on");
      const Token dom = p.peek();
      const std::string dn = p.name("a domain (S1 or T2)");
      if (dn == "S1") d.domain = Domain::Circle;
      else if (dn == "T2") d.domain = Domain::Torus;
      else p.fail("unknown domain '" + dn + "'; expected S1 or T2", dom);
      p.expect_end();
    } else if (head.text == "op") {
      d.kind = Declaration::Kind::Op;
      d.name = p.name("an operator name");
      p.expect(Tok::Equals, "'='");
      d.op = p.operator_expression();
    } else if (head.text == "func") {
      d.kind = Declaration::Kind::Func;
      d.name = p.name("a functional name");
      p.expect(Tok::Equals, "'='");
      d.expr = p.integral();
    } else if (head.text == "grad") {
      d.kind = Declaration::Kind::Grad;
      d.name = p.name("a functional name");
      p.expect(Tok::Equals, "'='");
      d.expr = p.density_expression();
    } else if (head.text == "subst") {
      d.kind = Declaration::Kind::Subst;
      const Token target = p.peek();
      d.name = p.name("a variable name");
      if (!doc.has_var(d.name)) p.fail("unknown identifier '" + d.name + "'", target);
      p.expect(Tok::Arrow, "'->'");
      d.expr = p.density_expression();
      if (d.expr.depends_on(d.name)) p.fail("cyclic substitution: replacement depends on '" + d.name + "'", target);
    } else {
      p.fail("unknown declaration '" + head.text + "'; expected var, op, func, grad or subst", head);
    }
    doc.add(std::move(d));
    if (end == text.size()) break;
  }
  return doc;
}

JetExpr parse_expression(std::string_view text, const DslDocument& context) {
  Parser p(tokenize(text, 1, 0), 1, context);
  return p.density_expression();
}

LinDiffOp parse_operator(std::string_view text, const DslDocument& context) {
  Parser p(tokenize(text, 1, 0), 1, context);
  return p.operator_expression();
}

LocalFunctional parse_functional(std::string_view text, const DslDocument& context) {
  Parser p(tokenize(text, 1, 0), 1, context);
  return {p.integral(), context.domain()};
}

std::pair<std::string, JetExpr> parse_substitution(std::string_view text, const DslDocument& context) {
  Parser p(tokenize(trim(text), 1, 0), 1, context);
  const Token target = p.peek();
  std::string name = p.name("a variable name");
  if (!context.has_var(name)) p.fail("unknown identifier '" + name + "'", target);
  p.expect(Tok::Arrow, "'->'");
  JetExpr repl = p.density_expression();
  if (repl.depends_on(name)) p.fail("cyclic substitution: replacement depends on '" + name + "'", target);
  return {std::move(name), std::move(repl)};
}

}  // namespace hamcheck
