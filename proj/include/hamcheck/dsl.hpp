#pragma once

// Small declaration language for brackets and functionals (.ham files):
//
//   var m on S1
//   op P = -(2*m*D_x + m_x*Id)
//   func H = int(1/2*m^2)
//   grad H = u
//   subst m -> u - u_xx
//
// Expressions:  expr   := term (('+'|'-') term)*
//               term   := factor ('*' factor)*
//               factor := '-' factor | atom ('^' nat)*
//               atom   := nat ['/' nat] | jetvar | D_x | D_y | Id | '(' expr ')'
//               jetvar := name ['_' ('x'|'y')+]
// Multiplication is always explicit. '#' starts a comment.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hamcheck/bracket.hpp"
#include "hamcheck/diffop.hpp"
#include "hamcheck/jet_expr.hpp"

namespace hamcheck {

struct Declaration {
  enum class Kind { Var, Op, Func, Grad, Subst };

  Kind kind = Kind::Var;
  std::string name;
  Domain domain = Domain::Circle;  // Var only
  LinDiffOp op;                    // Op only
  JetExpr expr;                    // Func density, Grad, Subst replacement
  std::size_t line = 0;
};

class DslDocument {
 public:
  const std::vector<Declaration>& declarations() const { return decls_; }

  /// Domain shared by every declared variable (S1 when nothing is declared).
  Domain domain() const;
  /// The first declared variable is the state of the bracket.
  std::optional<std::string> state() const;
  bool has_var(const std::string& name) const;

  const Declaration* find(Declaration::Kind kind, const std::string& name) const;
  /// First declaration of a kind, if any.
  const Declaration* first(Declaration::Kind kind) const;
  std::vector<const Declaration*> all(Declaration::Kind kind) const;

  Substitutions substitutions() const;

  /// Bracket built from the named operator (first op when name is empty) and the state.
  BracketStructure bracket(const std::string& op_name = {}) const;

  /// Canonical text; parse(to_string()) reproduces the document.
  std::string to_string() const;

  /// Appends a declaration, enforcing unique names and a single domain.
  void add(Declaration d);

 private:
  std::vector<Declaration> decls_;
};

/// Throws ParseError (with line/column) on malformed input or unknown names.
DslDocument parse_document(std::string_view text);

/// Density expression against the variables of `context`.
JetExpr parse_expression(std::string_view text, const DslDocument& context);
LinDiffOp parse_operator(std::string_view text, const DslDocument& context);
/// "int(<density>)".
LocalFunctional parse_functional(std::string_view text, const DslDocument& context);
/// "m -> u - u_xx".
std::pair<std::string, JetExpr> parse_substitution(std::string_view text, const DslDocument& context);

}  // namespace hamcheck
