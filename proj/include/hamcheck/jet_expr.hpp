#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hamcheck/multi_index.hpp"

namespace hamcheck {

/// A jet coordinate u^{(J)}: a dependent-variable name together with a differentiation index.
/// Auxiliary names (xi, eta, theta, w, ...) are ordinary dependent variables.
struct JetVar {
  std::string name;
  MultiIndex index;

  JetVar() = default;
  JetVar(std::string n, MultiIndex j = {}) : name(std::move(n)), index(j) {}

  bool operator==(const JetVar&) const = default;
  std::strong_ordering operator<=>(const JetVar& o) const {
    if (auto c = name.compare(o.name); c != 0) return c < 0 ? std::strong_ordering::less
                                                             : std::strong_ordering::greater;
    return index <=> o.index;
  }

  /// "u", "u_x", "omega_xy".
  std::string to_string() const;
};

/// Product of jet variables with positive integer powers, kept sorted by variable.
class Monomial {
 public:
  using Factor = std::pair<JetVar, unsigned>;

  Monomial() = default;
  explicit Monomial(JetVar v, unsigned power = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const;
  bool is_constant() const { return factors_.empty(); }
  unsigned power_of(const JetVar& v) const;

  Monomial operator*(const Monomial& o) const;
  /// Lowers the power of v by one; requires power_of(v) > 0.
  Monomial without_one(const JetVar& v) const;

  bool operator==(const Monomial&) const = default;
  /// Graded lexicographic: by degree, then factor by factor (higher power first on ties).
  std::strong_ordering operator<=>(const Monomial& o) const;

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
};

/// Exact differential polynomial: a finite map from monomials to nonzero rationals.
///
/// Values are immutable once built; every operation returns a new canonical expression,
/// so equality is syntactic. The axis count (1 for S^1, 2 for T^2) propagates as the
/// maximum over operands.
class JetExpr {
 public:
  using TermMap = std::map<Monomial, Rational>;

  JetExpr() = default;
  JetExpr(long c);  // NOLINT(google-explicit-constructor): constants mix freely
  JetExpr(const Rational& c);  // NOLINT(google-explicit-constructor)
  JetExpr(const JetVar& v, int axes = 1);
  JetExpr(const Monomial& m, const Rational& c, int axes = 1);

  static JetExpr var(const std::string& name, MultiIndex j = {}, int axes = 1) {
    return JetExpr(JetVar(name, j), axes);
  }

  int axes() const { return axes_; }
  JetExpr with_axes(int axes) const;

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  /// Dependent-variable names occurring anywhere in the expression.
  std::set<std::string> variables() const;
  /// Jet coordinates of one dependent variable occurring in the expression.
  std::set<JetVar> jet_vars(const std::string& name) const;
  std::set<JetVar> jet_vars() const;
  bool depends_on(const std::string& name) const;
  /// Highest derivative order of `name` (-1 when absent).
  int max_order(const std::string& name) const;

  JetExpr operator-() const;
  JetExpr& operator+=(const JetExpr& o);
  JetExpr& operator-=(const JetExpr& o);
  JetExpr& operator*=(const JetExpr& o);
  JetExpr& operator*=(const Rational& c);

  friend JetExpr operator+(JetExpr a, const JetExpr& b) { return a += b; }
  friend JetExpr operator-(JetExpr a, const JetExpr& b) { return a -= b; }
  friend JetExpr operator*(const JetExpr& a, const JetExpr& b);

  bool operator==(const JetExpr& o) const { return terms_ == o.terms_; }

  /// Canonical text in the DSL's expression grammar, e.g. "u_xxx + u*u_x"; "0" when empty.
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
  int axes_ = 1;
};

JetExpr pow(const JetExpr& base, unsigned n);

/// Partial derivative with respect to a single jet coordinate.
JetExpr partial(const JetExpr& e, const JetVar& v);

/// Evaluates at a point given values for every jet coordinate.
double evaluate(const JetExpr& e, const std::function<double(const JetVar&)>& value_of);

/// Space of local functionals: S^1 (one axis) or T^2 (two axes).
enum class Domain { Circle, Torus };

inline int axes_of(Domain d) { return d == Domain::Circle ? 1 : 2; }
inline const char* domain_name(Domain d) { return d == Domain::Circle ? "S1" : "T2"; }

/// F = int f dx over the periodic domain.
struct LocalFunctional {
  JetExpr density;
  Domain domain = Domain::Circle;
};

}  // namespace hamcheck
