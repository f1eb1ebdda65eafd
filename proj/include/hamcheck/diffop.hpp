#pragma once

#include <map>
#include <string>

#include "hamcheck/jet_expr.hpp"

namespace hamcheck {

/// Linear differential operator sum_J a_J D_J with differential-polynomial coefficients.
///
/// Stored in normal form: coefficients to the left of pure derivative powers, no zero
/// coefficients. mD + Dm and 2mD + m_x therefore compare equal.
class LinDiffOp {
 public:
  using CoeffMap = std::map<MultiIndex, JetExpr>;

  LinDiffOp() = default;
  explicit LinDiffOp(int axes) : axes_(axes) {}

  static LinDiffOp identity(int axes = 1);
  /// Pure D_J.
  static LinDiffOp derivative(const MultiIndex& j, int axes = 1);
  /// Multiplication by a function: a * Id.
  static LinDiffOp multiplication(const JetExpr& a);

  int axes() const { return axes_; }
  const CoeffMap& coefficients() const { return coeffs_; }
  JetExpr coefficient(const MultiIndex& j) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Highest |J| with a nonzero coefficient (-1 for the zero operator).
  int order() const;
  /// True when every coefficient is constant.
  bool has_constant_coefficients() const;
  /// True for a * Id.
  bool is_multiplication() const;

  /// Adds a * D_J.
  void add_term(const MultiIndex& j, const JetExpr& a);

  LinDiffOp operator-() const;
  LinDiffOp& operator+=(const LinDiffOp& o);
  LinDiffOp& operator-=(const LinDiffOp& o);
  friend LinDiffOp operator+(LinDiffOp a, const LinDiffOp& b) { return a += b; }
  friend LinDiffOp operator-(LinDiffOp a, const LinDiffOp& b) { return a -= b; }
  /// Left multiplication of every coefficient.
  friend LinDiffOp operator*(const JetExpr& a, const LinDiffOp& p);

  bool operator==(const LinDiffOp& o) const { return coeffs_ == o.coeffs_; }

  /// e.g. "-2*m*D_x - m_x*Id"; parenthesized multi-term coefficients; "0" for the zero operator.
  std::string to_string() const;

 private:
  CoeffMap coeffs_;
  int axes_ = 1;
};

/// sum_J a_J D_J(e). Throws DimensionMismatch when e lives on more axes than P.
JetExpr apply(const LinDiffOp& p, const JetExpr& e);

/// P o Q, expanded with the Leibniz rule.
LinDiffOp compose(const LinDiffOp& p, const LinDiffOp& q);

/// Formal L^2 adjoint sum_J (-D)_J o a_J, re-expanded to normal form.
LinDiffOp adjoint(const LinDiffOp& p);

/// P + P* is the zero operator.
bool is_skew(const LinDiffOp& p);

/// Coefficient-wise Fréchet derivative D_dir P with respect to the dependent variable v.
LinDiffOp op_frechet(const LinDiffOp& p, const std::string& v, const JetExpr& dir);

}  // namespace hamcheck
