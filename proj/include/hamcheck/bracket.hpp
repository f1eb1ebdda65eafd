#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hamcheck/diffop.hpp"
#include "hamcheck/jet_expr.hpp"

namespace hamcheck {

/// Candidate Poisson bracket {F,G} = int dF/du P dG/du dx on a periodic domain.
class BracketStructure {
 public:
  BracketStructure(LinDiffOp op, std::string state, Domain domain);

  const LinDiffOp& op() const { return op_; }
  const std::string& state() const { return state_; }
  Domain domain() const { return domain_; }
  bool skew() const { return skew_; }

  /// Throws SkewViolation (carrying P + P*) unless P is skew.
  void require_skew() const;

 private:
  LinDiffOp op_;
  std::string state_;
  Domain domain_;
  bool skew_;
};

struct JacobiReport {
  bool pass = false;
  /// Zero on pass; the cyclic sum itself on failure.
  JetExpr residual;
  /// The cyclic sum S, whatever the verdict.
  JetExpr cyclic_sum;
  /// D_{P theta} P, with theta named by `theta`.
  LinDiffOp frechet_of_op;
  std::string theta;
  /// Auxiliary names standing for the three gradients in S.
  std::array<std::string, 3> aux;
};

struct JacobiOptions {
  /// Evaluate the three cyclic terms on separate threads; results are identical.
  bool parallel = false;
};

struct CasimirReport {
  bool casimir = false;
  /// P(dC/du); zero iff casimir.
  JetExpr residual;
};

using Substitutions = std::vector<std::pair<std::string, JetExpr>>;

/// Variational derivative of F in the state variable.
JetExpr gradient(const BracketStructure& b, const LocalFunctional& f);

/// {F,G} density dF * P(dG). Throws SkewViolation for non-skew P.
LocalFunctional bracket_density(const BracketStructure& b, const LocalFunctional& f, const LocalFunctional& g);

/// Trivector test: with fresh auxiliaries xi, eta, zeta,
///   S = sum over cyclic (xi, eta, zeta) of xi * (D_{P zeta} P)(eta),
/// and P is Hamiltonian iff S integrates to zero for all auxiliaries.
JacobiReport jacobi_check(const BracketStructure& b, JacobiOptions options = {});

CasimirReport casimir_check(const BracketStructure& b, const LocalFunctional& c);

/// Right-hand side of state_t = P(gradH), then the substitutions in order.
JetExpr derive_evolution(const BracketStructure& b, const JetExpr& grad_h, const Substitutions& subs = {});

}  // namespace hamcheck
