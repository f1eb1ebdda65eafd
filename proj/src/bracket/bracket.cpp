#include "hamcheck/bracket.hpp"

#include <future>
#include <set>

#include "hamcheck/error.hpp"
#include "hamcheck/jetcalc.hpp"

namespace hamcheck {

BracketStructure::BracketStructure(LinDiffOp op, std::string state, Domain domain)
    : op_(std::move(op)), state_(std::move(state)), domain_(domain), skew_(is_skew(op_)) {
  if (op_.axes() > axes_of(domain_))
    throw DimensionMismatch("operator uses D_y but the domain is " + std::string(domain_name(domain_)));
  op_ = LinDiffOp(axes_of(domain_)) + op_;
}

void BracketStructure::require_skew() const {
  if (skew_) return;
  throw SkewViolation("operator is not skew-symmetric", (adjoint(op_) + op_).to_string());
}

JetExpr gradient(const BracketStructure& b, const LocalFunctional& f) {
  return euler_operator(f.density.with_axes(axes_of(b.domain())), b.state());
}

LocalFunctional bracket_density(const BracketStructure& b, const LocalFunctional& f, const LocalFunctional& g) {
  b.require_skew();
  return {gradient(b, f) * apply(b.op(), gradient(b, g)), b.domain()};
}

JacobiReport jacobi_check(const BracketStructure& b, JacobiOptions options) {
  b.require_skew();
  const int axes = axes_of(b.domain());
  const LinDiffOp& p = b.op();

  std::set<std::string> reserved{b.state()};
  for (const auto& [j, a] : p.coefficients())
    for (const auto& name : a.variables()) reserved.insert(name);

  JacobiReport report;
  const char* bases[] = {"xi", "eta", "zeta"};
  for (std::size_t i = 0; i < 3; ++i) {
    report.aux[i] = fresh_name(bases[i], reserved);
    reserved.insert(report.aux[i]);
  }
  report.theta = fresh_name("theta", reserved);

  const JetExpr theta = JetExpr::var(report.theta, {}, axes);
  report.frechet_of_op = op_frechet(p, b.state(), apply(p, theta));

  const JetExpr xi = JetExpr::var(report.aux[0], {}, axes);
  const JetExpr eta = JetExpr::var(report.aux[1], {}, axes);
  const JetExpr zeta = JetExpr::var(report.aux[2], {}, axes);

  // a * (D_{P c} P)(b)
  auto term = [&](const JetExpr& a, const JetExpr& bb, const JetExpr& c) {
    return a * apply(op_frechet(p, b.state(), apply(p, c)), bb);
  };

  JetExpr s;
  if (options.parallel) {
    auto t1 = std::async(std::launch::async, term, std::cref(xi), std::cref(eta), std::cref(zeta));
    auto t2 = std::async(std::launch::async, term, std::cref(eta), std::cref(zeta), std::cref(xi));
    auto t3 = std::async(std::launch::async, term, std::cref(zeta), std::cref(xi), std::cref(eta));
    s = t1.get();
    s += t2.get();
    s += t3.get();
  } else {
    s = term(xi, eta, zeta);
    s += term(eta, zeta, xi);
    s += term(zeta, xi, eta);
  }
  s = s.with_axes(axes);

  report.cyclic_sum = s;
  report.pass = is_divergence(s);
  report.residual = report.pass ? JetExpr(0L).with_axes(axes) : s;
  return report;
}

CasimirReport casimir_check(const BracketStructure& b, const LocalFunctional& c) {
  b.require_skew();
  CasimirReport report;
  report.residual = apply(b.op(), gradient(b, c));
  report.casimir = report.residual.is_zero();
  return report;
}

JetExpr derive_evolution(const BracketStructure& b, const JetExpr& grad_h, const Substitutions& subs) {
  b.require_skew();
  return substitute_all(apply(b.op(), grad_h.with_axes(axes_of(b.domain()))), subs);
}

}  // namespace hamcheck
