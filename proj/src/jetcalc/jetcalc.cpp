#include "hamcheck/jetcalc.hpp"

#include <map>

#include "hamcheck/error.hpp"

namespace hamcheck {

JetExpr total_derivative(const JetExpr& e, int axis) {
  if (axis < 0 || axis >= e.axes())
    throw AxisOutOfRange("total derivative on axis " + std::to_string(axis) + " of an expression with " +
                         std::to_string(e.axes()) + " independent variable(s)");
  JetExpr r = JetExpr(0L).with_axes(e.axes());
  for (const auto& [m, c] : e.terms()) {
    for (const auto& [v, p] : m.factors()) {
      // d/dx (v^p * rest) contributes p * v^{p-1} * v_{+axis} * rest.
      Monomial lowered = m.without_one(v) * Monomial(JetVar(v.name, v.index.raised(axis)));
      r += JetExpr(lowered, c * p, e.axes());
    }
  }
  return r;
}

JetExpr total_derivative(const JetExpr& e, const MultiIndex& j) {
  JetExpr r = e;
  for (int axis = 0; axis < kMaxAxes; ++axis)
    for (unsigned k = 0; k < j[axis]; ++k) r = total_derivative(r, axis);
  return r;
}

JetExpr frechet_apply(const JetExpr& f, const std::string& v, const JetExpr& dir) {
  const int axes = std::max(f.axes(), dir.axes());
  JetExpr r = JetExpr(0L).with_axes(axes);
  for (const auto& jv : f.jet_vars(v))
    r += partial(f, jv) * total_derivative(dir.with_axes(axes), jv.index);
  return r;
}

namespace {

JetExpr signed_total_derivative(const JetExpr& e, const MultiIndex& j) {
  JetExpr d = total_derivative(e, j);
  return (j.order() % 2 == 0) ? d : -d;
}

}  // namespace

JetExpr euler_operator(const JetExpr& f, const std::string& v) {
  return higher_euler_operator(f, v, MultiIndex{});
}

JetExpr higher_euler_operator(const JetExpr& f, const std::string& v, const MultiIndex& j) {
  JetExpr r = JetExpr(0L).with_axes(f.axes());
  for (const auto& jv : f.jet_vars(v)) {
    const MultiIndex& k = jv.index;
    if (!k.contains(j)) continue;
    JetExpr term = signed_total_derivative(partial(f, jv), k - j);
    r += term * JetExpr(binomial(k, j));
  }
  return r;
}

JetExpr boundary_flux_1d(const JetExpr& f, const std::string& v, const std::string& direction) {
  if (f.axes() != 1) throw DimensionMismatch("boundary_flux_1d requires a density on S1");
  if (f.depends_on(direction))
    throw SubstitutionError("direction variable '" + direction + "' already occurs in the density");
  // Fréchet integrand = sum_J D^J(E^J w) = E^0 w + D( sum_{J>=1} D^{J-1}(E^J w) ).
  const JetExpr w = JetExpr::var(direction);
  JetExpr flux;
  const int top = f.max_order(v);
  for (int k = 1; k <= top; ++k) {
    const JetExpr ej = higher_euler_operator(f, v, MultiIndex(static_cast<unsigned>(k)));
    if (ej.is_zero()) continue;
    flux += total_derivative(ej * w, MultiIndex(static_cast<unsigned>(k - 1)));
  }
  return flux;
}

bool equal_mod_div(const JetExpr& e1, const JetExpr& e2) {
  const JetExpr d = e1 - e2;
  if (d.constant_term() != 0) return false;
  for (const auto& name : d.variables())
    if (!euler_operator(d, name).is_zero()) return false;
  return true;
}

JetExpr substitute(const JetExpr& e, const std::string& v, const JetExpr& replacement) {
  if (replacement.depends_on(v))
    throw SubstitutionError("cyclic substitution: replacement for '" + v + "' depends on '" + v + "'");
  const int axes = std::max(e.axes(), replacement.axes());
  std::map<MultiIndex, JetExpr> derived;
  auto derived_of = [&](const MultiIndex& j) -> const JetExpr& {
    auto it = derived.find(j);
    if (it == derived.end()) it = derived.emplace(j, total_derivative(replacement.with_axes(axes), j)).first;
    return it->second;
  };

  JetExpr r = JetExpr(0L).with_axes(axes);
  for (const auto& [m, c] : e.terms()) {
    JetExpr term = JetExpr(c).with_axes(axes);
    for (const auto& [jv, p] : m.factors()) {
      if (jv.name == v) {
        term *= pow(derived_of(jv.index), p);
      } else {
        term *= JetExpr(Monomial(jv, p), Rational(1), axes);
      }
    }
    r += term;
  }
  return r;
}

JetExpr substitute_all(const JetExpr& e, const std::vector<std::pair<std::string, JetExpr>>& subs) {
  JetExpr r = e;
  for (const auto& [v, repl] : subs) r = substitute(r, v, repl);
  return r;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

}  // namespace hamcheck
