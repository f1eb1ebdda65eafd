#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamcheck/jet_expr.hpp"

namespace hamcheck {

/// Total derivative D_i: raises every jet coordinate on `axis` via the chain rule.
/// Throws AxisOutOfRange when axis >= e.axes().
JetExpr total_derivative(const JetExpr& e, int axis);

/// D_J = D_x^{j_x} D_y^{j_y}.
JetExpr total_derivative(const JetExpr& e, const MultiIndex& j);

/// Linearization integrand sum_J (df/dv_J) D_J(dir), before any integration by parts.
JetExpr frechet_apply(const JetExpr& f, const std::string& v, const JetExpr& dir);

/// Variational derivative E_v(f) = sum_J (-D)_J df/dv_J.
JetExpr euler_operator(const JetExpr& f, const std::string& v);

/// Higher Eulerian operator E^J_v(f) = sum_{K >= J} (K choose J) (-D)_{K-J} df/dv_K.
/// E^0 is the ordinary Euler operator, and sum_J D_J(E^J(f) w) reproduces frechet_apply(f, v, w).
JetExpr higher_euler_operator(const JetExpr& f, const std::string& v, const MultiIndex& j);

/// Flux P(w) on S^1 with frechet_apply(f, v, w) = E_v(f) w + D_x P(w).
/// `direction` names the auxiliary variable standing for the variation.
JetExpr boundary_flux_1d(const JetExpr& f, const std::string& v, const std::string& direction = "w");

/// True iff the integrals of e1 and e2 agree on the periodic domain: the difference has zero
/// constant term and lies in the kernel of every Euler operator.
bool equal_mod_div(const JetExpr& e1, const JetExpr& e2);

/// True iff e is a total divergence on the periodic domain.
inline bool is_divergence(const JetExpr& e) { return equal_mod_div(e, JetExpr(0L)); }

/// Replaces every v_J by D_J(replacement). Throws SubstitutionError when the replacement
/// itself depends on v.
JetExpr substitute(const JetExpr& e, const std::string& v, const JetExpr& replacement);

/// Applies substitutions left to right.
JetExpr substitute_all(const JetExpr& e, const std::vector<std::pair<std::string, JetExpr>>& subs);

/// A name not occurring in `taken`, built from `base` with a numeric suffix when needed.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace hamcheck
