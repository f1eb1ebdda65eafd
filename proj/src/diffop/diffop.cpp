#include "hamcheck/diffop.hpp"

#include <algorithm>

#include "hamcheck/error.hpp"
#include "hamcheck/jetcalc.hpp"

namespace hamcheck {

LinDiffOp LinDiffOp::identity(int axes) { return derivative(MultiIndex{}, axes); }

LinDiffOp LinDiffOp::derivative(const MultiIndex& j, int axes) {
  LinDiffOp p(std::max(axes, j.axes_used()));
  p.add_term(j, JetExpr(1L));
  return p;
}

LinDiffOp LinDiffOp::multiplication(const JetExpr& a) {
  LinDiffOp p(a.axes());
  p.add_term(MultiIndex{}, a);
  return p;
}

JetExpr LinDiffOp::coefficient(const MultiIndex& j) const {
  auto it = coeffs_.find(j);
  return it == coeffs_.end() ? JetExpr(0L).with_axes(axes_) : it->second;
}

int LinDiffOp::order() const {
  int best = -1;
  for (const auto& [j, a] : coeffs_) best = std::max(best, static_cast<int>(j.order()));
  return best;
}

bool LinDiffOp::has_constant_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.is_constant(); });
}

bool LinDiffOp::is_multiplication() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first.is_zero());
}

void LinDiffOp::add_term(const MultiIndex& j, const JetExpr& a) {
  axes_ = std::max({axes_, a.axes(), j.axes_used()});
  if (a.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(j, a);
  if (!inserted) {
    it->second += a;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
  for (auto& [k, c] : coeffs_) c = c.with_axes(axes_);
}

LinDiffOp LinDiffOp::operator-() const {
  LinDiffOp r = *this;
  for (auto& [j, a] : r.coeffs_) a = -a;
  return r;
}

LinDiffOp& LinDiffOp::operator+=(const LinDiffOp& o) {
  axes_ = std::max(axes_, o.axes_);
  for (const auto& [j, a] : o.coeffs_) add_term(j, a);
  return *this;
}

LinDiffOp& LinDiffOp::operator-=(const LinDiffOp& o) {
  axes_ = std::max(axes_, o.axes_);
  for (const auto& [j, a] : o.coeffs_) add_term(j, -a);
  return *this;
}

LinDiffOp operator*(const JetExpr& a, const LinDiffOp& p) {
  LinDiffOp r(std::max(a.axes(), p.axes()));
  for (const auto& [j, c] : p.coeffs_) r.add_term(j, a * c);
  return r;
}

namespace {

std::string derivative_word(const MultiIndex& j) {
  if (j.is_zero()) return "Id";
  std::string out;
  auto power = [&](const char* name, unsigned n) {
    if (n == 0) return;
    if (!out.empty()) out += '*';
    out += name;
    if (n > 1) out += "^" + std::to_string(n);
  };
  power("D_x", j[0]);
  power("D_y", j[1]);
  return out;
}

}  // namespace

std::string LinDiffOp::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  // Highest derivatives first, the way operators are usually written.
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [j, a] = *it;
    const std::string word = derivative_word(j);
    std::string body;
    bool negative = false;
    if (a.size() == 1) {
      const auto& [m, c] = *a.terms().begin();
      negative = c < 0;
      const JetExpr mag = negative ? -a : a;
      if (mag == JetExpr(1L)) {
        body = word;
      } else {
        body = mag.to_string() + "*" + word;
      }
    } else {
      body = "(" + a.to_string() + ")*" + word;
    }
    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
    first = false;
  }
  return out;
}

JetExpr apply(const LinDiffOp& p, const JetExpr& e) {
  if (e.axes() > p.axes())
    throw DimensionMismatch("operator on " + std::to_string(p.axes()) + " axis/axes applied to an expression on " +
                            std::to_string(e.axes()));
  const JetExpr lifted = e.with_axes(p.axes());
  JetExpr r = JetExpr(0L).with_axes(p.axes());
  for (const auto& [j, a] : p.coefficients()) r += a * total_derivative(lifted, j);
  return r;
}

LinDiffOp compose(const LinDiffOp& p, const LinDiffOp& q) {
  const int axes = std::max(p.axes(), q.axes());
  LinDiffOp r(axes);
  // a_J D_J o b_K D_K = a_J sum_{L <= J} (J choose L) D_L(b_K) D_{J-L+K}.
  for (const auto& [j, a] : p.coefficients()) {
    for (const auto& [k, b] : q.coefficients()) {
      const JetExpr lifted = b.with_axes(axes);
      for (const auto& l : sub_indices(j)) {
        const JetExpr coeff = a * total_derivative(lifted, l) * JetExpr(binomial(j, l));
        r.add_term(j - l + k, coeff);
      }
    }
  }
  return r;
}

LinDiffOp adjoint(const LinDiffOp& p) {
  LinDiffOp r(p.axes());
  // (a_J D_J)* = (-D)_J o a_J = (-1)^{|J|} sum_{L <= J} (J choose L) D_L(a_J) D_{J-L}.
  for (const auto& [j, a] : p.coefficients()) {
    const Rational sign = (j.order() % 2 == 0) ? 1 : -1;
    for (const auto& l : sub_indices(j)) {
      const JetExpr coeff = total_derivative(a.with_axes(p.axes()), l) * JetExpr(Rational(binomial(j, l) * sign));
      r.add_term(j - l, coeff);
    }
  }
  return r;
}

bool is_skew(const LinDiffOp& p) { return (adjoint(p) + p).is_zero(); }

LinDiffOp op_frechet(const LinDiffOp& p, const std::string& v, const JetExpr& dir) {
  LinDiffOp r(std::max(p.axes(), dir.axes()));
  for (const auto& [j, a] : p.coefficients()) r.add_term(j, frechet_apply(a, v, dir));
  return r;
}

}  // namespace hamcheck
