#pragma once
// Test-only generators and numeric oracles. Nothing here calls into the symbolic engine
// beyond building inputs and evaluating a finished expression at a point.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hamcheck/diffop.hpp"
#include "hamcheck/jet_expr.hpp"
#include "hamcheck/multi_index.hpp"

namespace testing_support {

using hamcheck::JetExpr;
using hamcheck::JetVar;
using hamcheck::LinDiffOp;
using hamcheck::MultiIndex;
using hamcheck::Rational;
using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------- random symbolic inputs

inline Rational random_rational(std::mt19937_64& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 4);
  int n = 0;
  while (n == 0) n = num(rng);
  Rational q(n, den(rng));
  q.canonicalize();
  return q;
}

inline MultiIndex random_index(std::mt19937_64& rng, int axes, unsigned max_order) {
  std::uniform_int_distribution<unsigned> ord(0, max_order);
  const unsigned total = ord(rng);
  if (axes == 1) return {total, 0};
  std::uniform_int_distribution<unsigned> split(0, total);
  const unsigned x = split(rng);
  return {x, total - x};
}

/// Random differential polynomial in `vars` with no constant term.
inline JetExpr random_density(std::mt19937_64& rng, const std::vector<std::string>& vars, int axes,
                              unsigned max_order, unsigned max_degree = 3, int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<unsigned> deg(1, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  JetExpr out(0L);
  out = out.with_axes(axes);
  const int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    JetExpr mono = JetExpr(random_rational(rng)).with_axes(axes);
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) mono *= JetExpr::var(vars[pick(rng)], random_index(rng, axes, max_order), axes);
    out += mono;
  }
  if (out.is_zero()) out = JetExpr::var(vars.front(), {}, axes);
  return out;
}

/// Random operator sum_J a_J D_J with |J| <= max_order and coefficients in `vars`
/// (constants allowed).
inline LinDiffOp random_operator(std::mt19937_64& rng, const std::vector<std::string>& vars, int axes,
                                 unsigned max_order, unsigned coeff_order = 1) {
  LinDiffOp p(axes);
  std::uniform_int_distribution<int> nterms(1, 3);
  std::bernoulli_distribution constant(0.3);
  const int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    const MultiIndex j = random_index(rng, axes, max_order);
    const JetExpr a = constant(rng) ? JetExpr(random_rational(rng)).with_axes(axes)
                                    : random_density(rng, vars, axes, coeff_order, 2, 2);
    p.add_term(j, a);
  }
  return p;
}

// ---------------------------------------------------------------- trig-polynomial fields

/// Real field f(x, y) = sum_k c_k exp(i (kx x + ky y)) with Hermitian coefficients.
/// Derivatives are exact: D_J multiplies c_k by (i kx)^jx (i ky)^jy.
struct TrigField {
  std::map<std::pair<int, int>, cplx> coeffs;

  static TrigField random(std::mt19937_64& rng, int max_mode, int axes, double offset = 0.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    TrigField f;
    const int ky_max = axes == 2 ? max_mode : 0;
    for (int kx = 0; kx <= max_mode; ++kx) {
      for (int ky = -ky_max; ky <= ky_max; ++ky) {
        if (kx == 0 && ky < 0) continue;
        const double decay = 1.0 / (1.0 + kx * kx + ky * ky);
        if (kx == 0 && ky == 0) {
          f.coeffs[{0, 0}] = cplx(offset + 0.5 * g(rng), 0.0);
          continue;
        }
        const cplx c(decay * g(rng), decay * g(rng));
        f.coeffs[{kx, ky}] = c;
        f.coeffs[{-kx, -ky}] = std::conj(c);
      }
    }
    return f;
  }

  double value(const MultiIndex& j, double x, double y) const {
    cplx s = 0.0;
    for (const auto& [k, c] : coeffs) {
      const cplx fac = std::pow(cplx(0.0, k.first), static_cast<int>(j[0])) *
                       std::pow(cplx(0.0, k.second), static_cast<int>(j[1]));
      s += c * fac * std::exp(cplx(0.0, k.first * x + k.second * y));
    }
    return s.real();
  }

  int bandwidth() const {
    int b = 0;
    for (const auto& [k, c] : coeffs) b = std::max({b, std::abs(k.first), std::abs(k.second)});
    return b;
  }

  TrigField& operator+=(const TrigField& o) {
    for (const auto& [k, c] : o.coeffs) coeffs[k] += c;
    return *this;
  }
  TrigField scaled(double s) const {
    TrigField r = *this;
    for (auto& [k, c] : r.coeffs) c *= s;
    return r;
  }
};

using Fields = std::map<std::string, TrigField>;

inline double eval_at(const JetExpr& e, const Fields& fields, double x, double y) {
  return hamcheck::evaluate(e, [&](const JetVar& v) { return fields.at(v.name).value(v.index, x, y); });
}

/// Naive O(N^2) DFT (1D): X_k = sum_n x_n exp(-2 pi i k n / N).
inline std::vector<cplx> naive_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += x[j] * std::polar(1.0, -kTwoPi * double(k * j % n) / double(n));
    out[k] = s;
  }
  return out;
}

/// Recovers a band-limited field from samples on an M x M (or M) grid by naive DFT.
inline TrigField interpolate(const std::function<double(double, double)>& f, int m, int axes) {
  TrigField out;
  const int my = axes == 2 ? m : 1;
  std::vector<double> samples(static_cast<std::size_t>(m * my));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < my; ++b) samples[a * my + b] = f(kTwoPi * a / m, kTwoPi * b / m);
  const int kmax = m / 2 - 1;
  const int kymax = axes == 2 ? kmax : 0;
  for (int kx = -kmax; kx <= kmax; ++kx) {
    for (int ky = -kymax; ky <= kymax; ++ky) {
      cplx s = 0.0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < my; ++b)
          s += samples[a * my + b] * std::polar(1.0, -kTwoPi * (double(kx) * a + double(ky) * b) / m);
      s /= double(m * my);
      if (std::abs(s) > 1e-14) out.coeffs[{kx, ky}] = s;
    }
  }
  return out;
}

struct Quadrature {
  double integral = 0.0;
  double abs_integral = 0.0;
};

/// Trapezoid rule on an M (or M x M) periodic grid, exact for band-limited integrands.
inline Quadrature quadrature(const std::function<double(double, double)>& f, int m, int axes) {
  Quadrature q;
  const int my = axes == 2 ? m : 1;
  const double w = std::pow(kTwoPi / m, axes);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < my; ++b) {
      const double v = f(kTwoPi * a / m, kTwoPi * b / m);
      q.integral += w * v;
      q.abs_integral += w * std::abs(v);
    }
  }
  return q;
}

/// P evaluated with the state field `state`, applied to the field `arg`, at a point.
inline double apply_numeric(const LinDiffOp& p, const std::string& state_name, const TrigField& state,
                            const TrigField& arg, double x, double y) {
  Fields f{{state_name, state}};
  double s = 0.0;
  for (const auto& [j, a] : p.coefficients()) s += eval_at(a, f, x, y) * arg.value(j, x, y);
  return s;
}

/// Independent Jacobi oracle. The Frechet derivative of P in the direction P(zeta) is
/// taken by a central difference in the state, and the three cyclic terms
/// xi * (D_{P zeta} P)(eta) are summed and integrated.
inline Quadrature numeric_cyclic_sum(const LinDiffOp& p, const std::string& state_name, int axes,
                                     std::mt19937_64& rng, int max_mode = 3, int grid = 48) {
  const TrigField m = TrigField::random(rng, max_mode, axes, 1.0);
  const TrigField a = TrigField::random(rng, max_mode, axes);
  const TrigField b = TrigField::random(rng, max_mode, axes);
  const TrigField c = TrigField::random(rng, max_mode, axes);
  const int interp = 4 * (2 * max_mode + p.order() + 2);
  auto direction = [&](const TrigField& z) {
    return interpolate([&](double x, double y) { return apply_numeric(p, state_name, m, z, x, y); },
                       std::min(interp, 64), axes);
  };
  const TrigField pa = direction(a), pb = direction(b), pc = direction(c);
  const double eps = 1e-4;
  auto term = [&](const TrigField& xi, const TrigField& eta, const TrigField& pzeta, double x, double y) {
    TrigField plus = m, minus = m;
    plus += pzeta.scaled(eps);
    minus += pzeta.scaled(-eps);
    const double d = (apply_numeric(p, state_name, plus, eta, x, y) - apply_numeric(p, state_name, minus, eta, x, y)) /
                     (2.0 * eps);
    return xi.value({}, x, y) * d;
  };
  return quadrature(
      [&](double x, double y) { return term(a, b, pc, x, y) + term(b, c, pa, x, y) + term(c, a, pb, x, y); }, grid,
      axes);
}

}  // namespace testing_support
