#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hamcheck/multi_index.hpp"

namespace hamcheck {

/// Exact polynomial in m1, m2, m3.
class Poly3 {
 public:
  using Exponents = std::array<unsigned, 3>;

  struct GradedOrder {
    bool operator()(const Exponents& a, const Exponents& b) const {
      const unsigned da = a[0] + a[1] + a[2];
      const unsigned db = b[0] + b[1] + b[2];
      if (da != db) return da < db;
      return a > b;
    }
  };
  using TermMap = std::map<Exponents, Rational, GradedOrder>;

  Poly3() = default;
  Poly3(long c);  // NOLINT(google-explicit-constructor)
  Poly3(const Rational& c);  // NOLINT(google-explicit-constructor)

  /// The coordinate m_{k+1}, k in {0,1,2}.
  static Poly3 coordinate(int k);
  static Poly3 monomial(const Exponents& e, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;

  Poly3 operator-() const;
  Poly3& operator+=(const Poly3& o);
  Poly3& operator-=(const Poly3& o);
  friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
  friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
  friend Poly3 operator*(const Poly3& a, const Poly3& b);
  bool operator==(const Poly3& o) const { return terms_ == o.terms_; }

  Poly3 partial(int k) const;
  Rational evaluate(const std::array<Rational, 3>& m) const;
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  TermMap terms_;
};

/// Lie-Poisson bracket on so(3)*: {f,g}(m) = m . (grad f x grad g).
Poly3 so3_bracket(const Poly3& f, const Poly3& g);

/// All monomials of total degree <= max_degree.
std::vector<Poly3> monomial_basis(unsigned max_degree);

struct RigidBodyState {
  std::array<double, 3> m{};
  /// Principal moments of inertia, all positive.
  std::array<double, 3> inertia{1.0, 1.0, 1.0};
};

/// Euler's rigid-body equations in momentum form, mdot = m x omega with omega_k = m_k / I_k.
/// Generic so it can run in exact rational arithmetic.
template <class T>
std::array<T, 3> rigid_body_rhs(const std::array<T, 3>& m, const std::array<T, 3>& inertia) {
  const std::array<T, 3> w{m[0] / inertia[0], m[1] / inertia[1], m[2] / inertia[2]};
  return {m[1] * w[2] - m[2] * w[1], m[2] * w[0] - m[0] * w[2], m[0] * w[1] - m[1] * w[0]};
}

std::array<double, 3> rigid_body_rhs(const RigidBodyState& s);

/// H = 1/2 sum m_k^2 / I_k.
double rigid_body_energy(const RigidBodyState& s);
/// C = |m|^2.
double rigid_body_casimir(const RigidBodyState& s);

struct RigidBodyOptions {
  double tolerance = 1e-13;
  int max_iterations = 50;
};

struct RigidBodyTrajectory {
  std::vector<double> t;
  std::vector<std::array<double, 3>> m;
  std::vector<double> energy;
  std::vector<double> casimir;

  /// max_t |H(t) - H(0)| / |H(0)|.
  double energy_drift() const;
  double casimir_drift() const;
  /// CSV with columns t,m1,m2,m3,H,C.
  std::string to_csv() const;
};

/// Implicit-midpoint integration with Newton inner solves. Throws SolverError on
/// non-convergence, reporting the step and the last residual.
RigidBodyTrajectory simulate_rigid_body(const RigidBodyState& s0, double dt, double horizon,
                                        RigidBodyOptions options = {});

}  // namespace hamcheck
