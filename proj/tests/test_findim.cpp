#include <doctest.h>

#include <random>

#include "hamcheck/error.hpp"
#include "hamcheck/findim.hpp"

using namespace hamcheck;

namespace {

const Poly3 m1 = Poly3::coordinate(0), m2 = Poly3::coordinate(1), m3 = Poly3::coordinate(2);

}  // namespace

TEST_CASE("so(3)* coordinate brackets") {
  CHECK(so3_bracket(m1, m2) == m3);
  CHECK(so3_bracket(m2, m3) == m1);
  CHECK(so3_bracket(m3, m1) == m2);
  CHECK(so3_bracket(m2, m1) == -m3);
  CHECK(so3_bracket(m1, m1).is_zero());
}

TEST_CASE("|m|^2 is a Casimir of so(3)*") {
  const Poly3 c = m1 * m1 + m2 * m2 + m3 * m3;
  for (const auto& g : monomial_basis(3)) CHECK(so3_bracket(c, g).is_zero());
  CHECK(monomial_basis(3).size() == 20);
}

TEST_CASE("so(3)* Jacobi identity on low-degree monomials") {
  const auto basis = monomial_basis(2);
  for (const auto& f : basis)
    for (const auto& g : basis)
      for (const auto& h : basis) {
        const Poly3 s = so3_bracket(so3_bracket(f, g), h) + so3_bracket(so3_bracket(g, h), f) +
                        so3_bracket(so3_bracket(h, f), g);
        CHECK(s.is_zero());
      }
}

TEST_CASE("polynomial printing and evaluation") {
  const Poly3 p = m1 * m2 * m2 - Poly3(Rational(1, 2)) * m3;
  CHECK(p.to_string() == "-1/2*m3 + m1*m2^2");
  CHECK(p.evaluate({Rational(1), Rational(2), Rational(4)}) == Rational(2));
  CHECK(p.partial(1) == Poly3(2) * m1 * m2);
}

TEST_CASE("rigid body right-hand side matches Euler's equations exactly") {
  // I_k wdot_k with wdot_1 = (I2 - I3)/I1 w2 w3 and cyclic.
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Rational, 3> m, inertia;
    for (int k = 0; k < 3; ++k) {
      m[k] = Rational(num(rng), den(rng));
      inertia[k] = Rational(std::abs(num(rng)) + 1, den(rng));
      m[k].canonicalize();
      inertia[k].canonicalize();
    }
    const auto mdot = rigid_body_rhs(m, inertia);
    std::array<Rational, 3> w;
    for (int k = 0; k < 3; ++k) w[k] = m[k] / inertia[k];
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3, b = (k + 2) % 3;
      const Rational wdot = (inertia[a] - inertia[b]) / inertia[k] * w[a] * w[b];
      CHECK(mdot[k] == inertia[k] * wdot);
    }
  }
}

TEST_CASE("implicit midpoint conserves both invariants") {
  const RigidBodyTrajectory tr = simulate_rigid_body({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}, 1e-3, 2.0);
  CHECK(tr.t.size() == 2001);
  CHECK(tr.casimir_drift() <= 1e-12);
  CHECK(tr.energy_drift() <= 1e-12);
  CHECK(tr.to_csv().rfind("t,m1,m2,m3,H,C\n", 0) == 0);
}

TEST_CASE("solver reports non-convergence") {
  RigidBodyOptions opts;
  opts.max_iterations = 1;
  opts.tolerance = 1e-300;
  CHECK_THROWS_AS(simulate_rigid_body({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}, 0.1, 1.0, opts), SolverError);
}
