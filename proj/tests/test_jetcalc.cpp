#include <doctest.h>

#include "hamcheck/error.hpp"
#include "hamcheck/jetcalc.hpp"
#include "support.hpp"

using namespace hamcheck;
using testing_support::Fields;
using testing_support::TrigField;

namespace {

JetExpr u(MultiIndex j = {}) { return JetExpr::var("u", j); }
JetExpr ux(unsigned k) { return u(MultiIndex(k)); }

}  // namespace

TEST_CASE("multi-index order and binomials") {
  CHECK(MultiIndex(1, 0) < MultiIndex(0, 2));
  CHECK(MultiIndex(2, 0) < MultiIndex(1, 1));
  CHECK(MultiIndex(2, 1).subscript() == "xxy");
  CHECK(binomial(MultiIndex(3, 2), MultiIndex(1, 1)) == Rational(6));
  CHECK(binomial(MultiIndex(1, 0), MultiIndex(0, 1)) == Rational(0));
  CHECK(sub_indices(MultiIndex(1, 1)).size() == 4);
}

TEST_CASE("canonical form makes equality syntactic") {
  const JetExpr a = u() * ux(1) + ux(3);
  const JetExpr b = ux(3) + ux(1) * u();
  CHECK(a == b);
  CHECK(a.to_string() == "u_xxx + u*u_x");
  CHECK((a - b).is_zero());
  CHECK((a - b).to_string() == "0");
  CHECK((JetExpr(Rational(-1, 2)) * pow(ux(1), 2)).to_string() == "-1/2*u_x^2");
}

TEST_CASE("total derivative") {
  CHECK(total_derivative(u() * u(), 0) == JetExpr(2L) * u() * ux(1));
  CHECK(total_derivative(ux(1) * ux(2), MultiIndex(1)) == pow(ux(2), 2) + ux(1) * ux(3));
  CHECK(total_derivative(JetExpr(5L), 0).is_zero());
  CHECK_THROWS_AS(total_derivative(u(), 1), AxisOutOfRange);

  const JetExpr w = JetExpr::var("w", {}, 2);
  CHECK(total_derivative(w, MultiIndex(1, 1)) == JetExpr::var("w", MultiIndex(1, 1), 2));
}

TEST_CASE("Euler operator of the KdV Hamiltonian") {
  const JetExpr h = JetExpr(Rational(-1, 2)) * pow(ux(1), 2) + JetExpr(Rational(1, 6)) * pow(u(), 3);
  CHECK(euler_operator(h, "u") == ux(2) + JetExpr(Rational(1, 2)) * pow(u(), 2));
  CHECK(euler_operator(JetExpr(Rational(1, 2)) * pow(u(), 2), "u") == u());
  CHECK(euler_operator(u() * ux(1), "u").is_zero());
}

TEST_CASE("Euler operator annihilates total derivatives") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const JetExpr f = testing_support::random_density(rng, {"u", "v"}, 1, 3);
    CHECK(euler_operator(total_derivative(f, 0), "u").is_zero());
    CHECK(euler_operator(total_derivative(f, 0), "v").is_zero());
  }
}

TEST_CASE("Euler operator matches a numeric first variation") {
  // d/de int f(u + e w) dx = int E(f) w dx, computed by central differences on trig fields.
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    const JetExpr f = testing_support::random_density(rng, {"u"}, 1, 2, 3, 3);
    const TrigField uf = TrigField::random(rng, 3, 1), wf = TrigField::random(rng, 3, 1);
    const double eps = 1e-5;
    auto integral_at = [&](double e) {
      Fields fl{{"u", uf}};
      fl["u"] += wf.scaled(e);
      return testing_support::quadrature([&](double x, double y) { return testing_support::eval_at(f, fl, x, y); },
                                         64, 1)
          .integral;
    };
    const double lhs = (integral_at(eps) - integral_at(-eps)) / (2 * eps);
    const JetExpr e = euler_operator(f, "u");
    const Fields fl{{"u", uf}, {"w", wf}};
    const auto rhs = testing_support::quadrature(
        [&](double x, double y) { return testing_support::eval_at(e, fl, x, y) * wf.value({}, x, y); }, 64, 1);
    CHECK(std::abs(lhs - rhs.integral) <= 1e-6 * (1.0 + rhs.abs_integral));
  }
}

TEST_CASE("Frechet integrand") {
  const JetExpr w = JetExpr::var("w");
  CHECK(frechet_apply(u() * ux(1), "u", w) == w * ux(1) + u() * JetExpr::var("w", MultiIndex(1)));
  CHECK(frechet_apply(JetExpr::var("v"), "u", w).is_zero());
}

TEST_CASE("higher Euler operators") {
  const JetExpr f = u() * ux(2);
  // E^0 is the Euler operator; E^2 = df/du_xx; E^1 = -2 D(df/du_xx)
  CHECK(higher_euler_operator(f, "u", MultiIndex(0)) == euler_operator(f, "u"));
  CHECK(higher_euler_operator(f, "u", MultiIndex(2)) == u());
  CHECK(higher_euler_operator(f, "u", MultiIndex(1)) == JetExpr(-2L) * ux(1));
  CHECK(higher_euler_operator(f, "u", MultiIndex(3)).is_zero());
}

TEST_CASE("boundary flux closes the integration-by-parts identity") {
  std::mt19937_64 rng(13);
  const JetExpr w = JetExpr::var("w");
  for (int i = 0; i < 50; ++i) {
    const JetExpr f = testing_support::random_density(rng, {"u"}, 1, 3);
    const JetExpr lhs = frechet_apply(f, "u", w) - euler_operator(f, "u") * w;
    CHECK(lhs == total_derivative(boundary_flux_1d(f, "u"), 0));
  }
  CHECK_THROWS_AS(boundary_flux_1d(JetExpr::var("w"), "u"), Error);
}

TEST_CASE("equality modulo divergence") {
  CHECK(equal_mod_div(u() * ux(2), JetExpr(-1L) * pow(ux(1), 2)));
  CHECK_FALSE(equal_mod_div(u() * ux(2), pow(ux(1), 2)));
  CHECK(is_divergence(ux(1)));
  CHECK_FALSE(is_divergence(u()));
  CHECK_FALSE(is_divergence(JetExpr(1L)));
}

TEST_CASE("substitution") {
  const JetExpr m = JetExpr::var("m");
  const JetExpr repl = u() - ux(2);
  CHECK(substitute(JetExpr::var("m", MultiIndex(1)), "m", repl) == ux(1) - ux(3));
  const JetExpr lp = JetExpr(2L) * m * ux(1) + JetExpr::var("m", MultiIndex(1)) * u();
  CHECK(substitute(lp, "m", repl) ==
        JetExpr(3L) * u() * ux(1) - JetExpr(2L) * ux(1) * ux(2) - u() * ux(3));
  CHECK_THROWS_AS(substitute(m, "m", m + u()), SubstitutionError);
}

TEST_CASE("fresh names avoid collisions") {
  CHECK(fresh_name("xi", {"u"}) == "xi");
  const std::string n = fresh_name("xi", {"xi", "xi1"});
  CHECK(n != "xi");
  CHECK(n != "xi1");
}
