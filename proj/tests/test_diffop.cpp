#include <doctest.h>

#include "hamcheck/diffop.hpp"
#include "hamcheck/error.hpp"
#include "hamcheck/jetcalc.hpp"
#include "support.hpp"

using namespace hamcheck;

namespace {

JetExpr m(unsigned k = 0) { return JetExpr::var("m", MultiIndex(k)); }
const LinDiffOp D = LinDiffOp::derivative(MultiIndex(1));
const LinDiffOp Id = LinDiffOp::identity();

LinDiffOp lie_poisson() { return -(JetExpr(2L) * m() * D + m(1) * Id); }

}  // namespace

TEST_CASE("normal form: mD + Dm equals 2mD + m_x") {
  const LinDiffOp a = compose(LinDiffOp::multiplication(m()), D) + compose(D, LinDiffOp::multiplication(m()));
  const LinDiffOp b = JetExpr(2L) * m() * D + m(1) * Id;
  CHECK(a == b);
  CHECK(lie_poisson().to_string() == "-2*m*D_x - m_x*Id");
  CHECK(LinDiffOp().to_string() == "0");
}

TEST_CASE("apply") {
  const JetExpr u = JetExpr::var("u");
  CHECK(apply(lie_poisson(), u) == JetExpr(-2L) * m() * JetExpr::var("u", MultiIndex(1)) - m(1) * u);
  CHECK(apply(compose(D, D), u) == JetExpr::var("u", MultiIndex(2)));
  CHECK_THROWS_AS(apply(D, JetExpr::var("w", {}, 2)), DimensionMismatch);
}

TEST_CASE("composition follows the Leibniz rule") {
  // D o m = m D + m_x
  CHECK(compose(D, LinDiffOp::multiplication(m())) == m() * D + m(1) * Id);
  // D^2 o m = m D^2 + 2 m_x D + m_xx
  const LinDiffOp d2 = LinDiffOp::derivative(MultiIndex(2));
  CHECK(compose(d2, LinDiffOp::multiplication(m())) == m() * d2 + JetExpr(2L) * m(1) * D + m(2) * Id);
}

TEST_CASE("adjoint") {
  CHECK(adjoint(D) == -D);
  CHECK(adjoint(m() * D) == -(m() * D) - m(1) * Id);
  CHECK(adjoint(lie_poisson()) == -lie_poisson());
}

TEST_CASE("skewness") {
  CHECK(is_skew(D));
  CHECK(is_skew(LinDiffOp::derivative(MultiIndex(3))));
  CHECK(is_skew(lie_poisson()));
  CHECK_FALSE(is_skew(m() * D));
  CHECK_FALSE(is_skew(LinDiffOp::derivative(MultiIndex(2))));
  CHECK_FALSE(is_skew(Id));
  const auto w = JetExpr::var("omega", {}, 2);
  const LinDiffOp p2 = JetExpr::var("omega", MultiIndex(1, 0), 2) * LinDiffOp::derivative(MultiIndex(0, 1), 2) -
                       JetExpr::var("omega", MultiIndex(0, 1), 2) * LinDiffOp::derivative(MultiIndex(1, 0), 2);
  CHECK(is_skew(p2));
  CHECK_FALSE(is_skew(w * LinDiffOp::derivative(MultiIndex(1, 0), 2)));
}

TEST_CASE("adjoint is an involution and reverses products") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const LinDiffOp p = testing_support::random_operator(rng, {"m"}, 1, 2);
    const LinDiffOp q = testing_support::random_operator(rng, {"m"}, 1, 2);
    CHECK(adjoint(adjoint(p)) == p);
    CHECK(adjoint(compose(p, q)) == compose(adjoint(q), adjoint(p)));
  }
}

TEST_CASE("adjoint satisfies the duality pairing") {
  // a P(b) - b P*(a) is a divergence for every a, b.
  std::mt19937_64 rng(22);
  const JetExpr a = JetExpr::var("a"), b = JetExpr::var("b");
  for (int i = 0; i < 30; ++i) {
    const LinDiffOp p = testing_support::random_operator(rng, {"m"}, 1, 3);
    CHECK(is_divergence(a * apply(p, b) - b * apply(adjoint(p), a)));
  }
}

TEST_CASE("Frechet derivative of the Lie-Poisson operator") {
  const JetExpr th = JetExpr::var("theta");
  const JetExpr thx = JetExpr::var("theta", MultiIndex(1));
  // D_{theta} P = -(2 theta D + theta_x)
  CHECK(op_frechet(lie_poisson(), "m", th) == -(JetExpr(2L) * th * D + thx * Id));
  CHECK(op_frechet(D, "m", th).is_zero());
}
