#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include <json.hpp>

#include "hamcheck/error.hpp"
#include "hamcheck/spectral.hpp"
#include "support.hpp"

using namespace hamcheck;
using testing_support::TrigField;

namespace {

double max_diff(std::span<const double> a, const std::function<double(std::size_t)>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b(i)));
  return m;
}

GridState sample_field(const TrigField& f, std::size_t n, MultiIndex j = {}) {
  return GridState::sample(n, [&](double x) { return f.value(j, x, 0.0); });
}

}  // namespace

TEST_CASE("forward transform agrees with a naive DFT") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  std::vector<double> x(64);
  for (auto& v : x) v = g(rng);
  const auto ref = testing_support::naive_dft(x);
  const FourierGrid& grid = FourierGrid::get(64);
  std::vector<std::complex<double>> uh(grid.modes());
  grid.forward(x, uh);
  for (std::size_t k = 0; k < uh.size(); ++k) CHECK(std::abs(uh[k] - ref[k]) <= 1e-12);
  std::vector<double> back(64);
  grid.inverse(uh, back);
  CHECK(max_diff(back, [&](std::size_t i) { return x[i]; }) <= 1e-14);
}

TEST_CASE("spectral derivatives of trigonometric polynomials are exact") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 5; ++trial) {
    const TrigField f = TrigField::random(rng, 10, 1);
    const GridState u = sample_field(f, 64);
    for (int order = 1; order <= 3; ++order) {
      const GridState d = spectral_derivative(u, order);
      const double scale = std::pow(10.0, order);
      CHECK(max_diff(d.values(), [&](std::size_t i) { return f.value(MultiIndex(order), u.x(i), 0.0); }) <=
            1e-12 * scale);
    }
  }
  CHECK_THROWS_AS(spectral_derivative(GridState::sample(16, [](double x) { return std::sin(x); }), 0), Error);
}

TEST_CASE("odd derivatives discard the Nyquist mode") {
  const GridState nyq = GridState::sample(16, [](double x) { return std::cos(8.0 * x); });
  const GridState d1 = spectral_derivative(nyq, 1);
  for (double v : d1.values()) CHECK(std::abs(v) <= 1e-12);
  const auto sym = FourierGrid::get(16).derivative_symbol(3);
  CHECK(sym[8] == std::complex<double>(0.0, 0.0));
  CHECK(FourierGrid::get(16).derivative_symbol(2)[8] == std::complex<double>(-64.0, 0.0));
}

TEST_CASE("Helmholtz solve inverts 1 - d^2/dx^2") {
  const GridState m = GridState::sample(32, [](double x) { return 1.0 + std::sin(3 * x); });
  const GridState u = helmholtz_solve(m);
  CHECK(max_diff(u.values(), [&](std::size_t i) { return 1.0 + std::sin(3 * m.x(i)) / 10.0; }) <= 1e-14);
}

TEST_CASE("grid states are validated") {
  CHECK_THROWS_AS(GridState(std::vector<double>(8, 0.0)), Error);
  CHECK_THROWS_AS(GridState(std::vector<double>(48, 0.0)), Error);
  std::vector<double> bad(16, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(GridState{bad}, NumericError);
}

TEST_CASE("grid right-hand sides against analytic formulas") {
  // u = cos x: kdv u_xxx + u u_x = sin x - cos x sin x; burgers -3 u u_x = 3 cos x sin x.
  const GridState u = GridState::sample(64, [](double x) { return std::cos(x); });
  const GridState kdv = pde_rhs(Equation::KdV, u);
  CHECK(max_diff(kdv.values(), [&](std::size_t i) {
          const double x = u.x(i);
          return std::sin(x) - std::cos(x) * std::sin(x);
        }) <= 1e-11);  // third derivative: round-off grows like (N/2)^3 eps
  const GridState bur = pde_rhs(Equation::Burgers, u);
  CHECK(max_diff(bur.values(), [&](std::size_t i) { return 3 * std::cos(u.x(i)) * std::sin(u.x(i)); }) <= 1e-13);
  // m = 1 + 2 cos x gives u = 1 + cos x, rhs = -(2 m u_x + m_x u).
  const GridState m = GridState::sample(64, [](double x) { return 1.0 + 2.0 * std::cos(x); });
  const GridState ch = pde_rhs(Equation::CamassaHolm, m);
  CHECK(max_diff(ch.values(), [&](std::size_t i) {
          const double x = m.x(i);
          const double mm = 1 + 2 * std::cos(x), mx = -2 * std::sin(x), uu = 1 + std::cos(x), ux = -std::sin(x);
          return -(2 * mm * ux + mx * uu);
        }) <= 1e-13);
}

TEST_CASE("KdV with the integrating factor conserves its invariants") {
  const GridState u0 = GridState::sample(128, [](double x) { return std::cos(x); });
  const SimulationResult r = simulate(Equation::KdV, u0, 1e-3, 0.5);
  CHECK_FALSE(r.blew_up);
  CHECK(MonitorSeries::relative_drift(r.monitors.energy) <= 1e-8);
  CHECK(MonitorSeries::absolute_drift(r.monitors.mass) <= 1e-12);
  CHECK(r.monitors.t.size() == 501);
}

TEST_CASE("Camassa-Holm conserves H, mass and the square-root Casimir") {
  const GridState m0 = GridState::sample(128, [](double x) { return 1.0 + 0.3 * std::cos(x); });
  const SimulationResult r = simulate(Equation::CamassaHolm, m0, 1e-3, 0.5);
  CHECK(r.monitors.has_sqrt_casimir);
  CHECK(MonitorSeries::relative_drift(r.monitors.energy) <= 1e-8);
  CHECK(MonitorSeries::relative_drift(r.monitors.sqrt_casimir) <= 1e-8);
  CHECK(MonitorSeries::absolute_drift(r.monitors.mass) <= 1e-10);
}

TEST_CASE("blow-up is detected and the last finite state kept") {
  const GridState u0 = GridState::sample(64, [](double x) { return 50.0 * std::sin(x); });
  const SimulationResult r = simulate(Equation::Burgers, u0, 0.5, 200.0);
  CHECK(r.blew_up);
  CHECK(r.last_valid_time < 200.0);
  for (double v : r.final_state) CHECK(std::isfinite(v));
}

TEST_CASE("monitor CSV and snapshot JSON") {
  const GridState u0 = GridState::sample(16, [](double x) { return std::sin(x); });
  SimulationOptions o;
  o.snapshot_stride = 5;
  const SimulationResult r = simulate(Equation::Burgers, u0, 0.01, 0.1, o);
  const std::string csv = r.monitors_csv();
  CHECK(csv.rfind("# equation=burgers N=16 dt=0.01 T=0.1\nt,H,I1,I2\n", 0) == 0);
  CHECK(r.snapshots.size() == 3);
  const auto j = nlohmann::json::parse(r.snapshots_json());
  CHECK(j["header"]["N"] == 16);
  CHECK(j["snapshots"].size() == 3);
  CHECK(j["snapshots"][0]["values"].size() == 16);
}

TEST_CASE("initial profiles") {
  const GridState g = parse_profile("1 + 0.3*cos(x) - 2*sin(3*x)", 32);
  CHECK(max_diff(g.values(), [&](std::size_t i) {
          const double x = g.x(i);
          return 1 + 0.3 * std::cos(x) - 2 * std::sin(3 * x);
        }) <= 1e-15);
  CHECK(parse_profile("cos(x)", 16)[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_profile("cos(x", 16), ParseError);
  CHECK_THROWS_AS(parse_profile("tan(x)", 16), ParseError);
}

TEST_CASE("Fourier grids are shared safely between threads") {
  std::vector<std::thread> ts;
  std::vector<double> results(8);
  for (int t = 0; t < 8; ++t)
    ts.emplace_back([t, &results] {
      const GridState u = GridState::sample(256, [](double x) { return std::sin(2 * x); });
      results[t] = spectral_derivative(u, 1)[0];
    });
  for (auto& t : ts) t.join();
  for (double r : results) CHECK(r == doctest::Approx(2.0));
}
