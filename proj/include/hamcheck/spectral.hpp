#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hamcheck {

/// Uniform samples of a 2*pi-periodic function at x_i = 2*pi*i/N.
///
/// N is a power of two, at least 16, and every value is finite.
class GridState {
 public:
  explicit GridState(std::vector<double> values, bool dealias = false);

  static GridState sample(std::size_t n, const std::function<double(double)>& f, bool dealias = false);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  bool dealias() const { return dealias_; }
  double x(std::size_t i) const;

 private:
  std::vector<double> values_;
  bool dealias_ = false;
};

/// Real-to-complex Fourier machinery for one grid size. Plans are created once per N and
/// shared; all member functions are safe to call concurrently.
class FourierGrid {
 public:
  static const FourierGrid& get(std::size_t n);

  std::size_t size() const { return n_; }
  /// Number of stored modes, N/2 + 1.
  std::size_t modes() const { return n_ / 2 + 1; }

  /// Unnormalized forward transform.
  void forward(std::span<const double> u, std::span<std::complex<double>> uh) const;
  /// Inverse transform including the 1/N factor.
  void inverse(std::span<const std::complex<double>> uh, std::span<double> u) const;

  /// Fourier symbol of d^order/dx^order, Nyquist mode zeroed for odd orders.
  std::vector<std::complex<double>> derivative_symbol(int order) const;

  void derivative(std::span<const double> u, int order, std::span<double> out) const;
  /// Solves u - u_xx = m.
  void helmholtz(std::span<const double> m, std::span<double> u) const;
  /// 2/3-rule: zeroes modes with |k| > N/3.
  void truncate(std::span<std::complex<double>> uh) const;

  ~FourierGrid();
  FourierGrid(const FourierGrid&) = delete;
  FourierGrid& operator=(const FourierGrid&) = delete;

 private:
  explicit FourierGrid(std::size_t n);

  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

/// d^order g / dx^order by Fourier collocation. Throws for order < 1.
GridState spectral_derivative(const GridState& g, int order);

/// (1 - d^2/dx^2)^{-1} g, the Fourier multiplier 1 / (1 + k^2).
GridState helmholtz_solve(const GridState& g);

enum class Equation { KdV, Burgers, CamassaHolm };

std::string_view equation_name(Equation eq);
std::optional<Equation> parse_equation(std::string_view name);

/// Grid right-hand side: kdv u_xxx + u u_x; burgers -3 u u_x; ch -(2 m u_x + m_x u) with
/// u = helmholtz_solve(m) and state m.
GridState pde_rhs(Equation eq, const GridState& state);

/// One RK4 step. KdV's stiff dispersive term is integrated exactly by an integrating
/// factor (the classical RK4 tableau acts on exp(-L t) u_hat); Burgers and CH have no
/// linear part and take plain classical RK4 steps.
GridState step_rk4(Equation eq, const GridState& state, double dt);

struct MonitorSeries {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> mass;      // I1 = int u dx
  std::vector<double> l2;        // I2 = int u^2 dx
  std::vector<double> sqrt_casimir;  // int sqrt(m) dx, CH with min m > 0 only
  bool has_sqrt_casimir = false;

  /// max_t |v(t) - v(0)| / |v(0)| for the named series.
  static double relative_drift(const std::vector<double>& v);
  static double absolute_drift(const std::vector<double>& v);
};

struct Invariants {
  double energy = 0.0;
  double mass = 0.0;
  double l2 = 0.0;
  std::optional<double> sqrt_casimir;
};

/// Conserved quantities by trapezoid quadrature: H per equation (kdv int(-u_x^2/2 + u^3/6),
/// burgers int(u^2/2), ch int(m u / 2)), I1 and I2 in the velocity u, int sqrt(m) when min m > 0.
Invariants invariants(Equation eq, const GridState& state);

struct Snapshot {
  double t = 0.0;
  std::vector<double> values;
};

struct SimulationOptions {
  std::size_t monitor_stride = 1;
  /// 0 disables snapshots.
  std::size_t snapshot_stride = 0;
};

struct SimulationResult {
  Equation equation = Equation::KdV;
  std::size_t n = 0;
  double dt = 0.0;
  double horizon = 0.0;
  MonitorSeries monitors;
  std::vector<Snapshot> snapshots;
  std::vector<double> final_state;
  bool blew_up = false;
  /// Time of the last finite state.
  double last_valid_time = 0.0;

  /// Header line "# equation=kdv N=256 dt=0.0001 T=1", then t,H,I1,I2[,sqrtCasimir].
  std::string monitors_csv() const;
  /// {"header": {...}, "snapshots": [{"t": .., "values": [..]}, ..]}
  std::string snapshots_json() const;
};

SimulationResult simulate(Equation eq, const GridState& initial, double dt, double horizon,
                          SimulationOptions options = {});

/// Initial profile such as "1 + 0.3*cos(x)" or "cos(x) - 0.5*sin(2*x)": constants plus
/// sine/cosine modes with integer wavenumbers.
GridState parse_profile(std::string_view text, std::size_t n, bool dealias = false);

}  // namespace hamcheck
