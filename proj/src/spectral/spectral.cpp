#include "hamcheck/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hamcheck/error.hpp"
#include "hamcheck/kernels.hpp"

namespace hamcheck {

namespace {

using cvec = std::vector<std::complex<double>>;

std::span<double> as_real(std::span<std::complex<double>> z) {
  return {reinterpret_cast<double*>(z.data()), 2 * z.size()};
}

std::span<const double> as_real(std::span<const std::complex<double>> z) {
  return {reinterpret_cast<const double*>(z.data()), 2 * z.size()};
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

GridState::GridState(std::vector<double> values, bool dealias) : values_(std::move(values)), dealias_(dealias) {
  if (values_.size() < 16 || !is_power_of_two(values_.size()))
    throw Error("grid size must be a power of two and at least 16, got " + std::to_string(values_.size()));
  if (!simd::active_kernels().all_finite(values_)) throw NumericError("grid values must be finite");
}

GridState GridState::sample(std::size_t n, const std::function<double(double)>& f, bool dealias) {
  std::vector<double> v(n);
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(h * static_cast<double>(i));
  return GridState(std::move(v), dealias);
}

double GridState::x(std::size_t i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(values_.size());
}

// ---------------------------------------------------------------------------------------------

FourierGrid::FourierGrid(std::size_t n) : n_(n) {
  std::vector<double> real(n);
  cvec spec(n / 2 + 1);
  std::lock_guard<std::mutex> lock(planner_mutex());
  const int ni = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_r2c_1d(ni, real.data(), reinterpret_cast<fftw_complex*>(spec.data()),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_c2r_1d(ni, reinterpret_cast<fftw_complex*>(spec.data()), real.data(),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
}

FourierGrid::~FourierGrid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const FourierGrid& FourierGrid::get(std::size_t n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::unique_ptr<FourierGrid>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot.reset(new FourierGrid(n));
  return *slot;
}

void FourierGrid::forward(std::span<const double> u, std::span<std::complex<double>> uh) const {
  // FFTW never writes the input of an r2c transform.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(u.data()),
                       reinterpret_cast<fftw_complex*>(uh.data()));
}

void FourierGrid::inverse(std::span<const std::complex<double>> uh, std::span<double> u) const {
  cvec scratch(uh.begin(), uh.end());  // c2r destroys its input
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(scratch.data()),
                       u.data());
  simd::active_kernels().scale(1.0 / static_cast<double>(n_), u);
}

std::vector<std::complex<double>> FourierGrid::derivative_symbol(int order) const {
  static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cvec sym(modes());
  for (std::size_t k = 0; k < modes(); ++k) {
    double mag = 1.0;
    for (int p = 0; p < order; ++p) mag *= static_cast<double>(k);
    sym[k] = mag * i_pow[order % 4];
  }
  if (order % 2 == 1) sym[n_ / 2] = 0.0;
  return sym;
}

void FourierGrid::derivative(std::span<const double> u, int order, std::span<double> out) const {
  cvec uh(modes());
  forward(u, uh);
  const cvec sym = derivative_symbol(order);
  simd::active_kernels().complex_multiply(as_real(std::span<const std::complex<double>>(uh)), as_real(std::span<const std::complex<double>>(sym)),
                                          as_real(std::span<std::complex<double>>(uh)));
  inverse(uh, out);
}

void FourierGrid::helmholtz(std::span<const double> m, std::span<double> u) const {
  cvec mh(modes());
  forward(m, mh);
  for (std::size_t k = 0; k < modes(); ++k) mh[k] /= 1.0 + static_cast<double>(k) * static_cast<double>(k);
  inverse(mh, u);
}

void FourierGrid::truncate(std::span<std::complex<double>> uh) const {
  const std::size_t cutoff = n_ / 3;
  for (std::size_t k = cutoff + 1; k < uh.size(); ++k) uh[k] = 0.0;
}

// ---------------------------------------------------------------------------------------------

GridState spectral_derivative(const GridState& g, int order) {
  if (order < 1) throw Error("derivative order must be positive");
  std::vector<double> out(g.size());
  FourierGrid::get(g.size()).derivative(g.values(), order, out);
  return GridState(std::move(out), g.dealias());
}

GridState helmholtz_solve(const GridState& g) {
  std::vector<double> out(g.size());
  FourierGrid::get(g.size()).helmholtz(g.values(), out);
  return GridState(std::move(out), g.dealias());
}

std::string_view equation_name(Equation eq) {
  switch (eq) {
    case Equation::KdV: return "kdv";
    case Equation::Burgers: return "burgers";
    case Equation::CamassaHolm: return "ch";
  }
  return "?";
}

std::optional<Equation> parse_equation(std::string_view name) {
  if (name == "kdv") return Equation::KdV;
  if (name == "burgers") return Equation::Burgers;
  if (name == "ch") return Equation::CamassaHolm;
  return std::nullopt;
}

namespace {

/// Grid arithmetic for one equation at one resolution.
class Stepper {
 public:
  Stepper(Equation eq, std::size_t n, bool dealias)
      : eq_(eq), n_(n), dealias_(dealias), grid_(FourierGrid::get(n)), k_(simd::active_kernels()) {
    d1_ = grid_.derivative_symbol(1);
    if (eq_ == Equation::KdV) linear_ = grid_.derivative_symbol(3);
  }

  bool has_linear_part() const { return !linear_.empty(); }

  /// Full right-hand side in physical space.
  void rhs(std::span<const double> u, std::span<double> out) {
    switch (eq_) {
      case Equation::KdV: {
        std::vector<double> uxxx(n_);
        grid_.derivative(u, 3, uxxx);
        product_with_derivative(u, u, out);
        k_.axpy(1.0, uxxx, out);
        break;
      }
      case Equation::Burgers:
        product_with_derivative(u, u, out);
        k_.scale(-3.0, out);
        break;
      case Equation::CamassaHolm: {
        std::vector<double> vel(n_), t1(n_), t2(n_);
        grid_.helmholtz(u, vel);
        product_with_derivative(u, vel, t1);  // m u_x
        product_with_derivative(vel, u, t2);  // u m_x
        std::fill(out.begin(), out.end(), 0.0);
        k_.axpy(-2.0, t1, out);
        k_.axpy(-1.0, t2, out);
        break;
      }
    }
  }

  /// Advances u by one step in place.
  void step(std::vector<double>& u, double dt) {
    if (has_linear_part()) {
      integrating_factor_step(u, dt);
    } else {
      classical_step(u, dt);
    }
  }

 private:
  /// out = a * D(b), optionally 2/3-dealiased.
  void product_with_derivative(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    std::vector<double> bx(n_);
    grid_.derivative(b, 1, bx);
    k_.multiply(a, bx, out);
    if (dealias_) {
      cvec h(grid_.modes());
      grid_.forward(out, h);
      grid_.truncate(h);
      grid_.inverse(h, out);
    }
  }

  void classical_step(std::vector<double>& u, double dt) {
    std::vector<double> k1(n_), k2(n_), k3(n_), k4(n_), tmp(n_);
    rhs(u, k1);
    tmp = u;
    k_.axpy(0.5 * dt, k1, tmp);
    rhs(tmp, k2);
    tmp = u;
    k_.axpy(0.5 * dt, k2, tmp);
    rhs(tmp, k3);
    tmp = u;
    k_.axpy(dt, k3, tmp);
    rhs(tmp, k4);
    k_.axpy(dt / 6.0, k1, u);
    k_.axpy(dt / 3.0, k2, u);
    k_.axpy(dt / 3.0, k3, u);
    k_.axpy(dt / 6.0, k4, u);
  }

  /// Fourier coefficients of the nonlinear term w w_x.
  void nonlinear_hat(const cvec& wh, cvec& out) {
    std::vector<double> w(n_), wx(n_), prod(n_);
    cvec whx(wh.size());
    grid_.inverse(wh, w);
    k_.complex_multiply(as_real(std::span<const std::complex<double>>(wh)),
                        as_real(std::span<const std::complex<double>>(d1_)), as_real(std::span<std::complex<double>>(whx)));
    grid_.inverse(whx, wx);
    k_.multiply(w, wx, prod);
    grid_.forward(prod, out);
    if (dealias_) grid_.truncate(out);
  }

  void cmul(const cvec& a, const cvec& b, cvec& out) {
    k_.complex_multiply(as_real(std::span<const std::complex<double>>(a)),
                        as_real(std::span<const std::complex<double>>(b)), as_real(std::span<std::complex<double>>(out)));
  }

  void caxpy(double alpha, const cvec& x, cvec& y) {
    k_.axpy(alpha, as_real(std::span<const std::complex<double>>(x)), as_real(std::span<std::complex<double>>(y)));
  }

  void refresh_factors(double dt) {
    if (dt == factor_dt_) return;
    factor_dt_ = dt;
    half_.resize(linear_.size());
    full_.resize(linear_.size());
    for (std::size_t k = 0; k < linear_.size(); ++k) {
      half_[k] = std::exp(linear_[k] * (0.5 * dt));
      full_[k] = std::exp(linear_[k] * dt);
    }
  }

  // Lawson RK4 on v = exp(-L t) u_hat, written back in the u_hat variable.
  void integrating_factor_step(std::vector<double>& u, double dt) {
    refresh_factors(dt);
    const std::size_t m = grid_.modes();
    cvec uh(m), a(m), b(m), c(m), d(m), tmp(m), eu(m), hu(m);
    grid_.forward(u, uh);
    cmul(full_, uh, eu);
    cmul(half_, uh, hu);

    nonlinear_hat(uh, a);

    tmp = uh;
    caxpy(0.5 * dt, a, tmp);
    cmul(half_, tmp, tmp);
    nonlinear_hat(tmp, b);

    tmp = hu;
    caxpy(0.5 * dt, b, tmp);
    nonlinear_hat(tmp, c);

    cmul(half_, c, tmp);
    k_.scale(dt, as_real(std::span<std::complex<double>>(tmp)));
    caxpy(1.0, eu, tmp);
    nonlinear_hat(tmp, d);

    // u_hat <- E u_hat + dt/6 (E a + 2 E_half (b + c) + d)
    cvec ea(m), hbc(m);
    cmul(full_, a, ea);
    tmp = b;
    caxpy(1.0, c, tmp);
    cmul(half_, tmp, hbc);
    uh = eu;
    caxpy(dt / 6.0, ea, uh);
    caxpy(dt / 3.0, hbc, uh);
    caxpy(dt / 6.0, d, uh);
    grid_.inverse(uh, u);
  }

  Equation eq_;
  std::size_t n_;
  bool dealias_;
  const FourierGrid& grid_;
  const simd::KernelTable& k_;
  cvec d1_;
  cvec linear_;
  cvec half_, full_;
  double factor_dt_ = 0.0;
};

double trapezoid(std::span<const double> v) {
  return simd::active_kernels().sum(v) * 2.0 * std::numbers::pi / static_cast<double>(v.size());
}

}  // namespace

GridState pde_rhs(Equation eq, const GridState& state) {
  Stepper stepper(eq, state.size(), state.dealias());
  std::vector<double> out(state.size());
  stepper.rhs(state.values(), out);
  return GridState(std::move(out), state.dealias());
}

GridState step_rk4(Equation eq, const GridState& state, double dt) {
  Stepper stepper(eq, state.size(), state.dealias());
  std::vector<double> u(state.values().begin(), state.values().end());
  stepper.step(u, dt);
  return GridState(std::move(u), state.dealias());
}

Invariants invariants(Equation eq, const GridState& state) {
  const auto& k = simd::active_kernels();
  const FourierGrid& grid = FourierGrid::get(state.size());
  const std::size_t n = state.size();
  std::span<const double> s = state.values();
  std::vector<double> vel(s.begin(), s.end()), tmp(n), tmp2(n);
  Invariants inv;

  if (eq == Equation::CamassaHolm) {
    grid.helmholtz(s, vel);
    k.multiply(s, vel, tmp);
    inv.energy = 0.5 * trapezoid(tmp);
    if (*std::min_element(s.begin(), s.end()) > 0.0) {
      for (std::size_t i = 0; i < n; ++i) tmp[i] = std::sqrt(s[i]);
      inv.sqrt_casimir = trapezoid(tmp);
    }
  } else if (eq == Equation::KdV) {
    std::vector<double> ux(n);
    grid.derivative(s, 1, ux);
    k.multiply(ux, ux, tmp);   // u_x^2
    k.multiply(s, s, tmp2);    // u^2
    k.multiply(tmp2, s, tmp2); // u^3
    k.scale(-0.5, tmp);
    k.axpy(1.0 / 6.0, tmp2, tmp);
    inv.energy = trapezoid(tmp);
  } else {
    k.multiply(s, s, tmp);
    inv.energy = 0.5 * trapezoid(tmp);
  }
  inv.mass = trapezoid(vel);
  k.multiply(vel, vel, tmp);
  inv.l2 = trapezoid(tmp);
  return inv;
}

double MonitorSeries::relative_drift(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double ref = std::abs(v.front());
  const double abs_drift = absolute_drift(v);
  return ref > 0.0 ? abs_drift / ref : abs_drift;
}

double MonitorSeries::absolute_drift(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - v.front()));
  return worst;
}

namespace {

void record(MonitorSeries& mon, Equation eq, double t, const std::vector<double>& u, bool dealias,
            bool& casimir_valid) {
  const Invariants inv = invariants(eq, GridState(u, dealias));
  mon.t.push_back(t);
  mon.energy.push_back(inv.energy);
  mon.mass.push_back(inv.mass);
  mon.l2.push_back(inv.l2);
  if (mon.has_sqrt_casimir) {
    if (inv.sqrt_casimir) {
      mon.sqrt_casimir.push_back(*inv.sqrt_casimir);
    } else {
      casimir_valid = false;
    }
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string header_fields(const SimulationResult& r) {
  std::ostringstream os;
  os << "equation=" << equation_name(r.equation) << " N=" << r.n << " dt=" << r.dt << " T=" << r.horizon;
  return os.str();
}

}  // namespace

SimulationResult simulate(Equation eq, const GridState& initial, double dt, double horizon,
                          SimulationOptions options) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw Error("simulate: dt and T must be positive");
  if (options.monitor_stride == 0) options.monitor_stride = 1;

  SimulationResult result;
  result.equation = eq;
  result.n = initial.size();
  result.dt = dt;
  result.horizon = horizon;

  std::vector<double> u(initial.values().begin(), initial.values().end());
  bool casimir_valid = true;
  result.monitors.has_sqrt_casimir =
      eq == Equation::CamassaHolm && *std::min_element(u.begin(), u.end()) > 0.0;
  record(result.monitors, eq, 0.0, u, initial.dealias(), casimir_valid);
  if (options.snapshot_stride > 0) result.snapshots.push_back({0.0, u});

  Stepper stepper(eq, u.size(), initial.dealias());
  const auto& k = simd::active_kernels();
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  for (std::size_t n = 1; n <= steps; ++n) {
    std::vector<double> previous = u;
    stepper.step(u, dt);
    if (!k.all_finite(u)) {
      result.blew_up = true;
      u = std::move(previous);
      break;
    }
    const double t = static_cast<double>(n) * dt;
    result.last_valid_time = t;
    if (n % options.monitor_stride == 0 || n == steps) {
      record(result.monitors, eq, t, u, initial.dealias(), casimir_valid);
      if (!casimir_valid) {
        // m lost positivity: the sqrt Casimir is undefined from here on.
        result.monitors.has_sqrt_casimir = false;
        result.monitors.sqrt_casimir.clear();
      }
    }
    if (options.snapshot_stride > 0 && n % options.snapshot_stride == 0) result.snapshots.push_back({t, u});
  }
  result.final_state = std::move(u);
  return result;
}

std::string SimulationResult::monitors_csv() const {
  std::ostringstream os;
  os << "# " << header_fields(*this) << '\n';
  os << "t,H,I1,I2";
  if (monitors.has_sqrt_casimir) os << ",sqrtCasimir";
  os << '\n';
  for (std::size_t i = 0; i < monitors.t.size(); ++i) {
    os << format_double(monitors.t[i]) << ',' << format_double(monitors.energy[i]) << ','
       << format_double(monitors.mass[i]) << ',' << format_double(monitors.l2[i]);
    if (monitors.has_sqrt_casimir) os << ',' << format_double(monitors.sqrt_casimir[i]);
    os << '\n';
  }
  return os.str();
}

std::string SimulationResult::snapshots_json() const {
  std::ostringstream os;
  os << "{\"header\": {\"equation\": \"" << equation_name(equation) << "\", \"N\": " << n
     << ", \"dt\": " << format_double(dt) << ", \"T\": " << format_double(horizon) << "},\n \"snapshots\": [";
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    os << (s ? ",\n  " : "\n  ") << "{\"t\": " << format_double(snapshots[s].t) << ", \"values\": [";
    for (std::size_t i = 0; i < snapshots[s].values.size(); ++i)
      os << (i ? ", " : "") << format_double(snapshots[s].values[i]);
    os << "]}";
  }
  os << "\n ]}\n";
  return os.str();
}

// ---------------------------------------------------------------------------------------------

namespace {

class ProfileParser {
 public:
  explicit ProfileParser(std::string_view s) : s_(s) {}

  struct Mode {
    double amplitude;
    bool sine;  // false: cosine, or a constant when wavenumber == 0
    int wavenumber;
  };

  std::vector<Mode> parse() {
    std::vector<Mode> modes;
    skip();
    double sign = 1.0;
    if (peek() == '-') {
      sign = -1.0;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    modes.push_back(term(sign));
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      const char op = s_[pos_];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      modes.push_back(term(op == '-' ? -1.0 : 1.0));
    }
    return modes;
  }

 private:
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("initial profile: " + what, 1, pos_ + 1);
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool keyword(std::string_view kw) {
    skip();
    if (s_.substr(pos_, kw.size()) == kw) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }
  double number() {
    skip();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  Mode trig(double amplitude) {
    bool sine = false;
    if (keyword("sin")) {
      sine = true;
    } else if (!keyword("cos")) {
      fail("expected cos(...) or sin(...)");
    }
    expect('(');
    int k = 1;
    if (peek() != 'x') {
      const double kd = number();
      if (kd != std::floor(kd) || kd < 0) fail("wavenumber must be a nonnegative integer");
      k = static_cast<int>(kd);
      expect('*');
    }
    expect('x');
    expect(')');
    return {amplitude, sine, k};
  }
  Mode term(double sign) {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double a = number();
      if (peek() == '*') {
        ++pos_;
        return trig(sign * a);
      }
      return {sign * a, false, 0};
    }
    return trig(sign);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GridState parse_profile(std::string_view text, std::size_t n, bool dealias) {
  const auto modes = ProfileParser(text).parse();
  return GridState::sample(
      n,
      [&](double x) {
        double v = 0.0;
        for (const auto& m : modes) {
          const double arg = m.wavenumber * x;
          v += m.amplitude * (m.wavenumber == 0 && !m.sine ? 1.0 : (m.sine ? std::sin(arg) : std::cos(arg)));
        }
        return v;
      },
      dealias);
}

}  // namespace hamcheck
