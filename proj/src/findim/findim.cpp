#include "hamcheck/findim.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "hamcheck/error.hpp"

namespace hamcheck {

Poly3::Poly3(long c) {
  if (c != 0) terms_.emplace(Exponents{0, 0, 0}, Rational(c));
}

Poly3::Poly3(const Rational& c) {
  if (c != 0) terms_.emplace(Exponents{0, 0, 0}, c);
}

Poly3 Poly3::coordinate(int k) {
  Exponents e{0, 0, 0};
  e[static_cast<std::size_t>(k)] = 1;
  return monomial(e);
}

Poly3 Poly3::monomial(const Exponents& e, const Rational& c) {
  Poly3 p;
  p.add_term(e, c);
  return p;
}

unsigned Poly3::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

void Poly3::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly3 Poly3::operator-() const {
  Poly3 r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly3& Poly3::operator+=(const Poly3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly3& Poly3::operator-=(const Poly3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly3 operator*(const Poly3& a, const Poly3& b) {
  Poly3 r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

Poly3 Poly3::partial(int k) const {
  const auto idx = static_cast<std::size_t>(k);
  Poly3 r;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents lowered = e;
    --lowered[idx];
    r.add_term(lowered, c * e[idx]);
  }
  return r;
}

Rational Poly3::evaluate(const std::array<Rational, 3>& m) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < 3; ++k)
      for (unsigned i = 0; i < e[k]; ++i) t *= m[k];
    total += t;
  }
  return total;
}

std::string Poly3::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t k = 0; k < 3; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += "m" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    if (mono.empty()) out += mag.get_str();
    else if (mag == 1) out += mono;
    else out += mag.get_str() + "*" + mono;
  }
  return out;
}

Poly3 so3_bracket(const Poly3& f, const Poly3& g) {
  const std::array<Poly3, 3> df{f.partial(0), f.partial(1), f.partial(2)};
  const std::array<Poly3, 3> dg{g.partial(0), g.partial(1), g.partial(2)};
  const std::array<Poly3, 3> cross{df[1] * dg[2] - df[2] * dg[1], df[2] * dg[0] - df[0] * dg[2],
                                   df[0] * dg[1] - df[1] * dg[0]};
  Poly3 r;
  for (int k = 0; k < 3; ++k) r += Poly3::coordinate(k) * cross[static_cast<std::size_t>(k)];
  return r;
}

std::vector<Poly3> monomial_basis(unsigned max_degree) {
  std::vector<Poly3> out;
  for (unsigned d = 0; d <= max_degree; ++d)
    for (unsigned a = 0; a <= d; ++a)
      for (unsigned b = 0; a + b <= d; ++b) out.push_back(Poly3::monomial({a, b, d - a - b}));
  return out;
}

std::array<double, 3> rigid_body_rhs(const RigidBodyState& s) { return rigid_body_rhs(s.m, s.inertia); }

double rigid_body_energy(const RigidBodyState& s) {
  double h = 0.0;
  for (std::size_t k = 0; k < 3; ++k) h += s.m[k] * s.m[k] / s.inertia[k];
  return 0.5 * h;
}

double rigid_body_casimir(const RigidBodyState& s) {
  return s.m[0] * s.m[0] + s.m[1] * s.m[1] + s.m[2] * s.m[2];
}

namespace {

double max_relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double ref = std::abs(series.front());
  double worst = 0.0;
  for (double v : series) worst = std::max(worst, std::abs(v - series.front()));
  return ref > 0.0 ? worst / ref : worst;
}

}  // namespace

double RigidBodyTrajectory::energy_drift() const { return max_relative_drift(energy); }
double RigidBodyTrajectory::casimir_drift() const { return max_relative_drift(casimir); }

std::string RigidBodyTrajectory::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "t,m1,m2,m3,H,C\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    os << t[i] << ',' << m[i][0] << ',' << m[i][1] << ',' << m[i][2] << ',' << energy[i] << ',' << casimir[i]
       << '\n';
  return os.str();
}

RigidBodyTrajectory simulate_rigid_body(const RigidBodyState& s0, double dt, double horizon,
                                        RigidBodyOptions options) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw Error("rigid body: dt and T must be positive");
  for (double i : s0.inertia)
    if (!(i > 0.0)) throw Error("rigid body: moments of inertia must be positive");

  using Vec = Eigen::Vector3d;
  using Mat = Eigen::Matrix3d;
  const Vec inv_i(1.0 / s0.inertia[0], 1.0 / s0.inertia[1], 1.0 / s0.inertia[2]);
  auto rhs = [&](const Vec& m) -> Vec { return m.cross(m.cwiseProduct(inv_i)); };
  auto skew = [](const Vec& a) {
    Mat s;
    s << 0, -a(2), a(1), a(2), 0, -a(0), -a(1), a(0), 0;
    return s;
  };
  // d/dm [m x (m/I)] = -[m/I]_x + [m]_x diag(1/I)
  auto jacobian = [&](const Vec& m) -> Mat {
    return -skew(m.cwiseProduct(inv_i)) + skew(m) * inv_i.asDiagonal();
  };

  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  RigidBodyTrajectory traj;
  traj.t.reserve(steps + 1);
  traj.m.reserve(steps + 1);

  RigidBodyState state = s0;
  auto record = [&](double t) {
    traj.t.push_back(t);
    traj.m.push_back(state.m);
    traj.energy.push_back(rigid_body_energy(state));
    traj.casimir.push_back(rigid_body_casimir(state));
  };
  record(0.0);

  Vec m(s0.m[0], s0.m[1], s0.m[2]);
  for (std::size_t n = 1; n <= steps; ++n) {
    // Solve y = m + dt f((m + y)/2) by Newton from an explicit Euler guess.
    Vec y = m + dt * rhs(m);
    double residual = 0.0;
    bool converged = false;
    const double scale = std::max(1.0, m.norm());
    for (int it = 0; it < options.max_iterations; ++it) {
      const Vec mid = 0.5 * (m + y);
      const Vec g = y - m - dt * rhs(mid);
      residual = g.lpNorm<Eigen::Infinity>();
      if (residual <= options.tolerance * scale) {
        converged = true;
        break;
      }
      const Mat jac = Mat::Identity() - 0.5 * dt * jacobian(mid);
      y -= jac.partialPivLu().solve(g);
    }
    if (!converged)
      throw SolverError("implicit midpoint: Newton did not converge at step " + std::to_string(n), n, residual);
    m = y;
    state.m = {m(0), m(1), m(2)};
    record(static_cast<double>(n) * dt);
  }
  return traj;
}

}  // namespace hamcheck
