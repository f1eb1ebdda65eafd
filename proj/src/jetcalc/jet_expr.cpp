#include "hamcheck/jet_expr.hpp"

#include <algorithm>

namespace hamcheck {

std::string JetVar::to_string() const {
  if (index.is_zero()) return name;
  return name + "_" + index.subscript();
}

Monomial::Monomial(JetVar v, unsigned power) {
  if (power > 0) factors_.emplace_back(std::move(v), power);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, p] : factors_) d += p;
  return d;
}

unsigned Monomial::power_of(const JetVar& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, const JetVar& key) { return f.first < key; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() && b != o.factors_.end()) {
    if (a->first < b->first) {
      r.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.factors_.insert(r.factors_.end(), a, factors_.end());
  r.factors_.insert(r.factors_.end(), b, o.factors_.end());
  return r;
}

Monomial Monomial::without_one(const JetVar& v) const {
  Monomial r = *this;
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->first == v) {
      if (--it->second == 0) r.factors_.erase(it);
      break;
    }
  }
  return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  if (auto c = degree() <=> o.degree(); c != 0) return c;
  const std::size_t n = std::min(factors_.size(), o.factors_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = factors_[i].first <=> o.factors_[i].first; c != 0) return c;
    if (auto c = o.factors_[i].second <=> factors_[i].second; c != 0) return c;
  }
  return factors_.size() <=> o.factors_.size();
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [v, p] : factors_) {
    if (!out.empty()) out += '*';
    out += v.to_string();
    if (p > 1) out += "^" + std::to_string(p);
  }
  return out;
}

JetExpr::JetExpr(long c) {
  if (c != 0) terms_.emplace(Monomial{}, Rational(c));
}

JetExpr::JetExpr(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

JetExpr::JetExpr(const JetVar& v, int axes) : axes_(std::max(axes, v.index.axes_used())) {
  terms_.emplace(Monomial(v), Rational(1));
}

JetExpr::JetExpr(const Monomial& m, const Rational& c, int axes) : axes_(axes) {
  if (c != 0) terms_.emplace(m, c);
  for (const auto& [v, p] : m.factors()) axes_ = std::max(axes_, v.index.axes_used());
}

JetExpr JetExpr::with_axes(int axes) const {
  JetExpr r = *this;
  r.axes_ = std::max(axes_, axes);
  return r;
}

bool JetExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

Rational JetExpr::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> JetExpr::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, p] : m.factors()) out.insert(v.name);
  return out;
}

std::set<JetVar> JetExpr::jet_vars(const std::string& name) const {
  std::set<JetVar> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, p] : m.factors())
      if (v.name == name) out.insert(v);
  return out;
}

std::set<JetVar> JetExpr::jet_vars() const {
  std::set<JetVar> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, p] : m.factors()) out.insert(v);
  return out;
}

bool JetExpr::depends_on(const std::string& name) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, p] : m.factors())
      if (v.name == name) return true;
  return false;
}

int JetExpr::max_order(const std::string& name) const {
  int best = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, p] : m.factors())
      if (v.name == name) best = std::max(best, static_cast<int>(v.index.order()));
  return best;
}

void JetExpr::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

JetExpr JetExpr::operator-() const {
  JetExpr r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

JetExpr& JetExpr::operator+=(const JetExpr& o) {
  axes_ = std::max(axes_, o.axes_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

JetExpr& JetExpr::operator-=(const JetExpr& o) {
  axes_ = std::max(axes_, o.axes_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

JetExpr operator*(const JetExpr& a, const JetExpr& b) {
  JetExpr r;
  r.axes_ = std::max(a.axes_, b.axes_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

JetExpr& JetExpr::operator*=(const JetExpr& o) { return *this = *this * o; }

JetExpr& JetExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

std::string JetExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_constant()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += m.to_string();
    } else {
      out += mag.get_str() + "*" + m.to_string();
    }
  }
  return out;
}

JetExpr pow(const JetExpr& base, unsigned n) {
  JetExpr result = JetExpr(1L).with_axes(base.axes());
  JetExpr b = base;
  while (n > 0) {
    if (n & 1u) result *= b;
    n >>= 1u;
    if (n > 0) b *= b;
  }
  return result;
}

JetExpr partial(const JetExpr& e, const JetVar& v) {
  JetExpr r = JetExpr(0L).with_axes(e.axes());
  for (const auto& [m, c] : e.terms()) {
    const unsigned p = m.power_of(v);
    if (p == 0) continue;
    r += JetExpr(m.without_one(v), c * p, e.axes());
  }
  return r;
}

double evaluate(const JetExpr& e, const std::function<double(const JetVar&)>& value_of) {
  double total = 0.0;
  for (const auto& [m, c] : e.terms()) {
    double term = c.get_d();
    for (const auto& [v, p] : m.factors()) {
      const double x = value_of(v);
      for (unsigned i = 0; i < p; ++i) term *= x;
    }
    total += term;
  }
  return total;
}

}  // namespace hamcheck
