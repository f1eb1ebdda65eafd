#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hamcheck {

using Rational = mpq_class;

/// Maximum number of independent variables (x, and y on the torus).
inline constexpr int kMaxAxes = 2;

/// Differentiation multi-index J = (j_x, j_y). One-dimensional indices keep j_y = 0.
///
/// Ordered graded-lexicographically: lower total order first, then the index with the
/// larger x exponent first, so u < u_x < u_y < u_xx < u_xy < u_yy.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  constexpr MultiIndex(unsigned x, unsigned y = 0) : exps_{x, y} {}

  static constexpr MultiIndex unit(int axis) {
    return axis == 0 ? MultiIndex(1, 0) : MultiIndex(0, 1);
  }

  constexpr unsigned operator[](int axis) const { return exps_[static_cast<std::size_t>(axis)]; }
  constexpr unsigned order() const { return exps_[0] + exps_[1]; }
  constexpr bool is_zero() const { return order() == 0; }

  /// Highest axis carrying a nonzero exponent, plus one (0 for the empty index).
  constexpr int axes_used() const { return exps_[1] ? 2 : (exps_[0] ? 1 : 0); }

  constexpr MultiIndex raised(int axis) const {
    MultiIndex r = *this;
    ++r.exps_[static_cast<std::size_t>(axis)];
    return r;
  }

  /// Componentwise K >= J.
  constexpr bool contains(const MultiIndex& j) const {
    return exps_[0] >= j.exps_[0] && exps_[1] >= j.exps_[1];
  }

  constexpr MultiIndex operator+(const MultiIndex& o) const {
    return {exps_[0] + o.exps_[0], exps_[1] + o.exps_[1]};
  }
  /// Requires contains(o).
  constexpr MultiIndex operator-(const MultiIndex& o) const {
    return {exps_[0] - o.exps_[0], exps_[1] - o.exps_[1]};
  }

  constexpr bool operator==(const MultiIndex&) const = default;
  constexpr std::strong_ordering operator<=>(const MultiIndex& o) const {
    if (auto c = order() <=> o.order(); c != 0) return c;
    return o.exps_[0] <=> exps_[0];
  }

  /// Subscript spelling: "xxy" for (2,1), empty for the zero index.
  std::string subscript() const;

 private:
  std::array<unsigned, kMaxAxes> exps_{0, 0};
};

/// Multi-index binomial (K choose J) = prod_i (k_i choose j_i); zero unless K >= J.
Rational binomial(const MultiIndex& k, const MultiIndex& j);

/// All L with 0 <= L <= J componentwise, in canonical order.
std::vector<MultiIndex> sub_indices(const MultiIndex& j);

}  // namespace hamcheck
