#include "hamcheck/multi_index.hpp"

#include <algorithm>

namespace hamcheck {

std::string MultiIndex::subscript() const {
  return std::string(exps_[0], 'x') + std::string(exps_[1], 'y');
}

Rational binomial(const MultiIndex& k, const MultiIndex& j) {
  if (!k.contains(j)) return 0;
  mpz_class result = 1;
  for (int axis = 0; axis < kMaxAxes; ++axis) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), k[axis], j[axis]);
    result *= c;
  }
  return Rational(result);
}

std::vector<MultiIndex> sub_indices(const MultiIndex& j) {
  std::vector<MultiIndex> out;
  out.reserve((j[0] + 1) * (j[1] + 1));
  for (unsigned a = 0; a <= j[0]; ++a)
    for (unsigned b = 0; b <= j[1]; ++b) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hamcheck
