#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"

namespace blendspline {

/// Binomial coefficient as a floating value (exact for the small n used here).
template <std::floating_point Real = double>
Real binomial(int n, int k) {
  if (k < 0 || k > n) return Real(0);
  Real r = 1;
  for (int i = 1; i <= k; ++i) r = r * Real(n - k + i) / Real(i);
  return r;
}

template <std::floating_point Real = double>
Real factorial(int n) {
  Real r = 1;
  for (int i = 2; i <= n; ++i) r *= Real(i);
  return r;
}

/// All elementary symmetric functions e_0..e_n of `values`, by expanding
/// prod (1 + v z) one factor at a time.
template <std::floating_point Real>
std::vector<Real> elementary_symmetric(std::span<const Real> values) {
  std::vector<Real> e(values.size() + 1, Real(0));
  e[0] = 1;
  for (std::size_t p = 0; p < values.size(); ++p) {
    for (std::size_t k = p + 1; k >= 1; --k) e[k] += values[p] * e[k - 1];
  }
  return e;
}

/// sigma^n(values); 1 for n = 0 and 0 when n exceeds the number of values.
template <std::floating_point Real>
Real sigma(int n, std::span<const Real> values) {
  if (n < 0 || static_cast<std::size_t>(n) > values.size()) return Real(0);
  if (n == 0) return Real(1);
  return elementary_symmetric(values)[static_cast<std::size_t>(n)];
}

template <std::floating_point Real>
Real sigma(int n, const std::vector<Real>& values) {
  return sigma(n, std::span<const Real>(values));
}

/// Marsden column [xi^0, ..., xi^{m-1}] for basis function `source`:
/// xi^n = sigma^n(x_{l+1}, ..., x_{l+m-1}) / C(m-1, n).
template <std::floating_point Real>
struct XiVector {
  std::vector<Real> entries;
  int source = 0;
};

template <std::floating_point Real>
XiVector<Real> xi_from_knots(std::span<const Real> interior, int source = 0) {
  const int m = static_cast<int>(interior.size()) + 1;
  const std::vector<Real> e = elementary_symmetric(interior);
  XiVector<Real> xi{std::vector<Real>(static_cast<std::size_t>(m)), source};
  for (int n = 0; n < m; ++n) xi.entries[n] = e[n] / binomial<Real>(m - 1, n);
  xi.entries[0] = 1;
  return xi;
}

template <std::floating_point Real>
XiVector<Real> xi_vector(const KnotVector<Real>& x, int m, int l) {
  if (l + 1 < x.first_index() || l + m - 1 > x.last_index()) {
    throw Error(Errc::index_out_of_range, "xi vector index " + std::to_string(l) + " out of range");
  }
  std::vector<Real> interior;
  for (int p = l + 1; p <= l + m - 1; ++p) interior.push_back(x[p]);
  return xi_from_knots<Real>(interior, l);
}

/// sum_j (-1)^j r^{n-j} sigma^j(t); equals prod_j (r - t_j).
template <std::floating_point Real>
Real factor_expansion(Real r, std::span<const Real> t) {
  const std::vector<Real> e = elementary_symmetric(t);
  const int n = static_cast<int>(t.size());
  Real sum = 0;
  for (int j = 0; j <= n; ++j) {
    const Real term = std::pow(r, Real(n - j)) * e[j];
    sum += (j % 2 == 0) ? term : -term;
  }
  return sum;
}

/// Both sides of the symmetric-function identity linking sigma(x) and sigma(y)
/// to a sum of products prod_k (x_{t_k} - y_k).
///
/// lhs = sum_l (-1)^l sigma^{m-1-l}(x) / C(m-1,l) * sigma^l(y)
/// rhs = 1/(m-1)! * sum over permutations t of {1..m-1} of prod_k (x_{t_k} - y_k)
///
/// The right side enumerates all (m-1)! permutations, so keep m small.
template <std::floating_point Real>
struct IdentitySides {
  Real lhs;
  Real rhs;
};

template <std::floating_point Real>
IdentitySides<Real> symm_identity_check(std::span<const Real> x, std::span<const Real> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::length_mismatch, "both sequences must have m-1 entries");
  }
  const int n = static_cast<int>(x.size());  // m - 1
  const std::vector<Real> ex = elementary_symmetric(x);
  const std::vector<Real> ey = elementary_symmetric(y);
  Real lhs = 0;
  for (int l = 0; l <= n; ++l) {
    const Real term = ex[n - l] / binomial<Real>(n, l) * ey[l];
    lhs += (l % 2 == 0) ? term : -term;
  }

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  Real rhs = 0;
  do {
    Real prod = 1;
    for (int k = 0; k < n; ++k) prod *= x[perm[k]] - y[k];
    rhs += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  rhs /= factorial<Real>(n);
  return {lhs, rhs};
}

}  // namespace blendspline
