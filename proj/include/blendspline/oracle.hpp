#pragma once

// Slow, literal reference implementations used to cross-check the
// production paths. None of these are used by the operators themselves.

#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "blendspline/error.hpp"
#include "blendspline/symfun.hpp"
#include "blendspline/vandermonde.hpp"

namespace blendspline::oracle {

/// (k_m - k_0) [k_0, ..., k_m] (. - x)_+^{m-1}, with derivative values of the
/// truncated power at repeated knots. Right-continuous like the recursion.
template <std::floating_point Real>
Real truncated_power(std::span<const Real> k, Real x) {
  const int m = static_cast<int>(k.size()) - 1;
  if (m < 1 || !(k[0] < k[m])) throw Error(Errc::degenerate_span, "truncated power needs k_0 < k_m");
  // g^{(j)}(s) / j! for g(s) = (s - x)_+^{m-1}.
  auto g = [&](Real s, int j) -> Real {
    if (!(s > x)) return Real(0);
    return binomial<Real>(m - 1, j) * std::pow(s - x, Real(m - 1 - j));
  };
  std::vector<Real> col(k.begin(), k.end());
  for (int i = 0; i <= m; ++i) col[i] = g(k[i], 0);
  for (int j = 1; j <= m; ++j) {
    for (int i = m; i >= j; --i) {
      if (k[i] == k[i - j]) {
        col[i] = g(k[i], j);
      } else {
        col[i] = (col[i] - col[i - 1]) / (k[i] - k[i - j]);
      }
    }
  }
  return (k[m] - k[0]) * col[m];
}

template <std::floating_point Real>
Real truncated_power(const std::vector<Real>& k, Real x) {
  return truncated_power(std::span<const Real>(k), x);
}

/// sigma^n by summing over all n-subsets.
template <std::floating_point Real>
Real sigma_enumerate(int n, std::span<const Real> v) {
  const int len = static_cast<int>(v.size());
  if (n < 0 || n > len) return Real(0);
  Real sum = 0;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    if (__builtin_popcount(mask) != n) continue;
    Real p = 1;
    for (int i = 0; i < len; ++i)
      if (mask & (1u << i)) p *= v[i];
    sum += p;
  }
  return sum;
}

/// Laplace expansion along the first row.
template <std::floating_point Real>
Real cofactor_det(const SquareMatrix<Real>& a) {
  const int n = a.n;
  if (n == 1) return a(0, 0);
  Real det = 0;
  for (int c = 0; c < n; ++c) {
    SquareMatrix<Real> minor(n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int k = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, cc++) = a(r, k);
      }
    }
    const Real term = a(0, c) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

/// Closed form of the confluent Vandermonde determinant for the column order
/// used by assemble(): prod_i prod_{s<=q_i} s! * prod_{i<j} (v_j - v_i)^{(q_i+1)(q_j+1)}.
template <std::floating_point Real>
Real confluent_closed_form(const NodeSpec<Real>& layout) {
  Real d = 1;
  const auto& nd = layout.nodes;
  for (const auto& node : nd)
    for (int s = 0; s <= node.confluency; ++s) d *= factorial<Real>(s);
  for (std::size_t j = 0; j < nd.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      d *= std::pow(nd[j].value - nd[i].value,
                    Real((nd[i].confluency + 1) * (nd[j].confluency + 1)));
  return d;
}

/// The boundary pattern with one leading node of confluency c followed by
/// simple nodes: prod_l (y_l - y_0)^{c+1} prod_{1<=k<l} (y_l - y_k), times the
/// prod_{s<=c} s! factor from the derivative columns.
template <std::floating_point Real>
Real leading_confluent_closed_form(Real y0, int c, std::span<const Real> rest) {
  Real d = 1;
  for (int s = 0; s <= c; ++s) d *= factorial<Real>(s);
  for (std::size_t l = 0; l < rest.size(); ++l) {
    d *= std::pow(rest[l] - y0, Real(c + 1));
    for (std::size_t k = 0; k < l; ++k) d *= rest[l] - rest[k];
  }
  return d;
}

}  // namespace blendspline::oracle
