#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"
#include "blendspline/symfun.hpp"

namespace blendspline {

enum class Provenance { exact, divided_difference };

/// Sample values plus derivatives of orders 1..m-1 at both endpoints.
/// derivs_a[l-1] holds f^{(l)}(a); likewise for derivs_b.
template <std::floating_point Real>
struct HermiteData {
  std::vector<Real> values;
  std::vector<Real> derivs_a;
  std::vector<Real> derivs_b;
  Provenance provenance = Provenance::exact;

  Real deriv_a(int l) const { return derivs_a[static_cast<std::size_t>(l - 1)]; }
  Real deriv_b(int l) const { return derivs_b[static_cast<std::size_t>(l - 1)]; }

  void check(int n_samples, int m) const {
    if (static_cast<int>(values.size()) != n_samples) {
      throw Error(Errc::length_mismatch, "expected " + std::to_string(n_samples) + " sample values, got " +
                                             std::to_string(values.size()));
    }
    if (static_cast<int>(derivs_a.size()) != m - 1 || static_cast<int>(derivs_b.size()) != m - 1) {
      throw Error(Errc::length_mismatch, "expected m-1 endpoint derivatives at each end");
    }
  }
};

namespace detail {

/// l! [p_0, ..., p_l] f for l = 1..count, via a Newton table on the given points.
template <typename Real>
std::vector<Real> scaled_divided_differences(std::span<const Real> pts, std::span<const Real> vals,
                                             int count) {
  std::vector<Real> col(vals.begin(), vals.end());
  std::vector<Real> out;
  const int n = static_cast<int>(pts.size());
  for (int l = 1; l <= count; ++l) {
    for (int i = n - 1; i >= l; --i) col[i] = (col[i] - col[i - 1]) / (pts[i] - pts[i - l]);
    out.push_back(factorial<Real>(l) * col[l]);
  }
  return out;
}

}  // namespace detail

/// Endpoint derivative estimates from the m leftmost and m rightmost samples:
/// derivs_a[l] = l! [y_0..y_l] f, derivs_b[l] = l! [y_{N-l}..y_N] f.
template <std::floating_point Real>
std::pair<std::vector<Real>, std::vector<Real>> divided_difference_derivs(
    const SamplingGrid<Real>& grid, std::span<const Real> values, int m) {
  require_order(m);
  const int n = grid.N();
  if (static_cast<int>(values.size()) != n + 1) {
    throw Error(Errc::length_mismatch, "value count must equal the number of samples");
  }
  if (n < m - 1) {
    throw Error(Errc::grid_too_small, "divided-difference derivatives require N >= m-1");
  }
  const auto y = grid.points();
  auto left = detail::scaled_divided_differences<Real>(y.first(m), values.first(m), m - 1);
  // Backward table: reverse the rightmost samples so index l covers y_{N-l}..y_N.
  std::vector<Real> ry(y.end() - m, y.end());
  std::vector<Real> rv(values.end() - m, values.end());
  std::reverse(ry.begin(), ry.end());
  std::reverse(rv.begin(), rv.end());
  auto right = detail::scaled_divided_differences<Real>(std::span<const Real>(ry), std::span<const Real>(rv), m - 1);
  return {std::move(left), std::move(right)};
}

/// Data with divided-difference endpoint derivatives.
template <std::floating_point Real>
HermiteData<Real> hermite_data_auto(const SamplingGrid<Real>& grid, std::vector<Real> values, int m) {
  auto [da, db] = divided_difference_derivs<Real>(grid, values, m);
  return {std::move(values), std::move(da), std::move(db), Provenance::divided_difference};
}

}  // namespace blendspline
