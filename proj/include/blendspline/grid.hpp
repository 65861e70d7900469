#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "blendspline/error.hpp"

namespace blendspline {

inline void require_order(int m) {
  if (m < 3) {
    throw Error(Errc::order_too_small,
                "spline order must satisfy m >= 3 (got " + std::to_string(m) + ")");
  }
}

/// Strictly increasing sampling points y_0 < ... < y_N on [a, b] = [y_0, y_N].
template <std::floating_point Real>
class SamplingGrid {
 public:
  SamplingGrid() = default;

  explicit SamplingGrid(std::vector<Real> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
      throw Error(Errc::invalid_grid, "a sampling grid needs at least two points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!std::isfinite(points_[i])) {
        throw Error(Errc::invalid_grid, "sampling point " + std::to_string(i) + " is not finite");
      }
      if (i > 0 && !(points_[i - 1] < points_[i])) {
        throw Error(Errc::invalid_grid,
                    "sampling points must be strictly increasing (index " + std::to_string(i) + ")");
      }
    }
  }

  /// Uniform grid with n intervals on [a, b].
  static SamplingGrid uniform(Real a, Real b, int n) {
    std::vector<Real> pts(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) pts[i] = a + (b - a) * Real(i) / Real(n);
    pts.back() = b;
    return SamplingGrid(std::move(pts));
  }

  std::span<const Real> points() const { return points_; }
  Real operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
  int N() const { return static_cast<int>(points_.size()) - 1; }
  Real a() const { return points_.front(); }
  Real b() const { return points_.back(); }

 private:
  std::vector<Real> points_;
};

/// Non-decreasing knot sequence addressed by logical index; the first stored
/// knot has logical index `first_index()` (typically -m+1).
template <std::floating_point Real>
class KnotVector {
 public:
  KnotVector() = default;
  KnotVector(int first_index, std::vector<Real> knots, int order)
      : first_(first_index), knots_(std::move(knots)), order_(order) {}

  Real operator[](int i) const {
    if (i < first_ || i > last_index()) {
      throw Error(Errc::index_out_of_range, "knot index " + std::to_string(i) + " out of range");
    }
    return knots_[static_cast<std::size_t>(i - first_)];
  }

  int first_index() const { return first_; }
  int last_index() const { return first_ + static_cast<int>(knots_.size()) - 1; }
  int size() const { return static_cast<int>(knots_.size()); }
  int order() const { return order_; }
  std::span<const Real> values() const { return knots_; }

  /// The m+1 knots k_j..k_{j+m} supporting basis function j.
  std::span<const Real> span_of(int j) const {
    if (j < first_ || j + order_ > last_index()) {
      throw Error(Errc::index_out_of_range, "basis index " + std::to_string(j) + " out of range");
    }
    return std::span<const Real>(knots_).subspan(static_cast<std::size_t>(j - first_),
                                                 static_cast<std::size_t>(order_) + 1);
  }

  /// Logical index range of the basis functions: [first_index(), last_basis()].
  int last_basis() const { return last_index() - order_; }

 private:
  int first_ = 0;
  std::vector<Real> knots_;
  int order_ = 0;
};

namespace detail {

/// `count` equally spaced points strictly inside (left, right). The centre
/// point, when present, is computed as the midpoint so it coincides bit for bit
/// with the midpoint knots.
template <typename Real>
void append_equally_spaced(std::vector<Real>& out, Real left, Real right, int count) {
  for (int s = 1; s <= count; ++s) {
    if (2 * s == count + 1) {
      out.push_back(Real(0.5) * (left + right));
    } else {
      out.push_back(left + Real(s) * (right - left) / Real(count + 1));
    }
  }
}

}  // namespace detail

/// Midpoint knots x_{-m+1}..x_{N+m}: x_0 = a, x_i = (y_{i-1}+y_i)/2, x_{N+1} = b,
/// both ends stacked to multiplicity m.
template <std::floating_point Real>
KnotVector<Real> midpoint_knots(const SamplingGrid<Real>& grid, int m) {
  require_order(m);
  const int n = grid.N();
  std::vector<Real> k;
  k.reserve(static_cast<std::size_t>(n + 2 * m));
  for (int s = 0; s < m; ++s) k.push_back(grid.a());
  for (int i = 1; i <= n; ++i) k.push_back(Real(0.5) * (grid[i - 1] + grid[i]));
  for (int s = 0; s < m; ++s) k.push_back(grid.b());
  return KnotVector<Real>(-m + 1, std::move(k), m);
}

/// Refined knot sequence t containing every sample, plus index bookkeeping.
template <std::floating_point Real>
struct RefinedKnots {
  KnotVector<Real> t;
  int m = 0;
  int N = 0;
  /// anchor[j] is the t-index with t[anchor[j]] == y_j, j = 0..N.
  std::vector<int> anchor;

  int right_end() const { return anchor.back(); }
  bool even() const { return m % 2 == 0; }

  /// t-index of the first knot of the single B-spline carrying sample i,
  /// i = 1..N-1 (the sequences t_1, t_i and t_{N-1}).
  int interior_start(int i) const {
    if (i < 1 || i > N - 1) {
      throw Error(Errc::index_out_of_range, "interior molecule index out of range");
    }
    if (even()) {
      return m + (i - 2) * (m / 2);
    }
    return m + (i - 2) * ((m + 1) / 2) - (i - 1) / 2;
  }
};

/// Number of knots inserted strictly inside (y_j, y_{j+1}) for 1 <= j <= N-2.
inline int interior_insertions(int m, int j) {
  if (m % 2 == 0) return m / 2 - 1;
  const int r = (m + 1) / 2;
  return (j % 2 == 0) ? r - 1 : r - 2;
}

template <std::floating_point Real>
RefinedKnots<Real> refined_knots(const SamplingGrid<Real>& grid, int m) {
  require_order(m);
  const int n = grid.N();
  if (n < 3) {
    throw Error(Errc::grid_too_small, "refined knots require N >= 3 (got N = " + std::to_string(n) + ")");
  }
  RefinedKnots<Real> rk;
  rk.m = m;
  rk.N = n;
  rk.anchor.assign(static_cast<std::size_t>(n) + 1, 0);

  std::vector<Real> k;
  for (int s = 0; s < m; ++s) k.push_back(grid.a());  // t_{-m+1}..t_0
  auto logical = [&] { return static_cast<int>(k.size()) - m + 1; };  // index of next push

  detail::append_equally_spaced(k, grid[0], grid[1], m - 1);
  for (int j = 1; j <= n - 1; ++j) {
    rk.anchor[j] = logical();
    k.push_back(grid[j]);
    const int count = (j == n - 1) ? m - 1 : interior_insertions(m, j);
    detail::append_equally_spaced(k, grid[j], grid[j + 1], count);
  }
  rk.anchor[n] = logical();
  for (int s = 0; s < m; ++s) k.push_back(grid.b());
  rk.t = KnotVector<Real>(-m + 1, std::move(k), m);
  return rk;
}

/// Indices into t_0..t_m of the m+1-k knots kept for the boundary sequence
/// with k extra stacked knots: round(j*m/(m-k)), j = 0..m-k.
inline std::vector<int> spread_indices(int m, int k) {
  std::vector<int> idx;
  const int d = m - k;
  for (int j = 0; j <= d; ++j) idx.push_back((2 * j * m + d) / (2 * d));
  return idx;
}

/// A labelled knot sequence of exactly m+1 knots (t_{-k}, t_1, t_{N-1}, t_{N+k}).
template <std::floating_point Real>
struct BoundarySubset {
  int label = 0;
  std::vector<Real> knots;
};

/// t_{-k}: k stacked copies of a followed by m+1-k knots spread over t_0..t_m.
template <std::floating_point Real>
std::vector<Real> left_subset(const RefinedKnots<Real>& rk, int k) {
  const int m = rk.m;
  if (k < 0 || k > m - 1) throw Error(Errc::index_out_of_range, "boundary subset index out of range");
  std::vector<Real> out(static_cast<std::size_t>(k), rk.t[0]);
  for (int idx : spread_indices(m, k)) out.push_back(rk.t[idx]);
  return out;
}

/// t_{N+k}: m+1-k knots spread over t_{E-m}..t_E (mirror of the left rule)
/// followed by k stacked copies of b, where t_E = y_N.
template <std::floating_point Real>
std::vector<Real> right_subset(const RefinedKnots<Real>& rk, int k) {
  const int m = rk.m;
  if (k < 0 || k > m - 1) throw Error(Errc::index_out_of_range, "boundary subset index out of range");
  const int e = rk.right_end();
  std::vector<int> idx = spread_indices(m, k);
  std::vector<Real> out;
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) out.push_back(rk.t[e - *it]);
  out.insert(out.end(), static_cast<std::size_t>(k), rk.t[e]);
  return out;
}

/// The m+1 consecutive t-knots of the B-spline carrying sample i (1 <= i <= N-1).
template <std::floating_point Real>
std::vector<Real> interior_subset(const RefinedKnots<Real>& rk, int i) {
  const int s = rk.interior_start(i);
  std::vector<Real> out;
  for (int p = 0; p <= rk.m; ++p) out.push_back(rk.t[s + p]);
  return out;
}

/// All boundary sequences: labels -(m-1)..0, 1, N-1, N..N+m-1.
template <std::floating_point Real>
std::vector<BoundarySubset<Real>> boundary_knot_subsets(const RefinedKnots<Real>& rk) {
  std::vector<BoundarySubset<Real>> out;
  for (int k = rk.m - 1; k >= 0; --k) out.push_back({-k, left_subset(rk, k)});
  out.push_back({1, interior_subset(rk, 1)});
  out.push_back({rk.N - 1, interior_subset(rk, rk.N - 1)});
  for (int k = 0; k < rk.m; ++k) out.push_back({rk.N + k, right_subset(rk, k)});
  return out;
}

}  // namespace blendspline
