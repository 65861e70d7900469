#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "blendspline/bspline.hpp"
#include "blendspline/data.hpp"
#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"
#include "blendspline/molecule.hpp"
#include "blendspline/spline.hpp"

namespace blendspline {

/// Local Hermite interpolation operator on the refined knots t.
///
/// Interior samples y_1..y_{N-1} each own one B-spline of t, normalized to 1
/// at the sample. At each end, m molecules built from the boundary knot
/// sequences match the value and derivatives of orders 1..m-1.
template <std::floating_point Real>
class LocalOperator {
 public:
  using Matrix = std::vector<std::vector<Real>>;

  LocalOperator(const SamplingGrid<Real>& grid, int m) : grid_(grid), m_(m), rk_(refined_knots(grid, m)) {
    const int n = grid.N();
    for (int c = 0; c < m; ++c) left_.push_back(left_subset(rk_, m - 1 - c));
    for (int k = 0; k < m; ++k) right_.push_back(right_subset(rk_, k));

    s_left_.assign(m, std::vector<Real>(m));
    s_right_.assign(m, std::vector<Real>(m));
    for (int d = 0; d < m; ++d) {
      for (int c = 0; c < m; ++c) {
        s_left_[d][c] = bspline_derivative(left_[c], d, grid.a(), false);
        s_right_[d][c] = bspline_derivative(right_[c], d, grid.b(), true);
      }
    }
    solve_left();
    solve_right();

    for (int i = 1; i <= n - 1; ++i) {
      const int s = rk_.interior_start(i);
      const Real v = bspline_value(rk_.t.span_of(s), grid[i]);
      if (v == Real(0)) {
        throw Error(Errc::zero_denominator, "interior B-spline vanishes at sample " + std::to_string(i));
      }
      start_.push_back(s);
      norm_.push_back(v);
    }

    // Boundary molecules re-expressed on t, once, so apply() is a sum.
    for (int l = 0; l < m; ++l) {
      left_t_.push_back(on_t(left_, b_left_[l]));
      right_t_.push_back(on_t(right_, b_right_[l]));
    }
  }

  int order() const { return m_; }
  int N() const { return grid_.N(); }
  const SamplingGrid<Real>& grid() const { return grid_; }
  const RefinedKnots<Real>& refined() const { return rk_; }

  /// Collocation matrices S[n][c] = N^{(n)}_{t_{-m+1+c}}(a) and
  /// S'[n][k] = N^{(n)}_{t_{N+k}}(b).
  const Matrix& collocation_left() const { return s_left_; }
  const Matrix& collocation_right() const { return s_right_; }

  /// Knots of t_{-m+1+c} and t_{N+k}.
  const std::vector<Real>& left_knots(int c) const { return left_.at(static_cast<std::size_t>(c)); }
  const std::vector<Real>& right_knots(int k) const { return right_.at(static_cast<std::size_t>(k)); }

  /// b_{m,i,k} for i = -(m-1)..0 and i = N..N+m-1.
  Real b(int i, int k) const {
    if (k < 0 || k >= m_) throw Error(Errc::index_out_of_range, "coefficient index out of range");
    if (i <= 0 && i > -m_) return b_left_[static_cast<std::size_t>(-i)][static_cast<std::size_t>(k)];
    if (i >= N() && i < N() + m_) return b_right_[static_cast<std::size_t>(i - N())][static_cast<std::size_t>(k)];
    throw Error(Errc::index_out_of_range, "no boundary coefficients for molecule " + std::to_string(i));
  }

  /// t-index of the B-spline carrying interior sample i and its value there.
  int interior_start(int i) const { return start_.at(static_cast<std::size_t>(i - 1)); }
  Real interior_norm(int i) const { return norm_.at(static_cast<std::size_t>(i - 1)); }

  SplineMolecule<Real> molecule(int i) const {
    const int m = m_;
    std::vector<MoleculeTerm<Real>> terms;
    if (i <= 0 && i > -m) {
      for (int c = 0; c < m; ++c) terms.push_back({b(i, c), -m + 1 + c, left_[c]});
    } else if (i >= 1 && i <= N() - 1) {
      const auto sp = rk_.t.span_of(interior_start(i));
      terms.push_back({Real(1) / interior_norm(i), interior_start(i), std::vector<Real>(sp.begin(), sp.end())});
    } else if (i >= N() && i < N() + m) {
      for (int k = 0; k < m; ++k) terms.push_back({b(i, k), N() + k, right_[k]});
    } else {
      throw Error(Errc::index_out_of_range, "molecule index " + std::to_string(i) + " out of range");
    }
    return SplineMolecule<Real>(i, std::move(terms), grid_.b());
  }

  /// R f as a spline on t. Index 0 of the endpoint data is the sample value.
  SplineFunction<Real> apply(const HermiteData<Real>& data) const {
    data.check(N() + 1, m_);
    const int first = rk_.t.first_index();
    std::vector<Real> c(static_cast<std::size_t>(rk_.t.size() - m_), Real(0));
    for (int l = 0; l < m_; ++l) {
      const Real d = (l == 0) ? data.values.front() : data.deriv_a(l);
      add(c, left_t_[l], d);
    }
    for (int i = 1; i <= N() - 1; ++i) {
      c[static_cast<std::size_t>(interior_start(i) - first)] += data.values[i] / interior_norm(i);
    }
    for (int r = 0; r < m_; ++r) {
      const Real d = (r == 0) ? data.values.back() : data.deriv_b(r);
      add(c, right_t_[r], d);
    }
    return SplineFunction<Real>(rk_.t, std::move(c));
  }

 private:
  struct Sparse {
    int first = 0;
    std::vector<Real> values;
  };

  void add(std::vector<Real>& c, const Sparse& s, Real d) const {
    const int base = s.first - rk_.t.first_index();
    for (std::size_t p = 0; p < s.values.size(); ++p) c[static_cast<std::size_t>(base) + p] += d * s.values[p];
  }

  // Column c has multiplicity m-c at a, so its derivatives of order < c
  // vanish there and S is lower triangular: forward substitution per l.
  void solve_left() {
    const int m = m_;
    b_left_.assign(m, std::vector<Real>(m, Real(0)));
    for (int l = 0; l < m; ++l) {
      auto& bl = b_left_[l];
      for (int c = 0; c < m; ++c) {
        Real rhs = (c == l) ? Real(1) : Real(0);
        for (int p = 0; p < c; ++p) rhs -= s_left_[c][p] * bl[p];
        if (s_left_[c][c] == Real(0)) throw Error(Errc::zero_denominator, "singular left boundary system");
        bl[c] = rhs / s_left_[c][c];
      }
    }
  }

  // Column k has multiplicity k+1 at b; ordered by c = m-1-k the system is
  // lower triangular in the same way.
  void solve_right() {
    const int m = m_;
    b_right_.assign(m, std::vector<Real>(m, Real(0)));
    for (int r = 0; r < m; ++r) {
      auto& br = b_right_[r];
      for (int c = 0; c < m; ++c) {
        const int k = m - 1 - c;
        Real rhs = (c == r) ? Real(1) : Real(0);
        for (int p = 0; p < c; ++p) rhs -= s_right_[c][m - 1 - p] * br[m - 1 - p];
        if (s_right_[c][k] == Real(0)) throw Error(Errc::zero_denominator, "singular right boundary system");
        br[k] = rhs / s_right_[c][k];
      }
    }
  }

  Sparse on_t(const std::vector<std::vector<Real>>& subsets, const std::vector<Real>& coeffs) const {
    const int first = rk_.t.first_index();
    std::vector<Real> dense(static_cast<std::size_t>(rk_.t.size() - m_), Real(0));
    for (std::size_t c = 0; c < subsets.size(); ++c) {
      const auto s = convert(single_bspline<Real>(subsets[c]), rk_.t);
      for (std::size_t p = 0; p < dense.size(); ++p) dense[p] += coeffs[c] * s.coefficients()[p];
    }
    std::size_t lo = 0, hi = dense.size();
    while (lo < hi && dense[lo] == Real(0)) ++lo;
    while (hi > lo && dense[hi - 1] == Real(0)) --hi;
    return {first + static_cast<int>(lo), std::vector<Real>(dense.begin() + lo, dense.begin() + hi)};
  }

  SamplingGrid<Real> grid_;
  int m_;
  RefinedKnots<Real> rk_;
  std::vector<std::vector<Real>> left_, right_;
  Matrix s_left_, s_right_;
  Matrix b_left_, b_right_;
  std::vector<int> start_;
  std::vector<Real> norm_;
  std::vector<Sparse> left_t_, right_t_;
};

}  // namespace blendspline
