#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"

namespace blendspline {

/// s(x) = sum_j c_j N_j(x) on a knot vector whose ends have multiplicity m.
template <std::floating_point Real>
class SplineFunction {
 public:
  SplineFunction() = default;

  SplineFunction(KnotVector<Real> knots, std::vector<Real> coeffs)
      : knots_(std::move(knots)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != knots_.size() - knots_.order()) {
      throw Error(Errc::length_mismatch, "coefficient count must equal knot count minus m");
    }
  }

  int order() const { return knots_.order(); }
  const KnotVector<Real>& knots() const { return knots_; }
  const std::vector<Real>& coefficients() const { return coeffs_; }
  Real a() const { return knots_[knots_.first_index()]; }
  Real b() const { return knots_[knots_.last_index()]; }

  /// Coefficient of basis function j (logical index).
  Real coeff(int j) const { return coeffs_[static_cast<std::size_t>(j - knots_.first_index())]; }

  /// mu with U_mu <= x < U_{mu+1}; the last non-empty interval when x == b.
  int interval(Real x) const {
    if (!(x >= a() && x <= b())) {
      throw Error(Errc::out_of_domain, "evaluation point outside [a, b]");
    }
    const auto v = knots_.values();
    auto it = (x == b()) ? std::lower_bound(v.begin(), v.end(), x)
                         : std::upper_bound(v.begin(), v.end(), x);
    return knots_.first_index() + static_cast<int>(it - v.begin()) - 1;
  }

  Real eval(Real x) const { return eval_deriv(0, x); }

  /// n-th derivative: difference the local coefficients n times, then run the
  /// de Boor recursion at degree m-1-n.
  Real eval_deriv(int n, Real x) const {
    const int d = order() - 1;
    if (n < 0 || n > d) {
      throw Error(Errc::index_out_of_range, "derivative order " + std::to_string(n) + " out of range");
    }
    const int mu = interval(x);
    std::vector<Real> p(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) p[i] = coeff(mu - d + i);
    auto u = [&](int i) { return knots_[i]; };
    for (int k = 1; k <= n; ++k) {
      for (int i = d; i >= k; --i) {
        const int idx = mu - d + i;
        p[i] = Real(d - k + 1) * (p[i] - p[i - 1]) / (u(idx + d - k + 1) - u(idx));
      }
    }
    const int deg = d - n;
    for (int r = 1; r <= deg; ++r) {
      for (int i = d; i >= n + r; --i) {
        const int idx = mu - d + i;
        const Real alpha = (x - u(idx)) / (u(idx + deg + 1 - r) - u(idx));
        p[i] = (Real(1) - alpha) * p[i - 1] + alpha * p[i];
      }
    }
    return p[d];
  }

  /// Blossom of the polynomial piece on interval mu at args u_1..u_{m-1}.
  Real blossom(int mu, std::span<const Real> args) const {
    const int d = order() - 1;
    std::vector<Real> p(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) p[i] = coeff(mu - d + i);
    for (int r = 1; r <= d; ++r) {
      for (int i = d; i >= r; --i) {
        const int idx = mu - d + i;
        const Real lo = knots_[idx];
        const Real alpha = (args[r - 1] - lo) / (knots_[idx + d + 1 - r] - lo);
        p[i] = (Real(1) - alpha) * p[i - 1] + alpha * p[i];
      }
    }
    return p[d];
  }

 private:
  KnotVector<Real> knots_;
  std::vector<Real> coeffs_;
};

/// Union of two knot vectors of the same order and interval: every distinct
/// value kept with the larger of its two multiplicities.
template <std::floating_point Real>
KnotVector<Real> merge_knots(const KnotVector<Real>& p, const KnotVector<Real>& q) {
  if (p.order() != q.order()) throw Error(Errc::length_mismatch, "knot vectors of different order");
  const auto u = p.values();
  const auto v = q.values();
  if (u.front() != v.front() || u.back() != v.back()) {
    throw Error(Errc::length_mismatch, "knot vectors span different intervals");
  }
  std::vector<Real> out;
  std::size_t i = 0, j = 0;
  while (i < u.size() || j < v.size()) {
    Real val;
    if (j == v.size() || (i < u.size() && u[i] < v[j])) {
      val = u[i];
    } else {
      val = v[j];
    }
    std::size_t ci = 0, cj = 0;
    while (i < u.size() && u[i] == val) ++i, ++ci;
    while (j < v.size() && v[j] == val) ++j, ++cj;
    out.insert(out.end(), std::max(ci, cj), val);
  }
  return KnotVector<Real>(-p.order() + 1, std::move(out), p.order());
}

/// Re-express `s` on `target`, which must contain every knot of `s` at no
/// lower multiplicity inside the domain of `s`. The target may extend beyond
/// that domain, where `s` is taken to be zero.
template <std::floating_point Real>
SplineFunction<Real> convert(const SplineFunction<Real>& s, const KnotVector<Real>& target) {
  const int m = s.order();
  if (target.order() != m) throw Error(Errc::length_mismatch, "knot vectors of different order");
  const Real lo = s.a();
  const Real hi = s.b();
  const int first = target.first_index();
  const int last = target.last_basis();
  std::vector<Real> c(static_cast<std::size_t>(last - first + 1), Real(0));
  std::vector<Real> args(static_cast<std::size_t>(m) - 1);
  for (int j = first; j <= last; ++j) {
    int piece = -1;
    for (int mu = j; mu < j + m; ++mu) {
      if (target[mu] < target[mu + 1] && target[mu] >= lo && target[mu + 1] <= hi) {
        piece = mu;
        break;
      }
    }
    if (piece < 0) continue;
    for (int r = 1; r < m; ++r) args[r - 1] = target[j + r];
    c[static_cast<std::size_t>(j - first)] = s.blossom(s.interval(target[piece]), args);
  }
  return SplineFunction<Real>(target, std::move(c));
}

/// A single B-spline on m+1 knots as a spline with both ends padded to
/// multiplicity m and a one-hot coefficient vector.
template <std::floating_point Real>
SplineFunction<Real> single_bspline(std::span<const Real> k) {
  const int m = static_cast<int>(k.size()) - 1;
  if (m < 1 || !(k.front() < k.back())) {
    throw Error(Errc::degenerate_span, "a B-spline needs k_0 < k_m");
  }
  const int lead = static_cast<int>(std::count(k.begin(), k.end(), k.front()));
  const int tail = static_cast<int>(std::count(k.begin(), k.end(), k.back()));
  std::vector<Real> knots(static_cast<std::size_t>(m - lead), k.front());
  knots.insert(knots.end(), k.begin(), k.end());
  knots.insert(knots.end(), static_cast<std::size_t>(m - tail), k.back());
  std::vector<Real> c(knots.size() - static_cast<std::size_t>(m), Real(0));
  c[static_cast<std::size_t>(m - lead)] = 1;
  return SplineFunction<Real>(KnotVector<Real>(-m + 1, std::move(knots), m), std::move(c));
}

}  // namespace blendspline
