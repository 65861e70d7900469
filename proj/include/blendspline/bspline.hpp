#pragma once

#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"

namespace blendspline {

namespace detail {

/// Values N_{i,p}(x), i = 0..m-p, of the order-p B-splines built on
/// consecutive knots of the local span k_0..k_m (Cox-de Boor, 0/0 := 0).
/// With `closed_right`, x == k_m is evaluated as a left limit.
template <typename Real>
std::vector<Real> cox_de_boor(std::span<const Real> k, int p, Real x, bool closed_right) {
  const int m = static_cast<int>(k.size()) - 1;
  std::vector<Real> v(static_cast<std::size_t>(m), Real(0));
  int active = -1;
  for (int i = 0; i < m; ++i) {
    if (k[i] <= x && x < k[i + 1]) active = i;
  }
  if (active < 0 && closed_right && x == k[m]) {
    for (int i = m - 1; i >= 0; --i) {
      if (k[i] < k[i + 1]) {
        active = i;
        break;
      }
    }
  }
  if (active < 0) return std::vector<Real>(static_cast<std::size_t>(m - p + 1), Real(0));
  v[active] = 1;
  for (int q = 2; q <= p; ++q) {
    for (int i = 0; i <= m - q; ++i) {
      Real s = 0;
      const Real dl = k[i + q - 1] - k[i];
      const Real dr = k[i + q] - k[i + 1];
      if (dl > Real(0)) s += (x - k[i]) / dl * v[i];
      if (dr > Real(0)) s += (k[i + q] - x) / dr * v[i + 1];
      v[i] = s;
    }
  }
  v.resize(static_cast<std::size_t>(m - p + 1));
  return v;
}

}  // namespace detail

/// Normalized B-spline on the local knot span k_0..k_m (order m = k.size()-1).
template <std::floating_point Real>
Real bspline_value(std::span<const Real> k, Real x, bool closed_right = false) {
  const int m = static_cast<int>(k.size()) - 1;
  if (m < 1) throw Error(Errc::degenerate_span, "a B-spline needs at least two knots");
  return detail::cox_de_boor(k, m, x, closed_right)[0];
}

/// n-th derivative of the B-spline on k_0..k_m, by raising lower-order values
/// through D N_{i,p} = (p-1) [N_{i,p-1}/(k_{i+p-1}-k_i) - N_{i+1,p-1}/(k_{i+p}-k_{i+1})].
template <std::floating_point Real>
Real bspline_derivative(std::span<const Real> k, int n, Real x, bool closed_right = false) {
  const int m = static_cast<int>(k.size()) - 1;
  if (n < 0 || n > m - 1) {
    throw Error(Errc::index_out_of_range, "derivative order " + std::to_string(n) + " out of range");
  }
  std::vector<Real> v = detail::cox_de_boor(k, m - n, x, closed_right);
  for (int p = m - n + 1; p <= m; ++p) {
    for (int i = 0; i <= m - p; ++i) {
      Real s = 0;
      const Real dl = k[i + p - 1] - k[i];
      const Real dr = k[i + p] - k[i + 1];
      if (dl > Real(0)) s += v[i] / dl;
      if (dr > Real(0)) s -= v[i + 1] / dr;
      v[i] = Real(p - 1) * s;
    }
  }
  return v[0];
}

template <std::floating_point Real>
Real bspline_value(const std::vector<Real>& k, Real x, bool closed_right = false) {
  return bspline_value(std::span<const Real>(k), x, closed_right);
}

template <std::floating_point Real>
Real bspline_derivative(const std::vector<Real>& k, int n, Real x, bool closed_right = false) {
  return bspline_derivative(std::span<const Real>(k), n, x, closed_right);
}

/// The normalized B-splines N_{j}, j = first..last, of a knot vector.
template <std::floating_point Real>
class BSplineBasis {
 public:
  explicit BSplineBasis(KnotVector<Real> knots) : knots_(std::move(knots)) {
    if (knots_.size() < knots_.order() + 1) {
      throw Error(Errc::degenerate_span, "knot vector shorter than m+1");
    }
  }

  int order() const { return knots_.order(); }
  int first() const { return knots_.first_index(); }
  int last() const { return knots_.last_basis(); }
  int count() const { return last() - first() + 1; }
  const KnotVector<Real>& knots() const { return knots_; }
  Real a() const { return knots_[knots_.first_index()]; }
  Real b() const { return knots_[knots_.last_index()]; }

  Real eval(int j, Real x) const {
    check(j, x);
    return bspline_value(knots_.span_of(j), x, x == b());
  }

  Real eval_deriv(int j, int n, Real x) const {
    check(j, x);
    return bspline_derivative(knots_.span_of(j), n, x, x == b());
  }

 private:
  void check(int j, Real x) const {
    if (j < first() || j > last()) {
      throw Error(Errc::index_out_of_range, "basis index " + std::to_string(j) + " out of range");
    }
    if (!(x >= a() && x <= b())) throw Error(Errc::out_of_domain, "evaluation point outside [a, b]");
  }

  KnotVector<Real> knots_;
};

}  // namespace blendspline
