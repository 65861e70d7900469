#pragma once

#include <concepts>
#include <span>
#include <utility>
#include <vector>

#include "blendspline/data.hpp"
#include "blendspline/localinterp.hpp"
#include "blendspline/quasi.hpp"
#include "blendspline/spline.hpp"

namespace blendspline {

/// P f = Q f + R(f - Q f), kept as its two parts: the quasi-interpolant on
/// the midpoint knots and the local correction on the refined knots. Values
/// and derivatives are the sums of the parts. The union knots of x and t are
/// finer than either near the ends, so a single coefficient sequence there
/// loses digits in high derivatives; to_union() builds it on request.
template <std::floating_point Real>
class BlendedSpline {
 public:
  BlendedSpline(SplineFunction<Real> quasi_part, SplineFunction<Real> local_part)
      : q_(std::move(quasi_part)), r_(std::move(local_part)) {
    if (q_.order() != r_.order() || q_.a() != r_.a() || q_.b() != r_.b()) {
      throw Error(Errc::length_mismatch, "blended parts must share order and domain");
    }
  }

  int order() const { return q_.order(); }
  Real a() const { return q_.a(); }
  Real b() const { return q_.b(); }
  const SplineFunction<Real>& quasi_part() const { return q_; }
  const SplineFunction<Real>& local_part() const { return r_; }

  Real eval(Real x) const { return q_.eval(x) + r_.eval(x); }
  Real eval_deriv(int n, Real x) const { return q_.eval_deriv(n, x) + r_.eval_deriv(n, x); }

  /// The same spline as one B-spline expansion on the union knots.
  SplineFunction<Real> to_union() const {
    const auto knots = merge_knots(q_.knots(), r_.knots());
    const auto q = convert(q_, knots);
    const auto r = convert(r_, knots);
    std::vector<Real> c(q.coefficients());
    for (std::size_t p = 0; p < c.size(); ++p) c[p] += r.coefficients()[p];
    return SplineFunction<Real>(knots, std::move(c));
  }

 private:
  SplineFunction<Real> q_;
  SplineFunction<Real> r_;
};

/// P = Q + R - RQ: the quasi-interpolant corrected by the local Hermite
/// interpolant of its residual.
template <std::floating_point Real>
class BlendOperator {
 public:
  BlendOperator(const SamplingGrid<Real>& grid, int m)
      : quasi_(grid, m), local_(grid, m), knots_(merge_knots(quasi_.knots(), local_.refined().t)) {}

  int order() const { return quasi_.order(); }
  int N() const { return quasi_.N(); }
  const SamplingGrid<Real>& grid() const { return quasi_.grid(); }
  const QuasiOperator<Real>& quasi() const { return quasi_; }
  const LocalOperator<Real>& local() const { return local_; }
  /// Union of the midpoint and refined knots.
  const KnotVector<Real>& knots() const { return knots_; }

  BlendedSpline<Real> apply(const HermiteData<Real>& data) const {
    SplineFunction<Real> qf = quasi_.apply(data);
    SplineFunction<Real> rr = local_.apply(quasi_.residual(data, qf));
    return BlendedSpline<Real>(std::move(qf), std::move(rr));
  }

  /// Values only: endpoint derivatives from divided differences.
  BlendedSpline<Real> apply(std::span<const Real> values) const {
    return apply(hermite_data_auto(grid(), std::vector<Real>(values.begin(), values.end()), order()));
  }

 private:
  QuasiOperator<Real> quasi_;
  LocalOperator<Real> local_;
  KnotVector<Real> knots_;
};

template <typename Spline>
auto eval_spline(const Spline& s, decltype(s.a()) x) {
  return s.eval(x);
}

template <typename Spline>
auto eval_spline_deriv(const Spline& s, int n, decltype(s.a()) x) {
  return s.eval_deriv(n, x);
}

/// One-shot convenience: build and apply.
template <std::floating_point Real>
BlendedSpline<Real> interpolate(const SamplingGrid<Real>& grid, const HermiteData<Real>& data, int m) {
  return BlendOperator<Real>(grid, m).apply(data);
}

}  // namespace blendspline
