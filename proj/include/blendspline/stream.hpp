#pragma once

#include <algorithm>
#include <concepts>
#include <optional>
#include <string>
#include <vector>

#include "blendspline/blend.hpp"
#include "blendspline/data.hpp"
#include "blendspline/error.hpp"

namespace blendspline {

/// k-th of `per` equally spaced points of [lo, hi), k = 0..per-1.
template <std::floating_point Real>
Real interval_point(Real lo, Real hi, int k, int per) {
  return (k == 0) ? lo : lo + (hi - lo) * Real(k) / Real(per);
}

/// Evaluation abscissas: `per` points in each [y_i, y_{i+1}), then y_N.
template <std::floating_point Real>
std::vector<Real> per_interval_points(std::span<const Real> y, int per) {
  std::vector<Real> out;
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    for (int k = 0; k < per; ++k) out.push_back(interval_point(y[i], y[i + 1], k, per));
  out.push_back(y.back());
  return out;
}

/// A value of P f at x followed by its derivatives of orders 1..d.
template <std::floating_point Real>
struct EvalRow {
  Real x;
  std::vector<Real> values;
};

template <typename Spline, std::floating_point Real>
EvalRow<Real> eval_row(const Spline& s, Real x, int deriv_columns) {
  EvalRow<Real> r{x, {s.eval(x)}};
  for (int d = 1; d <= deriv_columns; ++d) r.values.push_back(s.eval_deriv(d, x));
  return r;
}

/// Sliding-window evaluation of the blended interpolant.
///
/// Every quantity P f depends on is computed from nearby knots and data only,
/// so the rows for [y_i, y_{i+1}) can be produced from an operator built on a
/// window of samples around i. The window reaches 2m samples to each side
/// (more to the left if needed for the minimum size) and starts at an even
/// index so the refined knots see the same insertion pattern. Rows are
/// therefore bit-identical to evaluating the interpolant of the full data.
template <std::floating_point Real>
class StreamingInterpolator {
 public:
  struct Options {
    int order = 3;
    int per_interval = 1;
    int deriv_columns = 0;
    std::optional<std::vector<Real>> derivs_a;  // exact f^{(l)}(a), l = 1..m-1
    std::optional<std::vector<Real>> derivs_b;
  };

  explicit StreamingInterpolator(Options opt) : opt_(std::move(opt)) {
    require_order(opt_.order);
    if (opt_.per_interval < 1) throw Error(Errc::index_out_of_range, "points per interval must be >= 1");
    const auto m = static_cast<std::size_t>(opt_.order - 1);
    if ((opt_.derivs_a && opt_.derivs_a->size() != m) || (opt_.derivs_b && opt_.derivs_b->size() != m)) {
      throw Error(Errc::length_mismatch, "expected m-1 endpoint derivatives at each end");
    }
  }

  /// Samples whose rows become final once they arrive lag by 2m+1 intervals.
  int lookahead() const { return 2 * opt_.order + 1; }

  std::vector<EvalRow<Real>> push(Real y, Real f) {
    if (!y_.empty() && !(y > y_.back())) {
      throw Error(Errc::invalid_grid, "sampling points must be strictly increasing (index " +
                                          std::to_string(y_.size()) + ")");
    }
    y_.push_back(y);
    f_.push_back(f);
    std::vector<EvalRow<Real>> out;
    const int last = static_cast<int>(y_.size()) - 1;
    while (next_ <= last - lookahead() && last >= min_samples()) emit(next_++, last, false, out);
    return out;
  }

  std::vector<EvalRow<Real>> finish() {
    std::vector<EvalRow<Real>> out;
    const int last = static_cast<int>(y_.size()) - 1;
    if (last < min_samples()) {
      throw Error(Errc::grid_too_small, "quasi-interpolation requires N >= 3m-3 (got N = " +
                                            std::to_string(std::max(last, 0)) +
                                            ", m = " + std::to_string(opt_.order) + ")");
    }
    while (next_ <= last - 1) emit(next_++, last, true, out);
    return out;
  }

 private:
  int min_samples() const { return 3 * opt_.order - 3; }

  int window_start(int i, int last) const {
    int s = std::min(i - 2 * opt_.order, last - min_samples());
    if (s <= 0) return 0;
    return s - (s % 2);
  }

  void emit(int i, int last, bool final, std::vector<EvalRow<Real>>& out) const {
    const int m = opt_.order;
    const int s = window_start(i, last);
    std::vector<Real> wy(y_.begin() + s, y_.begin() + last + 1);
    std::vector<Real> wf(f_.begin() + s, f_.begin() + last + 1);
    SamplingGrid<Real> grid(wy);
    HermiteData<Real> data = hermite_data_auto(grid, wf, m);
    if (s == 0 && opt_.derivs_a) data.derivs_a = *opt_.derivs_a;
    if (final && opt_.derivs_b) data.derivs_b = *opt_.derivs_b;
    const auto p = BlendOperator<Real>(grid, m).apply(data);
    for (int k = 0; k < opt_.per_interval; ++k) {
      out.push_back(eval_row(p, interval_point(y_[i], y_[i + 1], k, opt_.per_interval), opt_.deriv_columns));
    }
    if (final && i == last - 1) out.push_back(eval_row(p, y_[last], opt_.deriv_columns));
  }

  Options opt_;
  std::vector<Real> y_, f_;
  int next_ = 0;
};

}  // namespace blendspline
