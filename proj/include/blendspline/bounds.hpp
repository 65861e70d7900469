#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <string>

#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"
#include "blendspline/spline.hpp"
#include "blendspline/symfun.hpp"

namespace blendspline {

/// Mesh quantities entering the coefficient, molecule and error bounds.
template <std::floating_point Real>
struct MeshStats {
  Real gamma;    // sup_n |x_n - y_{n-m+1}|, samples stacked at a
  Real delta;    // min(1, smallest sample gap)
  Real epsilon;  // largest midpoint-knot gap
  Real rho;      // max(1, first and last sample gap)
  Real lambda;   // min(1, smallest nonzero refined-knot gap)
  Real tau;      // bound on the boundary coefficients of the local interpolant

  Real gamma_over_delta() const { return gamma / delta; }
  Real two_over_delta() const { return Real(2) / delta; }
};

/// tau = max{1, rho^{m-1}/(m-1), m! (rho^{m-1} (m-1)! (m-2)! / lambda^{m-1})^m}.
template <std::floating_point Real>
Real tau_value(Real rho, Real lambda, int m) {
  require_order(m);
  const Real rp = std::pow(rho, Real(m - 1));
  const Real inner = rp * factorial<Real>(m - 1) * factorial<Real>(m - 2) / std::pow(lambda, Real(m - 1));
  return std::max({Real(1), rp / Real(m - 1), factorial<Real>(m) * std::pow(inner, Real(m))});
}

template <std::floating_point Real>
MeshStats<Real> mesh_stats(const SamplingGrid<Real>& grid, const KnotVector<Real>& x, const RefinedKnots<Real>& rk,
                           int m) {
  require_order(m);
  const int n = grid.N();
  MeshStats<Real> s{};
  s.gamma = 0;
  for (int k = 0; k <= n + m - 1; ++k) {
    const int yi = std::clamp(k - m + 1, 0, n);
    s.gamma = std::max(s.gamma, std::abs(x[k] - grid[yi]));
  }
  Real gap = grid[1] - grid[0];
  for (int i = 1; i < n; ++i) gap = std::min(gap, grid[i + 1] - grid[i]);
  s.delta = std::min(Real(1), gap);
  s.epsilon = 0;
  for (int k = 0; k <= n; ++k) s.epsilon = std::max(s.epsilon, x[k + 1] - x[k]);
  s.rho = std::max({Real(1), grid[1] - grid[0], grid[n] - grid[n - 1]});
  s.lambda = 1;
  const auto t = rk.t.values();
  for (std::size_t i = 1; i < t.size(); ++i) {
    const Real d = t[i] - t[i - 1];
    if (d > Real(0)) s.lambda = std::min(s.lambda, d);
  }
  s.tau = tau_value(s.rho, s.lambda, m);
  return s;
}

/// Coefficient and molecule bound (1/(m-2)!) (gamma/delta)^{m-1}.
template <std::floating_point Real>
Real molecule_bound(const MeshStats<Real>& s, int m) {
  return std::pow(s.gamma_over_delta(), Real(m - 1)) / factorial<Real>(m - 2);
}

/// Endpoint derivative bound m/(m-2)! (gamma/delta)^{m-1} (2/delta)^{m-1}.
template <std::floating_point Real>
Real molecule_derivative_bound(const MeshStats<Real>& s, int m) {
  return Real(m) * molecule_bound(s, m) * std::pow(s.two_over_delta(), Real(m - 1));
}

/// Bracket (m-1)/rho^{m-1} <= |N^{(i)}| <= ((m-1)!)^2 / lambda^{m-1} for the
/// boundary B-splines of the refined knots.
template <std::floating_point Real>
std::pair<Real, Real> boundary_derivative_bracket(const MeshStats<Real>& s, int m) {
  const Real f = factorial<Real>(m - 1);
  return {Real(m - 1) / std::pow(s.rho, Real(m - 1)), f * f / std::pow(s.lambda, Real(m - 1))};
}

/// Constants of the four error regions. A2, A3, B2 and C2 are closed as the
/// finite power sums appearing in the corresponding estimates, with
/// P(n) = sum_{k=1}^n k^{m-1}.
template <std::floating_point Real>
struct ErrorConstants {
  Real A1, A2, A3, A4, A5, A6;
  Real B1, B2;
  Real C1, C2, C3;
  Real D1, D2, D3, D4, D5, D6;
};

template <std::floating_point Real>
ErrorConstants<Real> error_constants(int m) {
  require_order(m);
  const Real mm = Real(m);
  const Real f1 = factorial<Real>(m - 1);
  const Real f2 = factorial<Real>(m - 2);
  const Real p2 = std::pow(Real(2), Real(m - 1));
  const Real p3 = std::pow(Real(3), Real(m - 1));
  const Real fpow = std::pow(f1, Real(m - 3));
  auto P = [&](int n) {
    Real s = 0;
    for (int k = 1; k <= n; ++k) s += std::pow(Real(k), Real(m - 1));
    return s;
  };
  ErrorConstants<Real> c{};
  // U: quasi part near a summed over the molecules reaching [x_0, x_2],
  // plus the boundary local-interpolant terms.
  const Real a1t = ((P(m + 1) - 1) + 3 * mm * (P(m + 2) - 1)) / f2;
  const Real a2t = mm * mm * (P(m - 1) - 1) / f2;
  c.A1 = (1 + mm * p2 + mm * p3) / f1;
  c.A2 = a1t / f1;
  c.A3 = a2t / f1;
  c.A4 = (mm + 1) / f2;
  c.A5 = mm * mm * (mm - 1) / f2;
  c.A6 = mm;
  // V: the three bracketed sums of |x - y_j|^{m-1} over the 2m-1 molecules.
  const Real b1t = (P(m - 1) + 2 * P(m) + P(m + 1)) / f2;
  c.B1 = (2 + p2) / f1;
  c.B2 = b1t / f1;
  // W: as V with the truncated sums of the right boundary.
  const Real c1t = 4 * P(m - 1) / f2;
  c.C1 = c.B1;
  c.C2 = c1t / f1;
  c.C3 = 4 * (mm - 1) * fpow / f2;
  c.D1 = (1 + mm + mm * p2) / f1;
  c.D2 = (1 + p2 + 3 * mm + 3 * mm * p2) / (f2 * f1);
  c.D3 = (1 + p2) * mm * mm * (mm - 1) / (f1 * f2);
  c.D4 = (6 * mm + 2) * fpow / f2;
  c.D5 = 2 * mm * fpow;
  c.D6 = 2 * mm * mm * (mm - 1) * fpow / f2;
  return c;
}

enum class Region { U, V, W, X };

inline char to_char(Region r) { return "UVWX"[static_cast<int>(r)]; }

/// Region of the midpoint-knot interval [x_i, x_{i+1}], i = 0..N.
inline Region classify_region(int i, int N, int m) {
  if (i < 0 || i > N) throw Error(Errc::bad_region, "interval index " + std::to_string(i) + " outside 0..N");
  if (i <= 1) return Region::U;
  if (i >= N - 1) return Region::X;
  if (i <= N - m + 1) return Region::V;
  return Region::W;
}

/// Multiplier of ||f^{(m)}|| on [x_i, x_{i+1}].
template <std::floating_point Real>
Real bound_factor(const MeshStats<Real>& s, int m, Region region) {
  const auto c = error_constants<Real>(m);
  const Real e = s.epsilon;
  const Real em = std::pow(e, Real(m));
  const Real g = std::pow(s.gamma_over_delta(), Real(m - 1));
  const Real d = std::pow(s.two_over_delta(), Real(m - 1));
  Real geo = 0;  // (1 - e^{m-1}) / (1 - e), finite at e = 1
  for (int k = 0; k <= m - 2; ++k) geo += std::pow(e, Real(k));
  const Real t = s.tau;
  switch (region) {
    case Region::U:
      return em * (c.A1 + c.A2 * g + c.A3 * t * g * d) + e * (c.A4 * g + c.A5 * t * g * d + c.A6 * t);
    case Region::V:
      return em * (c.B1 + c.B2 * g);
    case Region::W:
      return em * (c.C1 + c.C2 * g) + e * c.C3 * g * geo;
    case Region::X:
      return em * (c.D1 + c.D2 * g + c.D3 * t * g * d) +
             e * (c.D4 * g * geo + c.D5 * t * geo + c.D6 * t * g * d * geo);
  }
  return Real(0);
}

/// ||f^{(m)}|| times the factor of the region containing interval i.
template <std::floating_point Real>
Real error_bound(const MeshStats<Real>& s, int m, int N, int i, Real fm_norm) {
  return fm_norm * bound_factor(s, m, classify_region(i, N, m));
}

/// max |f(x) - s(x)| over `samples`+1 equally spaced points of [lo, hi].
template <std::floating_point Real, typename Spline>
Real empirical_sup_error(const std::function<Real(Real)>& f, const Spline& s, Real lo, Real hi, int samples) {
  if (samples < 1) samples = 1;
  Real err = 0;
  for (int k = 0; k <= samples; ++k) {
    const Real x = (k == samples) ? hi : lo + (hi - lo) * Real(k) / Real(samples);
    err = std::max(err, std::abs(f(x) - s.eval(x)));
  }
  return err;
}

}  // namespace blendspline
