#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "blendspline/blendspline.hpp"

namespace testsupport {

using namespace blendspline;

/// Strictly increasing grid on [0,1]: N gaps drawn from U[0.5,1.5], normalized.
inline std::vector<double> random_grid(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  std::vector<double> y{0.0};
  for (int i = 0; i < n; ++i) y.push_back(y.back() + gap(rng));
  const double total = y.back();
  for (auto& v : y) v /= total;
  y.back() = 1.0;
  return y;
}

inline std::vector<double> uniform_grid(double a, double b, int n) {
  std::vector<double> y;
  for (int i = 0; i <= n; ++i) y.push_back(i == n ? b : a + (b - a) * i / n);
  return y;
}

/// A function together with all of its derivatives.
struct TestFunction {
  std::function<double(int, double)> d;  // d(l, x) = f^{(l)}(x)
  double operator()(double x) const { return d(0, x); }
};

inline TestFunction monomial(int deg) {
  return {[deg](int l, double x) {
    if (l > deg) return 0.0;
    double c = 1;
    for (int s = 0; s < l; ++s) c *= deg - s;
    return c * std::pow(x, deg - l);
  }};
}

/// sin(w x + phase) and its derivatives.
inline TestFunction sine(double w = 1.0, double phase = 0.0) {
  return {[w, phase](int l, double x) { return std::pow(w, l) * std::sin(w * x + phase + l * M_PI / 2); }};
}

inline HermiteData<double> exact_data(const std::vector<double>& y, const TestFunction& f, int m) {
  HermiteData<double> d;
  for (double v : y) d.values.push_back(f(v));
  for (int l = 1; l < m; ++l) {
    d.derivs_a.push_back(f.d(l, y.front()));
    d.derivs_b.push_back(f.d(l, y.back()));
  }
  return d;
}

inline std::vector<double> probes(double a, double b, int count) {
  std::vector<double> p;
  for (int k = 0; k < count; ++k) p.push_back(k + 1 == count ? b : a + (b - a) * k / (count - 1));
  return p;
}

inline double rel_err(double got, double want) {
  const double s = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / s;
}

}  // namespace testsupport
