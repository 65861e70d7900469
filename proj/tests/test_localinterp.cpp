#include <gtest/gtest.h>

#include "support.hpp"

using namespace blendspline;
using testsupport::probes;
using testsupport::random_grid;

TEST(LocalBoundary, OrderThreeUniformValues) {
  const LocalOperator<double> r(SamplingGrid<double>({0, 1, 2, 3, 4}), 3);
  EXPECT_EQ(r.left_knots(0), (std::vector<double>{0, 0, 0, 1}));
  const auto& s = r.collocation_left();
  const std::vector<std::vector<double>> want_s{{1, 0, 0}, {-2, 3, 0}, {2, -7.5, 9}};
  for (int d = 0; d < 3; ++d)
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(s[d][c], want_s[d][c], 1e-13) << d << "," << c;

  const std::vector<std::vector<double>> want_b{{1, 2.0 / 3, 1.0 / 3}, {0, 1.0 / 3, 5.0 / 18}, {0, 0, 1.0 / 9}};
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(r.b(-l, k), want_b[l][k], 1e-14) << l << "," << k;
  // Mirror image at the right end, with the sign of odd derivatives flipped.
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) {
      const double sign = (l % 2 == 1) ? -1.0 : 1.0;
      EXPECT_NEAR(r.b(4 + l, 2 - k), sign * want_b[l][k], 1e-13) << l << "," << k;
    }
}

TEST(LocalBoundary, IndexChecks) {
  const LocalOperator<double> r(SamplingGrid<double>({0, 1, 2, 3, 4}), 3);
  EXPECT_THROW(r.b(1, 0), Error);
  EXPECT_THROW(r.b(0, 3), Error);
  EXPECT_THROW(r.molecule(7), Error);
  EXPECT_THROW(r.molecule(-3), Error);
}

class LocalProperty : public ::testing::TestWithParam<int> {};

TEST_P(LocalProperty, TriangularStructure) {
  const int m = GetParam();
  std::mt19937_64 rng(200 + m);
  const LocalOperator<double> r(SamplingGrid<double>(random_grid(rng, 3 * m)), m);
  EXPECT_EQ(r.b(0, 0), 1.0);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < l; ++k) {
      EXPECT_EQ(r.b(-l, k), 0.0);
      EXPECT_EQ(r.b(r.N() + l, m - 1 - k), 0.0);
    }
    EXPECT_NE(r.b(-l, l), 0.0);
  }
}

TEST_P(LocalProperty, MoleculesAreDualToTheData) {
  const int m = GetParam();
  std::mt19937_64 rng(210 + m);
  for (int trial = 0; trial < 5; ++trial) {
    const SamplingGrid<double> grid(random_grid(rng, 3 * m + trial));
    const LocalOperator<double> r(grid, m);
    const int n = grid.N();
    for (int i = -(m - 1); i <= n + m - 1; ++i) {
      const auto mol = r.molecule(i);
      for (int j = 0; j <= n; ++j) {
        const double want = (i == j) ? 1.0 : 0.0;
        EXPECT_NEAR(mol.eval(grid[j]), want, 1e-11) << "molecule " << i << " at y_" << j;
      }
      for (int l = 1; l < m; ++l) {
        const double scale = std::pow(grid[1] - grid[0], l);
        EXPECT_NEAR(mol.eval_deriv(l, grid.a()) * scale, (i == -l) ? scale : 0.0, 1e-9)
            << "molecule " << i << " derivative " << l << " at a";
        const double scale_b = std::pow(grid[n] - grid[n - 1], l);
        EXPECT_NEAR(mol.eval_deriv(l, grid.b()) * scale_b, (i == n + l) ? scale_b : 0.0, 1e-9)
            << "molecule " << i << " derivative " << l << " at b";
      }
    }
  }
}

TEST_P(LocalProperty, MoleculeSupports) {
  const int m = GetParam();
  std::mt19937_64 rng(220 + m);
  const SamplingGrid<double> grid(random_grid(rng, 3 * m + 1));
  const LocalOperator<double> r(grid, m);
  const int n = grid.N();
  for (int i = -(m - 1); i <= 0; ++i) EXPECT_EQ(r.molecule(i).support(), std::make_pair(grid.a(), grid[1]));
  for (int i = n; i <= n + m - 1; ++i) EXPECT_EQ(r.molecule(i).support(), std::make_pair(grid[n - 1], grid.b()));
  for (int i = 1; i <= n - 1; ++i) {
    const auto [lo, hi] = r.molecule(i).support();
    EXPECT_GE(lo, grid[i - 1]);
    EXPECT_LE(hi, grid[i + 1]);
    EXPECT_LT(lo, grid[i]);
    EXPECT_GT(hi, grid[i]);
  }
}

TEST_P(LocalProperty, ApplyInterpolatesHermiteData) {
  const int m = GetParam();
  std::mt19937_64 rng(230 + m);
  const auto y = random_grid(rng, 3 * m + 2);
  const LocalOperator<double> r(SamplingGrid<double>(y), m);
  const auto data = testsupport::exact_data(y, testsupport::sine(4.0, 0.3), m);
  const auto s = r.apply(data);
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(s.eval(y[i]), data.values[i], 1e-12);
  // The l-th derivative of a boundary B-spline grows like lambda^{-l}, and so does its rounding error.
  const SamplingGrid<double> grid(y);
  const double lambda = mesh_stats(grid, midpoint_knots(grid, m), r.refined(), m).lambda;
  for (int l = 1; l < m; ++l) {
    const double tol = 1e-13 * std::pow(lambda, -l);
    EXPECT_NEAR(s.eval_deriv(l, y.front()), data.deriv_a(l), tol);
    EXPECT_NEAR(s.eval_deriv(l, y.back()), data.deriv_b(l), tol);
  }
  // Agrees with the sum of molecules weighted by the data.
  const int n = static_cast<int>(y.size()) - 1;
  for (double x : probes(0, 1, 61)) {
    double sum = 0;
    for (int i = 0; i <= n; ++i) sum += data.values[static_cast<std::size_t>(i)] * r.molecule(i).eval(x);
    for (int l = 1; l < m; ++l) {
      sum += data.deriv_a(l) * r.molecule(-l).eval(x);
      sum += data.deriv_b(l) * r.molecule(n + l).eval(x);
    }
    EXPECT_NEAR(s.eval(x), sum, 1e-11);
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, LocalProperty, ::testing::Values(3, 4, 5, 6));
