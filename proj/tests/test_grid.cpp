#include <gtest/gtest.h>

#include "support.hpp"

using namespace blendspline;
using testsupport::random_grid;

namespace {

std::vector<double> values(const KnotVector<double>& k) { return {k.values().begin(), k.values().end()}; }

}  // namespace

TEST(SamplingGrid, RejectsInvalidInput) {
  EXPECT_THROW(SamplingGrid<double>({0.0}), Error);
  EXPECT_THROW(SamplingGrid<double>({0.0, 1.0, 1.0}), Error);
  EXPECT_THROW(SamplingGrid<double>({0.0, 2.0, 1.0}), Error);
  EXPECT_THROW(SamplingGrid<double>({0.0, std::nan("")}), Error);
  const SamplingGrid<double> g({0.0, 0.5, 2.0});
  EXPECT_EQ(g.N(), 2);
  EXPECT_EQ(g.a(), 0.0);
  EXPECT_EQ(g.b(), 2.0);
}

TEST(SamplingGrid, UniformHitsEndpointsExactly) {
  const auto g = SamplingGrid<double>::uniform(0.1, 0.7, 7);
  EXPECT_EQ(g.N(), 7);
  EXPECT_EQ(g.a(), 0.1);
  EXPECT_EQ(g.b(), 0.7);
}

TEST(MidpointKnots, IrregularGridOrderThree) {
  const auto x = midpoint_knots(SamplingGrid<double>({0, 2, 3, 7}), 3);
  EXPECT_EQ(values(x), (std::vector<double>{0, 0, 0, 1, 2.5, 5, 7, 7, 7}));
  EXPECT_EQ(x.first_index(), -2);
  EXPECT_EQ(x.last_index(), 3 + 3);
  EXPECT_EQ(x[0], 0.0);
  EXPECT_EQ(x[1], 1.0);
  EXPECT_EQ(x[4], 7.0);
}

TEST(MidpointKnots, UniformGridOrderFour) {
  const auto x = midpoint_knots(SamplingGrid<double>({0, 1, 2, 3, 4}), 4);
  std::vector<double> interior;
  for (int i = 0; i <= 5; ++i) interior.push_back(x[i]);
  EXPECT_EQ(interior, (std::vector<double>{0, 0.5, 1.5, 2.5, 3.5, 4}));
  EXPECT_EQ(x.first_index(), -3);
  EXPECT_EQ(x.last_index(), 4 + 4);
}

TEST(MidpointKnots, TwoPointGridStillBuilds) {
  const auto x = midpoint_knots(SamplingGrid<double>({0, 1}), 3);
  EXPECT_EQ(x[0], 0.0);
  EXPECT_EQ(x[1], 0.5);
  EXPECT_EQ(x[2], 1.0);
}

TEST(MidpointKnots, RejectsLowOrder) {
  try {
    midpoint_knots(SamplingGrid<double>({0, 1, 2}), 2);
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::order_too_small);
  }
}

TEST(RefinedKnots, EvenOrderUniformGrid) {
  const auto rk = refined_knots(SamplingGrid<double>({0, 1, 2, 3, 4}), 4);
  std::vector<double> t;
  for (int i = 0; i <= rk.right_end(); ++i) t.push_back(rk.t[i]);
  const std::vector<double> want{0, .25, .5, .75, 1, 1.5, 2, 2.5, 3, 3.25, 3.5, 3.75, 4};
  ASSERT_EQ(t.size(), want.size());
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(t[i], want[i], 1e-15) << i;
  EXPECT_EQ(rk.t[4], 1.0);
  EXPECT_EQ(rk.t[6], 2.0);
  EXPECT_EQ(rk.t[8], 3.0);
  EXPECT_EQ(rk.right_end(), 12);
}

TEST(RefinedKnots, OddOrderUniformGrid) {
  // Insertions: 2 in (y0,y1), 0 in (y1,y2), 1 in (y2,y3), 2 in (y3,y4).
  const auto rk = refined_knots(SamplingGrid<double>({0, 1, 2, 3, 4}), 3);
  std::vector<double> t;
  for (int i = 0; i <= rk.right_end(); ++i) t.push_back(rk.t[i]);
  const std::vector<double> want{0, 1.0 / 3, 2.0 / 3, 1, 2, 2.5, 3, 10.0 / 3, 11.0 / 3, 4};
  ASSERT_EQ(t.size(), want.size());
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(t[i], want[i], 1e-15) << i;
  EXPECT_EQ(rk.anchor[1], 3);
  EXPECT_EQ(rk.anchor[2], 4);
  EXPECT_EQ(rk.anchor[3], 6);
  EXPECT_EQ(rk.right_end(), 9);
}

TEST(RefinedKnots, RejectsSmallGrid) {
  try {
    refined_knots(SamplingGrid<double>({0, 1, 2}), 3);
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::grid_too_small);
  }
}

class RefinedKnotsProperty : public ::testing::TestWithParam<int> {};

TEST_P(RefinedKnotsProperty, AnchorsSpacingAndMultiplicity) {
  const int m = GetParam();
  std::mt19937_64 rng(40 + m);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = random_grid(rng, 3 + trial * 2);
    const SamplingGrid<double> grid(y);
    const auto rk = refined_knots(grid, m);
    const int n = grid.N();
    // Anchor identity in closed form for both parities.
    for (int j = 1; j <= n - 1; ++j) {
      const int idx = (m % 2 == 0) ? m + (j - 1) * (m / 2) : m + (j - 1) * ((m + 1) / 2) - j / 2;
      EXPECT_EQ(rk.anchor[j], idx);
      EXPECT_EQ(rk.t[idx], y[j]);
    }
    const int e = rk.right_end();
    EXPECT_EQ(rk.t[e], y.back());
    // Stacked ends with multiplicity exactly m.
    EXPECT_EQ(rk.t.first_index(), -m + 1);
    EXPECT_EQ(rk.t.last_index(), e + m - 1);
    for (int i = -m + 1; i <= 0; ++i) EXPECT_EQ(rk.t[i], y.front());
    EXPECT_GT(rk.t[1], y.front());
    for (int i = e; i <= e + m - 1; ++i) EXPECT_EQ(rk.t[i], y.back());
    EXPECT_LT(rk.t[e - 1], y.back());
    // Strictly increasing between the stacks; equal spacing inside each sample interval.
    for (int i = 1; i <= e; ++i) EXPECT_LT(rk.t[i - 1], rk.t[i]);
    for (int j = 0; j < n; ++j) {
      const int lo = j == 0 ? 0 : rk.anchor[j];
      const int hi = j == n - 1 ? e : rk.anchor[j + 1];
      const double len = y[j + 1] - y[j];
      const double gap = (rk.t[hi] - rk.t[lo]) / (hi - lo);
      for (int i = lo + 1; i <= hi; ++i) EXPECT_NEAR(rk.t[i] - rk.t[i - 1], gap, 1e-12 * len);
      const int inserted = hi - lo - 1;
      const int want = (j == 0 || j == n - 1) ? m - 1 : interior_insertions(m, j);
      EXPECT_EQ(inserted, want);
    }
  }
}

TEST_P(RefinedKnotsProperty, BoundarySubsetsHaveMPlusOneKnots) {
  const int m = GetParam();
  std::mt19937_64 rng(90 + m);
  const SamplingGrid<double> grid(random_grid(rng, 3 * m));
  const auto rk = refined_knots(grid, m);
  const auto subsets = boundary_knot_subsets(rk);
  ASSERT_EQ(subsets.size(), static_cast<std::size_t>(2 * m + 2));
  for (const auto& s : subsets) {
    ASSERT_EQ(s.knots.size(), static_cast<std::size_t>(m + 1)) << "label " << s.label;
    EXPECT_TRUE(std::is_sorted(s.knots.begin(), s.knots.end())) << "label " << s.label;
    EXPECT_LT(s.knots.front(), s.knots.back());
  }
  for (int k = 0; k < m; ++k) {
    const auto l = left_subset(rk, k);
    EXPECT_EQ(l.front(), grid.a());
    EXPECT_EQ(std::count(l.begin(), l.end(), grid.a()), k + 1);
    EXPECT_EQ(l.back(), rk.t[m]);
    const auto r = right_subset(rk, k);
    EXPECT_EQ(r.back(), grid.b());
    EXPECT_EQ(std::count(r.begin(), r.end(), grid.b()), k + 1);
    EXPECT_EQ(r.front(), rk.t[rk.right_end() - m]);
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, RefinedKnotsProperty, ::testing::Values(3, 4, 5, 6, 7));

TEST(BoundarySubsets, SpreadRuleKeepsEndpoints) {
  EXPECT_EQ(spread_indices(3, 0), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(spread_indices(3, 1), (std::vector<int>{0, 2, 3}));
  EXPECT_EQ(spread_indices(3, 2), (std::vector<int>{0, 3}));
  EXPECT_EQ(spread_indices(4, 1), (std::vector<int>{0, 1, 3, 4}));
  EXPECT_EQ(spread_indices(5, 2), (std::vector<int>{0, 2, 3, 5}));
}

TEST(BoundarySubsets, OrderThreeExample) {
  // t_{-2}: two extra copies of a, then t_0 and t_3.
  const auto rk = refined_knots(SamplingGrid<double>({0, 1, 2, 3, 4}), 3);
  EXPECT_EQ(left_subset(rk, 2), (std::vector<double>{0, 0, 0, 1}));
  EXPECT_EQ(left_subset(rk, 0), (std::vector<double>{0, rk.t[1], rk.t[2], 1}));
  EXPECT_EQ(right_subset(rk, 0), (std::vector<double>{3, rk.t[7], rk.t[8], 4}));
  EXPECT_EQ(right_subset(rk, 2), (std::vector<double>{3, 4, 4, 4}));
}

TEST(BoundarySubsets, InteriorSequencesNextToEnds) {
  const auto even = refined_knots(SamplingGrid<double>({0, 1, 2, 3, 4, 5}), 4);
  // t_1 = {t_{m-q}, ..., t_{m+q}} and t_{N-1} = {t_{m+(N-3)q}, ..., t_{m+(N-1)q}}.
  EXPECT_EQ(interior_subset(even, 1), (std::vector<double>{even.t[2], even.t[3], 1, even.t[5], 2}));
  EXPECT_EQ(interior_subset(even, 4).front(), even.t[4 + 2 * 2]);
  EXPECT_EQ(interior_subset(even, 4).back(), even.t[4 + 4 * 2]);
  const auto odd = refined_knots(SamplingGrid<double>({0, 1, 2, 3, 4, 5}), 3);
  // t_1 = {t_{m-r}, ..., t_{m+r-1}} with r = 2.
  EXPECT_EQ(interior_subset(odd, 1), (std::vector<double>{odd.t[1], odd.t[2], odd.t[3], odd.t[4]}));
}
