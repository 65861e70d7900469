#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace blendspline;
using testsupport::exact_data;
using testsupport::monomial;
using testsupport::probes;
using testsupport::random_grid;

namespace {

std::vector<double> mirrored(const std::vector<double>& y) {
  std::vector<double> out;
  for (auto it = y.rbegin(); it != y.rend(); ++it) out.push_back(1.0 - *it);
  out.front() = 0.0;
  return out;
}

}  // namespace

TEST(QuasiWeights, UniformGridValues) {
  // Interior weights on a uniform grid, computed in exact rational arithmetic.
  const std::vector<std::vector<double>> want{
      {-1.0 / 8, 5.0 / 4, -1.0 / 8},
      {-7.0 / 48, 31.0 / 48, 31.0 / 48, -7.0 / 48},
      {47.0 / 1152, -107.0 / 288, 319.0 / 192, -107.0 / 288, 47.0 / 1152}};
  for (int m = 3; m <= 5; ++m) {
    const QuasiOperator<double> q(SamplingGrid<double>(testsupport::uniform_grid(0, 12, 12)), m);
    for (int j = 0; j < m; ++j) {
      EXPECT_NEAR(q.coefficient(6, j), want[m - 3][static_cast<std::size_t>(m - 1 - j)], 1e-13) << m << "," << j;
      EXPECT_EQ(q.case_of(6, j), QuasiCase::interior);
    }
  }
}

class QuasiProperty : public ::testing::TestWithParam<int> {};

TEST_P(QuasiProperty, CaseTableIsComplete) {
  const int m = GetParam();
  std::mt19937_64 rng(100 + m);
  const int n = 3 * m;
  const QuasiOperator<double> q(SamplingGrid<double>(random_grid(rng, n)), m);
  const auto all = q.all_coefficients();
  EXPECT_EQ(static_cast<int>(all.size()), (n + 1) * m + m * (m - 1));
  std::set<QuasiCase> seen;
  std::set<std::pair<int, int>> keys;
  for (const auto& w : all) {
    seen.insert(w.label);
    EXPECT_TRUE(keys.insert({w.molecule, w.j}).second) << "duplicate (" << w.molecule << "," << w.j << ")";
    const auto cs = itemized_cases(m, n, w.molecule, w.j);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0], w.label);
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_EQ(q.molecule_count(), n + 2 * m - 1);
  EXPECT_STREQ(to_string(QuasiCase::left_derivative), "left-derivative");
}

TEST_P(QuasiProperty, CoefficientsWithinBound) {
  const int m = GetParam();
  std::mt19937_64 rng(110 + m);
  for (int trial = 0; trial < 10; ++trial) {
    const SamplingGrid<double> grid(random_grid(rng, 3 * m + trial));
    const QuasiOperator<double> q(grid, m);
    const auto st = mesh_stats(grid, q.knots(), refined_knots(grid, m), m);
    const double bound = molecule_bound(st, m);
    for (const auto& w : q.all_coefficients()) {
      if (w.ref.kind == DataRef::Kind::value) {
        EXPECT_LE(std::abs(w.value), bound);
      }
    }
  }
}

TEST_P(QuasiProperty, MirrorSymmetry) {
  const int m = GetParam();
  std::mt19937_64 rng(120 + m);
  const auto y = random_grid(rng, 3 * m + 2);
  const int n = static_cast<int>(y.size()) - 1;
  const QuasiOperator<double> q(SamplingGrid<double>(y), m);
  const QuasiOperator<double> r(SamplingGrid<double>(mirrored(y)), m);
  for (const auto& w : q.all_coefficients()) {
    double want = w.value;
    int mol = n - w.molecule;
    if (w.ref.kind != DataRef::Kind::value) {
      const int l = w.ref.index;
      mol = w.ref.kind == DataRef::Kind::deriv_a ? n + l : -l;
      if (l % 2 == 1) want = -want;
    }
    const double got = r.coefficient(mol, m - 1 - w.j);
    EXPECT_NEAR(got, want, 1e-9 * std::max(1.0, std::abs(want))) << w.molecule << "," << w.j;
  }
}

TEST_P(QuasiProperty, ReproducesPolynomials) {
  const int m = GetParam();
  std::mt19937_64 rng(130 + m);
  const auto y = random_grid(rng, 3 * m + 4);
  const QuasiOperator<double> q(SamplingGrid<double>(y), m);
  for (int deg = 0; deg < m; ++deg) {
    const auto f = monomial(deg);
    const auto s = q.apply(exact_data(y, f, m));
    for (double x : probes(0, 1, 97)) EXPECT_NEAR(s.eval(x), f(x), 1e-12) << "deg " << deg;
  }
}

TEST_P(QuasiProperty, ValueMoleculesSumToOne) {
  const int m = GetParam();
  std::mt19937_64 rng(140 + m);
  const SamplingGrid<double> grid(random_grid(rng, 3 * m));
  const QuasiOperator<double> q(grid, m);
  for (double x : probes(0, 1, 53)) {
    double s = 0;
    for (int i = 0; i <= grid.N(); ++i) s += q.molecule(i).eval(x);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST_P(QuasiProperty, LinearInData) {
  const int m = GetParam();
  std::mt19937_64 rng(150 + m);
  const auto y = random_grid(rng, 3 * m + 1);
  const QuasiOperator<double> q(SamplingGrid<double>(y), m);
  const auto d1 = exact_data(y, testsupport::sine(2.0), m);
  const auto d2 = exact_data(y, testsupport::sine(5.0, 1.0), m);
  auto sum = d1;
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = 2 * d1.values[i] - 3 * d2.values[i];
  for (std::size_t l = 0; l < sum.derivs_a.size(); ++l) {
    sum.derivs_a[l] = 2 * d1.derivs_a[l] - 3 * d2.derivs_a[l];
    sum.derivs_b[l] = 2 * d1.derivs_b[l] - 3 * d2.derivs_b[l];
  }
  const auto s1 = q.apply(d1), s2 = q.apply(d2), s = q.apply(sum);
  for (double x : probes(0, 1, 41)) EXPECT_NEAR(s.eval(x), 2 * s1.eval(x) - 3 * s2.eval(x), 1e-12);

  HermiteData<double> zero{std::vector<double>(y.size(), 0.0), std::vector<double>(m - 1, 0.0),
                           std::vector<double>(m - 1, 0.0)};
  const auto zs = q.apply(zero);
  for (double c : zs.coefficients()) EXPECT_EQ(c, 0.0);
}

TEST_P(QuasiProperty, MoleculeSupports) {
  const int m = GetParam();
  std::mt19937_64 rng(160 + m);
  const SamplingGrid<double> grid(random_grid(rng, 3 * m + 3));
  const QuasiOperator<double> q(grid, m);
  const auto& x = q.knots();
  const int n = grid.N();
  for (int i = 0; i <= n; ++i) {
    const auto [lo, hi] = q.molecule(i).support();
    EXPECT_GE(lo, x[std::max(i - m + 1, -m + 1)]);
    EXPECT_LE(hi, x[std::min(i + m, n + m)]);
  }
  // Derivative molecules live on the first and last m-1 basis functions.
  for (int l = 1; l < m; ++l) {
    EXPECT_LE(q.molecule(-l).support().second, x[m - l]);
    EXPECT_GE(q.molecule(n + l).support().first, x[n + l - m + 1]);
  }
}

TEST_P(QuasiProperty, MoleculeDerivativesWithinBound) {
  const int m = GetParam();
  std::mt19937_64 rng(170 + m);
  const SamplingGrid<double> grid(random_grid(rng, 3 * m + 2));
  const QuasiOperator<double> q(grid, m);
  const auto st = mesh_stats(grid, q.knots(), refined_knots(grid, m), m);
  const double vb = molecule_bound(st, m), db = molecule_derivative_bound(st, m);
  for (int i = 0; i <= grid.N(); ++i) {
    const auto mol = q.molecule(i);
    for (double x : probes(0, 1, 211)) {
      EXPECT_LE(std::abs(mol.eval(x)), vb);
      EXPECT_LE(std::abs(mol.eval_deriv(m - 1, x)), db);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, QuasiProperty, ::testing::Values(3, 4, 5, 6));

TEST(QuasiOperator, RejectsSmallGrid) {
  for (int m = 3; m <= 5; ++m) {
    try {
      QuasiOperator<double> q(SamplingGrid<double>(testsupport::uniform_grid(0, 1, 3 * m - 4)), m);
      FAIL() << "expected an exception";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::grid_too_small);
      EXPECT_NE(std::string(e.what()).find("requires N >= 3m-3"), std::string::npos);
    }
    EXPECT_NO_THROW(QuasiOperator<double>(SamplingGrid<double>(testsupport::uniform_grid(0, 1, 3 * m - 3)), m));
  }
}

TEST(QuasiOperator, ApplyChecksDataShape) {
  const auto y = testsupport::uniform_grid(0, 1, 6);
  const QuasiOperator<double> q(SamplingGrid<double>(y), 3);
  auto d = exact_data(y, monomial(2), 3);
  d.values.pop_back();
  EXPECT_THROW(q.apply(d), Error);
  EXPECT_THROW(q.coefficient(-3, 0), Error);
  EXPECT_THROW(q.coefficient(2, 7), Error);
}
