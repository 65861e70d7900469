#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blendspline/data.hpp"
#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"
#include "blendspline/molecule.hpp"
#include "blendspline/spline.hpp"
#include "blendspline/symfun.hpp"
#include "blendspline/vandermonde.hpp"

namespace blendspline {

/// Which datum a weight multiplies: f(y_index), f^{(index)}(a) or f^{(index)}(b).
struct DataRef {
  enum class Kind { value, deriv_a, deriv_b };
  Kind kind;
  int index;
};

/// The five coefficient formulas of the quasi-interpolant.
enum class QuasiCase { interior, left_confluent, left_derivative, right_confluent, right_derivative };

inline const char* to_string(QuasiCase c) {
  switch (c) {
    case QuasiCase::interior: return "interior";
    case QuasiCase::left_confluent: return "left-confluent";
    case QuasiCase::left_derivative: return "left-derivative";
    case QuasiCase::right_confluent: return "right-confluent";
    case QuasiCase::right_derivative: return "right-derivative";
  }
  return "unknown";
}

/// Cases whose itemized index ranges contain (molecule, j). Molecules are
/// labelled -(m-1)..-1 (derivatives at a), 0..N (values), N+1..N+m-1
/// (derivatives at b). A well-formed pair matches exactly one case.
inline std::vector<QuasiCase> itemized_cases(int m, int N, int mol, int j) {
  std::vector<QuasiCase> out;
  if (mol >= 0 && mol <= N) {
    const int i = mol;
    const bool interior = (i <= m - 2 && j >= m - 1 - i && j <= m - 1) ||
                          (i >= m - 1 && i <= N + 1 - m && j >= 0 && j <= m - 1) ||
                          (i >= N - m + 2 && j >= 0 && j <= N - i);
    if (interior) out.push_back(QuasiCase::interior);
    if (i <= m - 2 && j >= 0 && j <= m - 2 - i) out.push_back(QuasiCase::left_confluent);
    if (i >= N - m + 2 && j >= N - i + 1 && j <= m - 1) out.push_back(QuasiCase::right_confluent);
  } else if (mol < 0 && mol >= -(m - 1)) {
    if (j >= 0 && j <= m - 1 + mol) out.push_back(QuasiCase::left_derivative);
  } else if (mol > N && mol <= N + m - 1) {
    if (j >= mol - N && j <= m - 1) out.push_back(QuasiCase::right_derivative);
  }
  return out;
}

/// Quasi-interpolation operator on the midpoint knots. Each B-spline
/// coefficient of Q f is a fixed weighted sum of nearby data; the weights are
/// determinant ratios (Cramer's rule on a confluent Vandermonde system whose
/// right-hand side is the Marsden column of that B-spline).
template <std::floating_point Real>
class QuasiOperator {
 public:
  struct Weight {
    DataRef ref;
    Real value;
    QuasiCase label;
    int molecule;
    int j;
  };

  QuasiOperator(const SamplingGrid<Real>& grid, int m) : grid_(grid), m_(m) {
    require_order(m);
    const int n = grid.N();
    if (n < 3 * m - 3) {
      throw Error(Errc::grid_too_small, "quasi-interpolation requires N >= 3m-3 (got N = " +
                                            std::to_string(n) + ", m = " + std::to_string(m) + ")");
    }
    x_ = midpoint_knots(grid, m);
    weights_.resize(static_cast<std::size_t>(n + m));
    for (int k = -m + 1; k <= n; ++k) build_basis(k);
    verify_cases();
  }

  int order() const { return m_; }
  int N() const { return grid_.N(); }
  const SamplingGrid<Real>& grid() const { return grid_; }
  const KnotVector<Real>& knots() const { return x_; }
  int molecule_count() const { return N() + 2 * m_ - 1; }

  /// Weights defining the coefficient of B-spline k, k = -m+1..N.
  std::span<const Weight> weights(int k) const {
    if (k < -m_ + 1 || k > N()) throw Error(Errc::index_out_of_range, "B-spline index out of range");
    return weights_[static_cast<std::size_t>(k + m_ - 1)];
  }

  /// a_{m,mol,j}.
  Real coefficient(int mol, int j) const { return find(mol, j).value; }
  QuasiCase case_of(int mol, int j) const { return find(mol, j).label; }

  /// All (molecule, j) entries in ascending B-spline order.
  std::vector<Weight> all_coefficients() const {
    std::vector<Weight> out;
    for (const auto& w : weights_) out.insert(out.end(), w.begin(), w.end());
    return out;
  }

  SplineMolecule<Real> molecule(int mol) const {
    check_molecule(mol);
    std::vector<MoleculeTerm<Real>> terms;
    for (int k = -m_ + 1; k <= N(); ++k) {
      for (const auto& w : weights(k)) {
        if (w.molecule != mol) continue;
        const auto sp = x_.span_of(k);
        terms.push_back({w.value, k, std::vector<Real>(sp.begin(), sp.end())});
      }
    }
    return SplineMolecule<Real>(mol, std::move(terms), grid_.b());
  }

  /// Q f as a spline on the midpoint knots.
  SplineFunction<Real> apply(const HermiteData<Real>& data) const {
    data.check(N() + 1, m_);
    std::vector<Real> c;
    c.reserve(weights_.size());
    for (const auto& ws : weights_) {
      Real s = 0;
      for (const auto& w : ws) s += w.value * datum(data, w.ref);
      c.push_back(s);
    }
    return SplineFunction<Real>(x_, std::move(c));
  }

  /// (Q f)(y_i) for all i and (Q f)^{(l)} at a and b, l = 1..m-1.
  HermiteData<Real> sample(const SplineFunction<Real>& qf) const {
    HermiteData<Real> out;
    for (int i = 0; i <= N(); ++i) out.values.push_back(qf.eval(grid_[i]));
    for (int l = 1; l < m_; ++l) {
      out.derivs_a.push_back(qf.eval_deriv(l, grid_.a()));
      out.derivs_b.push_back(qf.eval_deriv(l, grid_.b()));
    }
    return out;
  }

  /// Data minus the corresponding quantities of Q f.
  HermiteData<Real> residual(const HermiteData<Real>& data, const SplineFunction<Real>& qf) const {
    HermiteData<Real> q = sample(qf);
    for (std::size_t i = 0; i < q.values.size(); ++i) q.values[i] = data.values[i] - q.values[i];
    for (std::size_t l = 0; l < q.derivs_a.size(); ++l) {
      q.derivs_a[l] = data.derivs_a[l] - q.derivs_a[l];
      q.derivs_b[l] = data.derivs_b[l] - q.derivs_b[l];
    }
    q.provenance = data.provenance;
    return q;
  }

 private:
  static Real datum(const HermiteData<Real>& d, const DataRef& r) {
    switch (r.kind) {
      case DataRef::Kind::value: return d.values[static_cast<std::size_t>(r.index)];
      case DataRef::Kind::deriv_a: return d.deriv_a(r.index);
      case DataRef::Kind::deriv_b: return d.deriv_b(r.index);
    }
    return Real(0);
  }

  void check_molecule(int mol) const {
    if (mol < -m_ + 1 || mol > N() + m_ - 1) {
      throw Error(Errc::index_out_of_range, "molecule index " + std::to_string(mol) + " out of range");
    }
  }

  const Weight& find(int mol, int j) const {
    check_molecule(mol);
    for (const auto& ws : weights_)
      for (const auto& w : ws)
        if (w.molecule == mol && w.j == j) return w;
    throw Error(Errc::index_out_of_range,
                "no coefficient (" + std::to_string(mol) + ", " + std::to_string(j) + ")");
  }

  // Nodes y_k..y_{k+m-1} with the virtual samples beyond either end folded
  // into the end node as extra derivative columns. Nodes and Marsden knots are
  // mapped affinely to O(1) values first; value weights are invariant under
  // that map and a derivative weight of order l picks up a factor h^l.
  void build_basis(int k) {
    const int m = m_;
    const int n = N();
    const int lo = std::max(k, 0);
    const int hi = std::min(k + m - 1, n);
    const Real origin = grid_[lo];
    Real h = std::max(grid_[hi] - grid_[lo], x_[k + m - 1] - x_[k + 1]);
    if (!(h > Real(0))) h = 1;

    NodeSpec<Real> layout;
    std::vector<DataRef> refs;
    for (int i = lo; i <= hi; ++i) {
      int conf = 0;
      DataRef::Kind dk = DataRef::Kind::deriv_a;
      if (i == 0 && k < 0) conf = -k;
      if (i == n && k + m - 1 > n) {
        conf = k + m - 1 - n;
        dk = DataRef::Kind::deriv_b;
      }
      layout.nodes.push_back({(grid_[i] - origin) / h, conf});
      refs.push_back({DataRef::Kind::value, i});
      for (int l = 1; l <= conf; ++l) refs.push_back({dk, l});
    }
    if (layout.dimension() != m) throw Error(Errc::length_mismatch, "internal: node count differs from m");

    std::vector<Real> inner;
    for (int p = k + 1; p <= k + m - 1; ++p) inner.push_back((x_[p] - origin) / h);
    const auto xi = xi_from_knots<Real>(inner, k).entries;

    const Real den = confluent_det(layout);
    if (den == Real(0) || !std::isfinite(den)) {
      throw Error(Errc::singular_denominator, "singular Vandermonde denominator (coincident sampling points)");
    }
    auto& out = weights_[static_cast<std::size_t>(k + m - 1)];
    for (int p = 0; p < m; ++p) {
      NodeSpec<Real> num = layout;
      num.replaced = std::make_pair(p, xi);
      Real w = replaced_det(num) / den;
      const DataRef r = refs[p];
      if (r.kind != DataRef::Kind::value) w *= std::pow(h, Real(r.index));

      Weight wt{r, w, QuasiCase::interior, 0, 0};
      switch (r.kind) {
        case DataRef::Kind::value:
          wt.molecule = r.index;
          wt.j = k - r.index + m - 1;
          if (k < 0) wt.label = QuasiCase::left_confluent;
          if (k + m - 1 > n) wt.label = QuasiCase::right_confluent;
          break;
        case DataRef::Kind::deriv_a:
          wt.molecule = -r.index;
          wt.j = k + m - 1;
          wt.label = QuasiCase::left_derivative;
          break;
        case DataRef::Kind::deriv_b:
          wt.molecule = n + r.index;
          wt.j = k - n + m - 1;
          wt.label = QuasiCase::right_derivative;
          break;
      }
      out.push_back(wt);
    }
  }

  // Every computed entry must fall in exactly one itemized range, agreeing
  // with the formula used, and every itemized entry must have been computed.
  void verify_cases() const {
    const int m = m_;
    const int n = N();
    int count = 0;
    for (const auto& ws : weights_) {
      for (const auto& w : ws) {
        const auto cs = itemized_cases(m, n, w.molecule, w.j);
        if (cs.size() != 1 || cs[0] != w.label) {
          throw Error(Errc::index_out_of_range, "internal: coefficient (" + std::to_string(w.molecule) + ", " +
                                                    std::to_string(w.j) + ") has an inconsistent case");
        }
        ++count;
      }
    }
    // Value molecules carry m entries each; derivative molecules of order l carry m-l.
    const int expected = (n + 1) * m + 2 * (m * (m - 1) / 2);
    if (count != expected) throw Error(Errc::length_mismatch, "internal: coefficient table incomplete");
  }

  SamplingGrid<Real> grid_;
  int m_;
  KnotVector<Real> x_;
  std::vector<std::vector<Weight>> weights_;
};

}  // namespace blendspline
