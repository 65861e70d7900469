#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "blendspline/error.hpp"
#include "blendspline/symfun.hpp"

namespace blendspline {

/// A node of a (confluent) Vandermonde matrix. A node with confluency q
/// contributes its column [1, v, ..., v^{n-1}] followed by its first q
/// derivative columns.
template <std::floating_point Real>
struct Node {
  Real value;
  int confluency = 0;
};

template <std::floating_point Real>
struct NodeSpec {
  std::vector<Node<Real>> nodes;
  /// Optional (column position, replacement column).
  std::optional<std::pair<int, std::vector<Real>>> replaced;

  int dimension() const {
    int d = 0;
    for (const auto& n : nodes) d += 1 + n.confluency;
    return d;
  }
};

/// Dense row-major square matrix, just enough for determinants.
template <std::floating_point Real>
struct SquareMatrix {
  int n = 0;
  std::vector<Real> a;

  explicit SquareMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, Real(0)) {}
  Real& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  Real operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

/// Determinant by Gaussian elimination with partial pivoting, accumulated in
/// long double so that ratios of nearly singular confluent systems keep their
/// relative accuracy when Real is double.
template <std::floating_point Real>
Real determinant(const SquareMatrix<Real>& in) {
  using W = std::conditional_t<(sizeof(Real) < sizeof(long double)), long double, Real>;
  const int n = in.n;
  std::vector<W> m(in.a.begin(), in.a.end());
  auto at = [&](int r, int c) -> W& { return m[static_cast<std::size_t>(r) * n + c]; };
  W det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(at(r, c)) > std::abs(at(piv, c))) piv = r;
    }
    if (at(piv, c) == W(0)) return Real(0);
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(at(piv, k), at(c, k));
      det = -det;
    }
    det *= at(c, c);
    for (int r = c + 1; r < n; ++r) {
      const W f = at(r, c) / at(c, c);
      if (f == W(0)) continue;
      for (int k = c + 1; k < n; ++k) at(r, k) -= f * at(c, k);
    }
  }
  return static_cast<Real>(det);
}

/// Assemble the matrix column by column: for each node its Vandermonde column
/// and then derivative columns D^l [r^k]_{k} = k!/(k-l)! v^{k-l} (0 for k < l).
template <std::floating_point Real>
SquareMatrix<Real> assemble(const NodeSpec<Real>& layout) {
  const int n = layout.dimension();
  SquareMatrix<Real> mat(n);
  int col = 0;
  for (const auto& node : layout.nodes) {
    if (node.confluency < 0) throw Error(Errc::length_mismatch, "negative confluency");
    for (int l = 0; l <= node.confluency; ++l, ++col) {
      for (int k = l; k < n; ++k) {
        Real falling = 1;
        for (int s = 0; s < l; ++s) falling *= Real(k - s);
        mat(k, col) = falling * std::pow(node.value, Real(k - l));
      }
    }
  }
  if (layout.replaced) {
    const auto& [pos, column] = *layout.replaced;
    if (pos < 0 || pos >= n || static_cast<int>(column.size()) != n) {
      throw Error(Errc::length_mismatch, "replacement column does not match dimension " + std::to_string(n));
    }
    for (int k = 0; k < n; ++k) mat(k, pos) = column[k];
  }
  return mat;
}

/// prod_{k<l} (v_l - v_k).
template <std::floating_point Real>
Real vandermonde_det(std::span<const Real> values) {
  Real d = 1;
  for (std::size_t l = 0; l < values.size(); ++l)
    for (std::size_t k = 0; k < l; ++k) d *= values[l] - values[k];
  return d;
}

template <std::floating_point Real>
Real confluent_det(const NodeSpec<Real>& layout) {
  if (layout.replaced) throw Error(Errc::length_mismatch, "confluent_det expects no replaced column");
  return determinant(assemble(layout));
}

template <std::floating_point Real>
Real replaced_det(const NodeSpec<Real>& layout) {
  if (!layout.replaced) throw Error(Errc::length_mismatch, "replaced_det expects a replaced column");
  return determinant(assemble(layout));
}

/// replaced_det(numerator) / confluent_det(denominator).
template <std::floating_point Real>
Real coefficient_ratio(const NodeSpec<Real>& numerator, const NodeSpec<Real>& denominator) {
  const Real den = confluent_det(denominator);
  if (den == Real(0) || !std::isfinite(den)) {
    throw Error(Errc::singular_denominator,
                "singular Vandermonde denominator (coincident sampling points)");
  }
  return replaced_det(numerator) / den;
}

}  // namespace blendspline
