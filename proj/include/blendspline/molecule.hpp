#pragma once

#include <algorithm>
#include <concepts>
#include <limits>
#include <utility>
#include <vector>

#include "blendspline/bspline.hpp"

namespace blendspline {

/// One term c * N(x) of a molecule, with N the B-spline on `knots` (m+1 values).
/// `basis` is the B-spline's index in its knot vector, or the subset label for
/// boundary sequences of the refined knots.
template <std::floating_point Real>
struct MoleculeTerm {
  Real coeff;
  int basis;
  std::vector<Real> knots;
};

/// A fixed linear combination of B-splines multiplying one data value.
template <std::floating_point Real>
class SplineMolecule {
 public:
  SplineMolecule() = default;
  SplineMolecule(int label, std::vector<MoleculeTerm<Real>> terms, Real domain_b)
      : label_(label), terms_(std::move(terms)), b_(domain_b) {}

  int label() const { return label_; }
  const std::vector<MoleculeTerm<Real>>& terms() const { return terms_; }

  Real eval(Real x) const { return eval_deriv(0, x); }

  Real eval_deriv(int n, Real x) const {
    Real s = 0;
    for (const auto& t : terms_) {
      const bool closed = (x == b_ && t.knots.back() == b_);
      s += t.coeff * bspline_derivative(t.knots, n, x, closed);
    }
    return s;
  }

  /// Smallest interval containing the supports of all terms.
  std::pair<Real, Real> support() const {
    Real lo = std::numeric_limits<Real>::infinity();
    Real hi = -lo;
    for (const auto& t : terms_) {
      lo = std::min(lo, t.knots.front());
      hi = std::max(hi, t.knots.back());
    }
    return {lo, hi};
  }

 private:
  int label_ = 0;
  std::vector<MoleculeTerm<Real>> terms_;
  Real b_ = 0;
};

}  // namespace blendspline
