#pragma once

#include <functional>
#include <vector>

#include "numsmooth/piecewise_poly.hpp"

namespace numsmooth {

using ScalarFunction = std::function<double(double)>;

/// ∫_lo^hi g^2 with an n-point Gauss rule.
double integrate_sq(const ScalarFunction& g, double lo, double hi, int gauss_points);

/// lo, the roots of g found between adjacent sign-differing samples of a
/// Chebyshev-Lobatto grid (refined by bracketing root search), then hi.
std::vector<double> sign_change_breaks(const ScalarFunction& g, double lo, double hi, int samples);

/// ∫_lo^hi |g|. Sign changes are located on a Chebyshev-Lobatto sample grid
/// and refined by bracketing root search; each sign-constant piece is then
/// integrated with an n-point Gauss rule.
double integrate_abs(const ScalarFunction& g, double lo, double hi, int gauss_points, int samples);

/// sup |g| on [lo, hi]: best of `samples` Chebyshev-Lobatto points, refined
/// by a Brent search between the neighbours of the best sample.
double sup_abs(const ScalarFunction& g, double lo, double hi, int samples);

/// Accumulates per-interval contributions into a global L1, L2 or Linf norm.
class NormAccumulator {
 public:
  NormAccumulator(NormKind kind, int degree) noexcept;

  void add(const ScalarFunction& g, double lo, double hi);
  double result() const noexcept;

 private:
  NormKind kind_;
  int degree_;
  double acc_ = 0.0;
};

}  // namespace numsmooth
