#pragma once

#include <span>
#include <vector>

namespace numsmooth {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int kMaxGaussPoints = 64;

/// n-point Gauss-Legendre rule, 1 <= n <= kMaxGaussPoints. Nodes are the
/// Newton-refined roots of P_n (tolerance 1e-15), computed once per n.
const GaussRule& gauss_legendre(int n);

/// Fills out[0..n] with P_0(s)..P_n(s) by the three-term recurrence.
void legendre_values(double s, std::span<double> out);

/// Monomial coefficients of P_n: result[j] is the coefficient of s^j.
std::vector<double> legendre_monomial_coefficients(int n);

/// Chebyshev points of the first kind mapped to [lo, hi], ascending.
std::vector<double> chebyshev_points(int count, double lo, double hi);

/// Chebyshev extreme (Lobatto) points mapped to [lo, hi], ascending and
/// including both endpoints. count >= 2.
std::vector<double> chebyshev_lobatto_points(int count, double lo, double hi);

}  // namespace numsmooth
