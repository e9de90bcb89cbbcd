#include "numsmooth/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "numsmooth/errors.hpp"

namespace numsmooth {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Roots are symmetric; solve for the positive half and mirror.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::array<GaussRule, kMaxGaussPoints> rules = [] {
    std::array<GaussRule, kMaxGaussPoints> r;
    for (int k = 1; k <= kMaxGaussPoints; ++k) r[k - 1] = build_rule(k);
    return r;
  }();
  if (n < 1 || n > kMaxGaussPoints) {
    throw ArgumentError("gauss_legendre: point count " + std::to_string(n) + " outside 1.." +
                        std::to_string(kMaxGaussPoints));
  }
  return rules[n - 1];
}

void legendre_values(double s, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = s;
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k] = ((2.0 * kk - 1.0) * s * out[k - 1] - (kk - 1.0) * out[k - 2]) / kk;
  }
}

std::vector<double> legendre_monomial_coefficients(int n) {
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 1.0};
  for (int k = 2; k <= n; ++k) {
    std::vector<double> next(k + 1, 0.0);
    for (int j = 0; j < k; ++j) next[j + 1] += (2.0 * k - 1.0) * cur[j] / k;
    for (int j = 0; j < k - 1; ++j) next[j] -= (k - 1.0) * prev[j] / k;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> chebyshev_points(int count, double lo, double hi) {
  std::vector<double> pts(count);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < count; ++j) {
    const double t = -std::cos(std::numbers::pi * (2.0 * j + 1.0) / (2.0 * count));
    pts[j] = mid + half * t;
  }
  return pts;
}

std::vector<double> chebyshev_lobatto_points(int count, double lo, double hi) {
  if (count < 2) throw ArgumentError("chebyshev_lobatto_points: need at least 2 points");
  std::vector<double> pts(count);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < count; ++j) {
    pts[j] = mid - half * std::cos(std::numbers::pi * j / (count - 1));
  }
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

}  // namespace numsmooth
