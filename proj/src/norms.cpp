#include "numsmooth/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "numsmooth/quadrature.hpp"

namespace numsmooth {

namespace {

template <class F>
double gauss_integral(const F& fn, double lo, double hi, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int q = 0; q < n; ++q) sum += rule.weights[q] * fn(mid + half * rule.nodes[q]);
  return half * sum;
}

double find_root(const ScalarFunction& g, double lo, double hi, double glo, double ghi) {
  std::uintmax_t max_iter = 200;
  const auto tol = boost::math::tools::eps_tolerance<double>(52);
  const auto [r0, r1] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, max_iter);
  return 0.5 * (r0 + r1);
}

}  // namespace

double integrate_sq(const ScalarFunction& g, double lo, double hi, int gauss_points) {
  return gauss_integral(
      [&](double x) {
        const double v = g(x);
        return v * v;
      },
      lo, hi, gauss_points);
}

std::vector<double> sign_change_breaks(const ScalarFunction& g, double lo, double hi, int samples) {
  const std::vector<double> xs = chebyshev_lobatto_points(samples, lo, hi);
  std::vector<double> vs(xs.size());
  std::transform(xs.begin(), xs.end(), vs.begin(), g);

  std::vector<double> breaks{lo};
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    if (vs[j] == 0.0) {
      if (j > 0) breaks.push_back(xs[j]);
      continue;
    }
    if (vs[j] * vs[j + 1] < 0.0) breaks.push_back(find_root(g, xs[j], xs[j + 1], vs[j], vs[j + 1]));
  }
  breaks.push_back(hi);
  return breaks;
}

double integrate_abs(const ScalarFunction& g, double lo, double hi, int gauss_points, int samples) {
  const std::vector<double> breaks = sign_change_breaks(g, lo, hi, samples);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    if (breaks[j + 1] <= breaks[j]) continue;
    total += std::abs(gauss_integral(g, breaks[j], breaks[j + 1], gauss_points));
  }
  return total;
}

double sup_abs(const ScalarFunction& g, double lo, double hi, int samples) {
  const std::vector<double> xs = chebyshev_lobatto_points(samples, lo, hi);
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double v = std::abs(g(xs[j]));
    if (v > best) {
      best = v;
      arg = j;
    }
  }
  const double left = xs[arg == 0 ? 0 : arg - 1];
  const double right = xs[std::min(arg + 1, xs.size() - 1)];
  if (right > left) {
    std::uintmax_t max_iter = 200;
    const auto [x, negv] = boost::math::tools::brent_find_minima(
        [&](double t) { return -std::abs(g(t)); }, left, right, 52, max_iter);
    (void)x;
    best = std::max(best, -negv);
  }
  return best;
}

NormAccumulator::NormAccumulator(NormKind kind, int degree) noexcept : kind_(kind), degree_(degree) {}

void NormAccumulator::add(const ScalarFunction& g, double lo, double hi) {
  switch (kind_) {
    case NormKind::L1:
      acc_ += integrate_abs(g, lo, hi, quadrature_points(degree_), sup_samples(degree_));
      break;
    case NormKind::L2:
      acc_ += integrate_sq(g, lo, hi, quadrature_points(degree_));
      break;
    case NormKind::Linf:
      acc_ = std::max(acc_, sup_abs(g, lo, hi, sup_samples(degree_)));
      break;
  }
}

double NormAccumulator::result() const noexcept {
  return kind_ == NormKind::L2 ? std::sqrt(acc_) : acc_;
}

}  // namespace numsmooth
