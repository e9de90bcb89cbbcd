#include "doctest.h"

#include <cmath>
#include <random>

#include "numsmooth/errors.hpp"
#include "numsmooth/generators.hpp"
#include "numsmooth/qform.hpp"
#include "numsmooth/smoothness.hpp"
#include "test_support.hpp"

using namespace numsmooth;
using namespace numsmooth::testing;

namespace {

// cell 0: u = x, cell 1: u = 2x - 1 on [0, 2]
PiecewisePolynomial two_cells() { return {UniformPartition(0.0, 2.0, 2), 1, {0.5, 1.0, 2.0, 2.0}}; }

IndicatorSet single_node(int p, double h, std::vector<double> d) {
  // N = 2, one interior node; choose L = 0 so that J = M(1, .).
  std::vector<double> M(2 * (p + 1), 0.0);
  for (int k = 0; k <= p; ++k) M[(p + 1) + k] = d[k] * std::pow(h, p + 1 - k);
  return {p, 2, h, M, std::vector<double>(p + 1, 0.0)};
}

}  // namespace

TEST_CASE("two-cell hand example") {
  const IndicatorSet ind = compute_indicators(two_cells());
  REQUIRE(ind.interior_nodes() == 1);
  CHECK(ind.J(0, 0) == doctest::Approx(0.0));
  CHECK(ind.J(0, 1) == 1.0);
  CHECK(ind.D(0, 0) == doctest::Approx(0.0));
  CHECK(ind.D(0, 1) == 1.0);
  CHECK(ind.M(0, 0) == doctest::Approx(0.0));
  CHECK(ind.M(1, 1) == 2.0);
  CHECK(ind.L(0, 1) == 1.0);
  const InfinityNorms inf = norm_infinity(ind);
  CHECK(inf.max_D == doctest::Approx(1.0));
  CHECK(inf.max_M == doctest::Approx(2.0));
}

TEST_CASE("halving h with the same jump doubles D1 for p = 1") {
  const PiecewisePolynomial wide(UniformPartition(0.0, 2.0, 2), 1, {0.0, 0.0, 0.0, 1.0});
  const PiecewisePolynomial narrow(UniformPartition(0.0, 1.0, 2), 1, {0.0, 0.0, 0.0, 1.0});
  CHECK(compute_indicators(narrow).D(0, 1) == doctest::Approx(2.0 * compute_indicators(wide).D(0, 1)));
}

TEST_CASE("jumps are reconstructible from M and L") {
  std::mt19937_64 gen(12);
  for (int p = 0; p <= 8; ++p) {
    const PiecewisePolynomial u = random_piecewise(gen, p, 9);
    const IndicatorSet ind = compute_indicators(u);
    const double h = u.partition().h();
    for (int j = 0; j < ind.interior_nodes(); ++j) {
      for (int k = 0; k <= p; ++k) {
        CHECK(ind.J(j, k) == ind.M(j + 1, k) - ind.L(j, k));
        CHECK(rel_diff(ind.D(j, k) * std::pow(h, p + 1 - k), ind.J(j, k), 1e-300) <= 1e-13);
      }
    }
  }
}

TEST_CASE("global polynomials have vanishing jumps") {
  std::mt19937_64 gen(13);
  for (int p = 0; p <= 6; ++p) {
    const UniformPartition part(0.0, 1.0, 10);
    const PiecewisePolynomial u = global_polynomial(random_vector(gen, p + 1), part, p);
    const IndicatorSet ind = compute_indicators(u);
    for (int j = 0; j < ind.interior_nodes(); ++j) {
      for (int k = 0; k <= p; ++k) CHECK(std::abs(ind.J(j, k)) <= 1e-12);
    }
  }
}

TEST_CASE("norm examples") {
  const IndicatorSet zero = compute_indicators(PiecewisePolynomial::zero(UniformPartition(0.0, 1.0, 4), 2));
  CHECK(norm_h(zero) == 0.0);
  CHECK(norm_l1(zero) == 0.0);
  CHECK(norm_infinity(zero).max_D == 0.0);
  CHECK(norm_infinity(zero).max_M == 0.0);
  const QAggregates z = q_aggregates(zero, assemble_qform(2));
  CHECK(z.sum_hQ == 0.0);
  CHECK(z.sum_h_sqrtQ == 0.0);
  CHECK(z.max_sqrtQ == 0.0);

  const IndicatorSet one = single_node(2, 0.25, {1.0, 0.0, 0.0});
  CHECK(norm_h(one) == doctest::Approx(0.5));
  CHECK(norm_l1(one) == doctest::Approx(0.25));

  const IndicatorSet four = single_node(1, 0.5, {4.0, 0.0});
  const QAggregates agg = q_aggregates(four, assemble_qform(1));
  CHECK(agg.sum_hQ == doctest::Approx(0.5));
  CHECK(agg.max_sqrtQ == doctest::Approx(1.0));
  CHECK(agg.sum_h_sqrtQ == doctest::Approx(0.5));
  CHECK_THROWS_AS(q_aggregates(four, assemble_qform(2)), ArgumentError);
}

TEST_CASE("aggregate consistency bounds") {
  std::mt19937_64 gen(14);
  for (int p = 0; p <= 4; ++p) {
    const QForm q = assemble_qform(p);
    for (int n : {3, 8, 20}) {
      const PiecewisePolynomial u = random_piecewise(gen, p, n);
      const IndicatorSet ind = compute_indicators(u);
      const double h = ind.h();
      const double md = norm_infinity(ind).max_D;
      const double nh = norm_h(ind);
      const double nl = norm_l1(ind);
      CHECK(nh * nh <= (n - 1) * h * (p + 1) * md * md * (1 + 1e-12));
      CHECK(nl <= std::sqrt((n - 1) * h * (p + 1)) * nh * (1 + 1e-12));
      const QAggregates agg = q_aggregates(ind, q);
      CHECK(agg.sum_h_sqrtQ <= std::sqrt((n - 1) * h) * std::sqrt(agg.sum_hQ) * (1 + 1e-12));
    }
  }
}

TEST_CASE("per-node eigenvalue sandwich") {
  std::mt19937_64 gen(15);
  for (int p = 0; p <= 6; ++p) {
    const QForm q = assemble_qform(p);
    const double lo = min_eigenvalue_lower_bound(q);
    const double hi = max_eigenvalue_upper_bound(q);
    const IndicatorSet ind = compute_indicators(random_piecewise(gen, p, 12));
    for (int j = 0; j < ind.interior_nodes(); ++j) {
      double n2 = 0.0;
      for (double v : ind.D_row(j)) n2 += v * v;
      const double e = eval_q(q, ind.D_row(j));
      CHECK(e >= lo * n2 * (1 - 1e-12));
      CHECK(e <= hi * n2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("adding a global polynomial leaves jumps unchanged") {
  std::mt19937_64 gen(16);
  for (int p = 0; p <= 4; ++p) {
    const PiecewisePolynomial u = random_piecewise(gen, p, 16);
    const PiecewisePolynomial g = global_polynomial(random_vector(gen, p + 1), u.partition(), p);
    std::vector<double> sum(u.coefficients().begin(), u.coefficients().end());
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += g.coefficients()[j];
    const PiecewisePolynomial v(u.partition(), p, sum);
    const IndicatorSet a = compute_indicators(u);
    const IndicatorSet b = compute_indicators(v);
    const double scale = norm_infinity(a).max_D;
    for (int j = 0; j < a.interior_nodes(); ++j) {
      for (int k = 0; k <= p; ++k) CHECK(std::abs(a.D(j, k) - b.D(j, k)) <= 1e-11 * scale);
    }
    const QForm q = assemble_qform(p);
    CHECK(rel_diff(q_aggregates(a, q).sum_hQ, q_aggregates(b, q).sum_hQ) <= 1e-11);
    CHECK(rel_diff(norm_h(a), norm_h(b)) <= 1e-11);
  }
}

TEST_CASE("scaling u scales indicators linearly and sum_hQ quadratically") {
  std::mt19937_64 gen(17);
  const double c = -2.5;
  for (int p = 0; p <= 4; ++p) {
    const PiecewisePolynomial u = random_piecewise(gen, p, 10);
    std::vector<double> scaled(u.coefficients().begin(), u.coefficients().end());
    for (double& v : scaled) v *= c;
    const IndicatorSet a = compute_indicators(u);
    const IndicatorSet b = compute_indicators(PiecewisePolynomial(u.partition(), p, scaled));
    for (int j = 0; j < a.interior_nodes(); ++j) {
      for (int k = 0; k <= p; ++k) {
        CHECK(rel_diff(b.D(j, k), c * a.D(j, k), 1e-300) <= 1e-13);
        CHECK(rel_diff(b.L(j, k), c * a.L(j, k), 1e-300) <= 1e-13);
      }
    }
    const QForm q = assemble_qform(p);
    CHECK(rel_diff(q_aggregates(b, q).sum_hQ, c * c * q_aggregates(a, q).sum_hQ) <= 1e-13);
  }
}

TEST_CASE("indicators of a smooth projection stay bounded under refinement") {
  const SmoothFunction f = catalog("sin");
  double previous = 0.0;
  for (int n : {16, 32, 64, 128}) {
    const double md = norm_infinity(compute_indicators(project_l2(f, UniformPartition(0.0, 1.0, n), 1))).max_D;
    if (previous > 0.0) CHECK(md / previous < 1.05);
    previous = md;
  }
}

TEST_CASE("indicator shapes are validated") {
  CHECK_THROWS_AS(IndicatorSet(1, 3, 0.1, std::vector<double>(6), std::vector<double>(2)), ArgumentError);
  const IndicatorSet ind = compute_indicators(two_cells());
  CHECK_THROWS_AS(ind.D_row(1), ArgumentError);
}
