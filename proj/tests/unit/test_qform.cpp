#include "doctest.h"

#include <cmath>
#include <random>

#include "numsmooth/errors.hpp"
#include "numsmooth/qform.hpp"
#include "test_support.hpp"

using namespace numsmooth;
using namespace numsmooth::testing;

TEST_CASE("closed-form matrices for p = 0, 1, 2") {
  const QForm q0 = assemble_qform(0);
  CHECK(q0.exact(0, 0) == mpq_class(1, 4));

  const QForm q1 = assemble_qform(1);
  CHECK(q1.exact(0, 0) == mpq_class(1, 16));
  CHECK(q1.exact(0, 1) == 0);
  CHECK(q1.exact(1, 0) == 0);
  CHECK(q1.exact(1, 1) == mpq_class(1, 192));

  const QForm q2 = assemble_qform(2);
  CHECK(q2.exact(0, 0) == mpq_class(1, 16));
  CHECK(q2.exact(0, 2) == mpq_class(-1, 768));
  CHECK(q2.exact(1, 1) == mpq_class(1, 3072));
  CHECK(q2.exact(2, 2) == mpq_class(1, 20480));
  CHECK(q2.exact(0, 1) == 0);
}

TEST_CASE("matrix is exactly symmetric with positive leading minors") {
  for (int p = 0; p <= kMaxDegree; ++p) {
    const QForm q = assemble_qform(p);
    for (int j = 0; j < q.size(); ++j) {
      for (int k = 0; k < q.size(); ++k) CHECK(q.exact(j, k) == q.exact(k, j));
    }
    const auto minors = leading_principal_minors(q);
    REQUIRE(minors.size() == static_cast<std::size_t>(q.size()));
    for (const auto& m : minors) CHECK(sgn(m) > 0);
  }
}

TEST_CASE("degree outside the supported range is rejected") {
  CHECK_THROWS_AS(assemble_qform(9), UnsupportedDegreeError);
  CHECK_THROWS_AS(assemble_qform(-1), ArgumentError);
  CHECK_THROWS_AS(eval_q(assemble_qform(1), std::vector<double>{1.0}), ArgumentError);
}

TEST_CASE("eval_q examples") {
  const QForm q1 = assemble_qform(1);
  CHECK(eval_q(q1, std::vector<double>{4.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  for (int p = 0; p <= 4; ++p) {
    CHECK(eval_q(assemble_qform(p), std::vector<double>(p + 1, 0.0)) == 0.0);
  }
  std::mt19937_64 gen(21);
  for (int p = 0; p <= 8; ++p) {
    const QForm q = assemble_qform(p);
    const auto d = random_vector(gen, p + 1);
    std::vector<double> d2(d);
    for (double& v : d2) v *= 2.0;
    CHECK(rel_diff(eval_q(q, d2), 4.0 * eval_q(q, d)) <= 1e-14);
  }
}

TEST_CASE("eval_q agrees with the float quadratic form") {
  std::mt19937_64 gen(4);
  for (int p = 0; p <= 6; ++p) {
    const QForm q = assemble_qform(p);
    const auto d = random_vector(gen, p + 1);
    double direct = 0.0;
    for (int j = 0; j <= p; ++j) {
      for (int k = 0; k <= p; ++k) direct += d[j] * q(j, k) * d[k];
    }
    CHECK(rel_diff(eval_q(q, d), direct) <= 1e-9);
  }
}

TEST_CASE("brute-force oracle examples") {
  CHECK(brute_force_q(0, std::vector<double>{2.0}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(brute_force_q(1, std::vector<double>{0.0, std::sqrt(192.0)}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(brute_force_q(3, std::vector<double>(4, 0.0))) <= 1e-10);
}

TEST_CASE("oracle equivalence on random jump vectors") {
  std::mt19937_64 gen(2024);
  for (int p = 0; p <= 4; ++p) {
    const QForm q = assemble_qform(p);
    for (int t = 0; t < 100; ++t) {
      const auto d = random_vector(gen, p + 1);
      const double e = eval_q(q, d);
      CHECK(std::abs(e - brute_force_q(p, d)) / std::max(e, 1e-12) <= 1e-6);
    }
  }
}

TEST_CASE("minimizer is a local minimum of the objective") {
  std::mt19937_64 gen(99);
  for (int p = 0; p <= 4; ++p) {
    const QForm q = assemble_qform(p);
    for (int t = 0; t < 100; ++t) {
      const auto d = random_vector(gen, p + 1);
      const auto v = q.minimizer(d);
      const double best = qform_objective(d, v);
      CHECK(rel_diff(best, eval_q(q, d), 1e-300) <= 1e-9);
      for (int k = 0; k <= p; ++k) {
        for (double step : {1e-3, -1e-3}) {
          auto w = v;
          w[k] += step;
          CHECK(qform_objective(d, w) >= best);
        }
      }
    }
  }
}

TEST_CASE("reflection symmetry") {
  std::mt19937_64 gen(8);
  for (int p = 0; p <= 8; ++p) {
    const QForm q = assemble_qform(p);
    const auto d = random_vector(gen, p + 1);
    std::vector<double> r(d);
    for (int k = 0; k <= p; ++k) r[k] = (k % 2 == 0 ? -1.0 : 1.0) * d[k];
    CHECK(rel_diff(eval_q(q, d), eval_q(q, r)) <= 1e-12);
  }
}

TEST_CASE("certified eigenvalue bounds") {
  CHECK(min_eigenvalue_lower_bound(assemble_qform(0)) == 0.25);
  const double b1 = min_eigenvalue_lower_bound(assemble_qform(1));
  CHECK(b1 > 0.0);
  CHECK(b1 <= 1.0 / 192);
  CHECK(min_eigenvalue_lower_bound(assemble_qform(4)) > 0.0);

  std::mt19937_64 gen(31);
  for (int p = 0; p <= 8; ++p) {
    const QForm q = assemble_qform(p);
    const mpq_class lam = certified_min_eigenvalue(q);
    CHECK(sgn(lam) > 0);
    // A - lam I must still be positive semidefinite: all exact pivots >= 0.
    for (const auto& piv : ldlt_pivots(q, lam)) CHECK(sgn(piv) >= 0);
    const double lo = min_eigenvalue_lower_bound(q);
    const double hi = max_eigenvalue_upper_bound(q);
    for (int t = 0; t < 50; ++t) {
      const auto d = random_vector(gen, p + 1);
      double n2 = 0.0;
      for (double v : d) n2 += v * v;
      const double e = eval_q(q, d);
      CHECK(e >= lo * n2 * (1 - 1e-12));
      CHECK(e <= hi * n2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("lower bound never exceeds a Rayleigh quotient or diagonal entry") {
  std::mt19937_64 gen(77);
  for (int p = 1; p <= 8; ++p) {
    const QForm q = assemble_qform(p);
    const double lo = min_eigenvalue_lower_bound(q);
    for (int k = 0; k <= p; ++k) CHECK(lo <= q(k, k));
    for (int t = 0; t < 2000; ++t) {
      const auto d = random_vector(gen, p + 1);
      double n2 = 0.0;
      for (double v : d) n2 += v * v;
      CHECK(lo <= eval_q(q, d) / n2);
    }
  }
}
