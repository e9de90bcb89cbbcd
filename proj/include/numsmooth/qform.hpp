#pragma once

#include <span>
#include <vector>

#include <gmpxx.h>

namespace numsmooth {

/// The quadratic form Q(D) = D^T A D giving, for a jump vector D of
/// scaled derivative jumps, the minimum over polynomials v of degree <= p of
///
///   ||v + g||^2_{L2(-1/2, 0)} + ||v - g||^2_{L2(0, 1/2)},
///   g(xi) = 1/2 sum_k D_k xi^k / k!.
///
/// A is assembled in exact rational arithmetic; the double view is derived
/// from it once. Immutable after construction.
class QForm {
 public:
  int degree() const noexcept { return degree_; }
  int size() const noexcept { return degree_ + 1; }

  const mpq_class& exact(int j, int k) const { return exact_.at(index(j, k)); }
  double operator()(int j, int k) const { return approx_.at(index(j, k)); }

  /// Row-major (p+1)^2 double view of A.
  std::span<const double> matrix() const noexcept { return approx_; }
  /// Row-major (p+1)^2 exact view of A.
  std::span<const mpq_class> exact_matrix() const noexcept { return exact_; }

  /// Coefficients V_k (of xi^k) of the minimizing v for jump vector D.
  std::vector<double> minimizer(std::span<const double> D) const;

  friend QForm assemble_qform(int p);
  friend double eval_q(const QForm& q, std::span<const double> D);

 private:
  QForm() = default;
  std::size_t index(int j, int k) const { return static_cast<std::size_t>(j) * size() + k; }

  int degree_ = 0;
  std::vector<mpq_class> exact_;
  std::vector<double> approx_;
  // Q(D) = ||R D||^2 with R upper triangular from the exact LDL^T of A.
  std::vector<double> root_;
  // V = X D, X = G^{-1} B.
  std::vector<double> minimizer_map_;
};

/// Exact assembly A = C - B^T G^{-1} B for 0 <= p <= 8.
QForm assemble_qform(int p);

/// D^T A D (>= 0). D must have p+1 entries.
double eval_q(const QForm& q, std::span<const double> D);

/// The minimization objective for jump vector D and trial polynomial
/// v(xi) = sum_k V_k xi^k, integrated exactly by Gauss quadrature on each
/// half interval.
double qform_objective(std::span<const double> D, std::span<const double> V);

/// Independent oracle for Q: discrete least-squares fit of v on 4000
/// uniform points of (-1/2, 1/2) (none at 0), then the continuous
/// objective of that v.
double brute_force_q(int p, std::span<const double> D);

/// Pivots of the exact LDL^T factorization of A - shift*I (no pivoting).
/// All positive iff A - shift*I is positive definite.
std::vector<mpq_class> ldlt_pivots(const QForm& q, const mpq_class& shift = 0);

/// Leading principal minors of A, exact.
std::vector<mpq_class> leading_principal_minors(const QForm& q);

/// Certified rational lower bound on the smallest eigenvalue of A: the
/// larger of the Gershgorin bound and the largest dyadic t found by
/// bisection for which A - t*I has all-positive exact pivots.
mpq_class certified_min_eigenvalue(const QForm& q);

/// certified_min_eigenvalue rounded toward zero to double.
double min_eigenvalue_lower_bound(const QForm& q);

/// Gershgorin upper bound on the largest eigenvalue, rounded up.
double max_eigenvalue_upper_bound(const QForm& q);

/// Number of samples used by brute_force_q.
inline constexpr int kBruteForceSamples = 4000;

}  // namespace numsmooth
