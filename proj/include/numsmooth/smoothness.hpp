#pragma once

#include <span>
#include <vector>

#include "numsmooth/piecewise_poly.hpp"
#include "numsmooth/qform.hpp"

namespace numsmooth {

/// Smoothness indicator of a piecewise polynomial u of degree p on N cells.
///
///   M(i, k)  k-th derivative right limit at x_i,      i = 0..N-1
///   L(j, k)  k-th derivative left limit at x_{j+1},   j = 0..N-2
///   J(j, k)  M(j+1, k) - L(j, k), the jump at interior node x_{j+1}
///   D(j, k)  J(j, k) / h^{p+1-k}
///
/// Rows of L, J and D are indexed by interior node minus one.
class IndicatorSet {
 public:
  IndicatorSet(int degree, int n_cells, double h, std::vector<double> M, std::vector<double> L);

  int degree() const noexcept { return degree_; }
  int n_cells() const noexcept { return n_cells_; }
  int interior_nodes() const noexcept { return n_cells_ - 1; }
  double h() const noexcept { return h_; }

  double M(int i, int k) const { return M_.at(at(i, k)); }
  double L(int j, int k) const { return L_.at(at(j, k)); }
  double J(int j, int k) const { return J_.at(at(j, k)); }
  double D(int j, int k) const { return D_.at(at(j, k)); }

  /// Scaled jumps at interior node x_{j+1}.
  std::span<const double> D_row(int j) const;
  std::span<const double> J_row(int j) const;

 private:
  std::size_t at(int row, int k) const { return static_cast<std::size_t>(row) * (degree_ + 1) + k; }

  int degree_;
  int n_cells_;
  double h_;
  std::vector<double> M_;
  std::vector<double> L_;
  std::vector<double> J_;
  std::vector<double> D_;
};

IndicatorSet compute_indicators(const PiecewisePolynomial& u);

struct InfinityNorms {
  double max_M;
  double max_D;
};

/// max |M| and max |D|, kept apart: only D is constrained by the lower bounds.
InfinityNorms norm_infinity(const IndicatorSet& ind);

/// sqrt( sum_i h * sum_k D_ik^2 ), the numerical H^{p+1} smoothness measure.
double norm_h(const IndicatorSet& ind);

/// sum_i h * sum_k |D_ik|, the numerical W^{p+1}_1 smoothness measure.
double norm_l1(const IndicatorSet& ind);

struct QAggregates {
  double sum_hQ;
  double sum_h_sqrtQ;
  double max_sqrtQ;
};

/// Q-form aggregates over interior nodes; q must have the indicator degree.
QAggregates q_aggregates(const IndicatorSet& ind, const QForm& q);

}  // namespace numsmooth
