#include "numsmooth/smoothness.hpp"

#include <algorithm>
#include <cmath>

#include "numsmooth/errors.hpp"

namespace numsmooth {

IndicatorSet::IndicatorSet(int degree, int n_cells, double h, std::vector<double> M,
                           std::vector<double> L)
    : degree_(degree), n_cells_(n_cells), h_(h), M_(std::move(M)), L_(std::move(L)) {
  const std::size_t w = static_cast<std::size_t>(degree + 1);
  if (n_cells < 2 || M_.size() != n_cells * w || L_.size() != (n_cells - 1) * w) {
    throw ArgumentError("IndicatorSet: inconsistent array shapes");
  }
  J_.resize(L_.size());
  D_.resize(L_.size());
  for (int j = 0; j + 1 < n_cells; ++j) {
    for (int k = 0; k <= degree; ++k) {
      const double jump = M_[at(j + 1, k)] - L_[at(j, k)];
      J_[at(j, k)] = jump;
      D_[at(j, k)] = jump / std::pow(h, degree + 1 - k);
    }
  }
}

std::span<const double> IndicatorSet::D_row(int j) const {
  if (j < 0 || j >= interior_nodes()) throw ArgumentError("IndicatorSet: interior node out of range");
  return std::span<const double>(D_).subspan(at(j, 0), degree_ + 1);
}

std::span<const double> IndicatorSet::J_row(int j) const {
  if (j < 0 || j >= interior_nodes()) throw ArgumentError("IndicatorSet: interior node out of range");
  return std::span<const double>(J_).subspan(at(j, 0), degree_ + 1);
}

IndicatorSet compute_indicators(const PiecewisePolynomial& u) {
  const UniformPartition& part = u.partition();
  const int n = part.n_cells();
  const int p = u.degree();
  std::vector<double> M(static_cast<std::size_t>(n) * (p + 1));
  std::vector<double> L(static_cast<std::size_t>(n - 1) * (p + 1));
  for (int i = 0; i < n; ++i) {
    const CellPolynomial piece = u.piece(i);
    const double left_end = u.cell(i).lo;
    const double right_end = u.cell(i).hi;
    for (int k = 0; k <= p; ++k) {
      M[static_cast<std::size_t>(i) * (p + 1) + k] = piece.derivative(left_end, k);
      if (i + 1 < n) L[static_cast<std::size_t>(i) * (p + 1) + k] = piece.derivative(right_end, k);
    }
  }
  return {p, n, part.h(), std::move(M), std::move(L)};
}

InfinityNorms norm_infinity(const IndicatorSet& ind) {
  InfinityNorms r{0.0, 0.0};
  for (int i = 0; i < ind.n_cells(); ++i) {
    for (int k = 0; k <= ind.degree(); ++k) r.max_M = std::max(r.max_M, std::abs(ind.M(i, k)));
  }
  for (int j = 0; j < ind.interior_nodes(); ++j) {
    for (double d : ind.D_row(j)) r.max_D = std::max(r.max_D, std::abs(d));
  }
  return r;
}

double norm_h(const IndicatorSet& ind) {
  double sum = 0.0;
  for (int j = 0; j < ind.interior_nodes(); ++j) {
    for (double d : ind.D_row(j)) sum += ind.h() * d * d;
  }
  return std::sqrt(sum);
}

double norm_l1(const IndicatorSet& ind) {
  double sum = 0.0;
  for (int j = 0; j < ind.interior_nodes(); ++j) {
    for (double d : ind.D_row(j)) sum += ind.h() * std::abs(d);
  }
  return sum;
}

QAggregates q_aggregates(const IndicatorSet& ind, const QForm& q) {
  if (q.degree() != ind.degree()) {
    throw ArgumentError("q_aggregates: QForm degree " + std::to_string(q.degree()) +
                        " does not match indicator degree " + std::to_string(ind.degree()));
  }
  QAggregates r{0.0, 0.0, 0.0};
  for (int j = 0; j < ind.interior_nodes(); ++j) {
    const double qv = eval_q(q, ind.D_row(j));
    r.sum_hQ += ind.h() * qv;
    r.sum_h_sqrtQ += ind.h() * std::sqrt(qv);
    r.max_sqrtQ = std::max(r.max_sqrtQ, std::sqrt(qv));
  }
  return r;
}

}  // namespace numsmooth
