#include "numsmooth/piecewise_poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "numsmooth/errors.hpp"
#include "numsmooth/norms.hpp"
#include "numsmooth/quadrature.hpp"
#include "numsmooth/smooth_function.hpp"

namespace numsmooth {

namespace {

const std::vector<double>& legendre_monomials(int n) {
  static const std::array<std::vector<double>, kMaxDegree + 1> table = [] {
    std::array<std::vector<double>, kMaxDegree + 1> t;
    for (int k = 0; k <= kMaxDegree; ++k) t[k] = legendre_monomial_coefficients(k);
    return t;
  }();
  return table.at(n);
}

double factorial(int k) {
  double r = 1.0;
  for (int j = 2; j <= k; ++j) r *= j;
  return r;
}

bool same_endpoint(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

std::vector<double> checked_coefficients(std::vector<double> coeffs, std::size_t cells,
                                         int degree) {
  if (coeffs.size() != cells * static_cast<std::size_t>(degree + 1)) {
    throw ArgumentError("piecewise polynomial: expected " + std::to_string(cells) + " x " +
                        std::to_string(degree + 1) + " coefficients, got " +
                        std::to_string(coeffs.size()));
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw ArgumentError("piecewise polynomial: non-finite coefficient");
  }
  return coeffs;
}

std::vector<CellInterval> primal_cells(const UniformPartition& part) {
  std::vector<CellInterval> cells(part.n_cells());
  for (int i = 0; i < part.n_cells(); ++i) {
    cells[i] = {part.node(i), part.node(i + 1), part.midpoint(i)};
  }
  cells.back().hi = part.b();
  return cells;
}

void check_projection_domain(const SmoothFunction& f, const UniformPartition& part) {
  if (part.a() < f.a() - 1e-12 || part.b() > f.b() + 1e-12) {
    throw ArgumentError("projection: partition [" + std::to_string(part.a()) + ", " +
                        std::to_string(part.b()) + "] outside the domain of " + f.name());
  }
}

}  // namespace

void check_degree(int p, const char* where) {
  if (p < 0) throw ArgumentError(std::string(where) + ": negative degree");
  if (p > kMaxDegree) {
    throw UnsupportedDegreeError(std::string(where) + ": degree " + std::to_string(p) +
                                 " exceeds supported maximum " + std::to_string(kMaxDegree));
  }
}

std::vector<double> project_cell_legendre(const SmoothFunction& f, const CellInterval& cell, int p) {
  const GaussRule& rule = gauss_legendre(quadrature_points(p));
  const double half = 0.5 * cell.width();
  std::vector<double> coef(p + 1, 0.0);
  std::vector<double> leg(p + 1);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double s = rule.nodes[q];
    const double fx = f.value(cell.center + half * s);
    legendre_values(s, leg);
    for (int n = 0; n <= p; ++n) coef[n] += rule.weights[q] * fx * leg[n];
  }
  for (int n = 0; n <= p; ++n) coef[n] *= (2.0 * n + 1.0) / 2.0;
  return coef;
}

int quadrature_points(int p) noexcept { return std::min(2 * p + 12, kMaxGaussPoints); }
int sup_samples(int p) noexcept { return 32 * (p + 1); }

UniformPartition::UniformPartition(double a, double b, int n_cells) : a_(a), b_(b), n_(n_cells) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    throw ArgumentError("UniformPartition: requires finite a < b");
  }
  if (n_cells < 2) throw ArgumentError("UniformPartition: requires at least 2 cells");
  h_ = (b - a) / n_cells;
}

double CellPolynomial::value(double x) const noexcept { return derivative(x, 0); }

double CellPolynomial::derivative(double x, int k) const noexcept {
  const int p = degree();
  if (k > p) return 0.0;
  const double t = x - center;
  double acc = coeffs[p];
  for (int j = p - 1; j >= k; --j) acc = coeffs[j] + acc * t / (j - k + 1);
  return acc;
}

CellwisePolynomial::CellwisePolynomial(std::vector<CellInterval> cells, double a, double b,
                                       int degree, std::vector<double> coeffs)
    : cells_(std::move(cells)), a_(a), b_(b), degree_(degree) {
  check_degree(degree, "piecewise polynomial");
  coeffs_ = checked_coefficients(std::move(coeffs), cells_.size(), degree);
}

std::span<const double> CellwisePolynomial::cell_coeffs(int i) const {
  if (i < 0 || i >= cell_count()) throw ArgumentError("cell index " + std::to_string(i) + " out of range");
  return std::span<const double>(coeffs_).subspan(static_cast<std::size_t>(i) * (degree_ + 1),
                                                  degree_ + 1);
}

CellPolynomial CellwisePolynomial::piece(int i) const { return {cell(i).center, cell_coeffs(i)}; }

int CellwisePolynomial::locate(double x, Side side) const {
  if (!(x >= a_ && x <= b_)) {
    throw DomainError("evaluation point " + std::to_string(x) + " outside [" + std::to_string(a_) +
                      ", " + std::to_string(b_) + "]");
  }
  // First cell whose upper end exceeds x.
  const auto it = std::upper_bound(cells_.begin(), cells_.end(), x,
                                   [](double v, const CellInterval& c) { return v < c.hi; });
  int i = it == cells_.end() ? cell_count() - 1 : static_cast<int>(it - cells_.begin());
  if (x == cells_[i].lo && side == Side::Left && i > 0) --i;
  return i;
}

double CellwisePolynomial::evaluate(double x, Side side) const {
  return piece(locate(x, side)).value(x);
}

double CellwisePolynomial::derivative_at(double x, int k, Side side) const {
  if (k < 0 || k > degree_) {
    throw ArgumentError("derivative order " + std::to_string(k) + " outside 0.." +
                        std::to_string(degree_));
  }
  return piece(locate(x, side)).derivative(x, k);
}

PiecewisePolynomial::PiecewisePolynomial(UniformPartition partition, int degree,
                                         std::vector<double> coeffs)
    : CellwisePolynomial(primal_cells(partition), partition.a(), partition.b(), degree,
                         std::move(coeffs)),
      partition_(partition) {}

PiecewisePolynomial PiecewisePolynomial::zero(UniformPartition partition, int degree) {
  std::vector<double> c(static_cast<std::size_t>(partition.n_cells()) * (degree + 1), 0.0);
  return {partition, degree, std::move(c)};
}

bool PiecewisePolynomial::operator==(const PiecewisePolynomial& other) const {
  return partition_ == other.partition_ && degree() == other.degree() &&
         std::ranges::equal(coefficients(), other.coefficients());
}

std::vector<CellInterval> StaggeredPiecewisePolynomial::dual_cells(const UniformPartition& part) {
  const int n = part.n_cells();
  std::vector<CellInterval> cells(n + 1);
  cells[0] = {part.a(), part.midpoint(0), 0.5 * (part.a() + part.midpoint(0))};
  for (int i = 1; i < n; ++i) cells[i] = {part.midpoint(i - 1), part.midpoint(i), part.node(i)};
  cells[n] = {part.midpoint(n - 1), part.b(), 0.5 * (part.midpoint(n - 1) + part.b())};
  return cells;
}

StaggeredPiecewisePolynomial::StaggeredPiecewisePolynomial(UniformPartition partition, int degree,
                                                           std::vector<double> coeffs)
    : CellwisePolynomial(dual_cells(partition), partition.a(), partition.b(), degree,
                         std::move(coeffs)),
      partition_(partition) {}

std::vector<double> legendre_to_taylor(std::span<const double> legendre, double half_width) {
  const int p = static_cast<int>(legendre.size()) - 1;
  check_degree(p, "legendre_to_taylor");
  std::vector<double> taylor(p + 1, 0.0);
  double scale = 1.0;
  for (int k = 0; k <= p; ++k) {
    double sum = 0.0;
    for (int n = k; n <= p; ++n) sum += legendre[n] * legendre_monomials(n)[k];
    taylor[k] = sum * factorial(k) / scale;
    scale *= half_width;
  }
  return taylor;
}

std::vector<double> fit_cell_from_samples(std::span<const double> xs, std::span<const double> values,
                                          double center, double half_width) {
  if (xs.size() != values.size() || xs.empty()) {
    throw ArgumentError("fit_cell_from_samples: need matching, non-empty sample arrays");
  }
  const int n = static_cast<int>(xs.size());
  check_degree(n - 1, "fit_cell_from_samples");
  Eigen::MatrixXd vander(n, n);
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) {
    const double s = (xs[j] - center) / half_width;
    double pw = 1.0;
    for (int k = 0; k < n; ++k) {
      vander(j, k) = pw;
      pw *= s;
    }
    rhs(j) = values[j];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(vander);
  if (!lu.isInvertible()) throw ArgumentError("fit_cell_from_samples: sample points not distinct");
  const Eigen::VectorXd mono = lu.solve(rhs);
  std::vector<double> taylor(n);
  double scale = 1.0;
  for (int k = 0; k < n; ++k) {
    taylor[k] = mono(k) * factorial(k) / scale;
    scale *= half_width;
  }
  return taylor;
}

PiecewisePolynomial project_l2(const SmoothFunction& f, const UniformPartition& partition, int p) {
  check_degree(p, "project_l2");
  check_projection_domain(f, partition);
  const auto cells = primal_cells(partition);
  std::vector<double> coeffs;
  coeffs.reserve(cells.size() * (p + 1));
  for (const auto& cell : cells) {
    const auto leg = project_cell_legendre(f, cell, p);
    const auto taylor = legendre_to_taylor(leg, 0.5 * cell.width());
    coeffs.insert(coeffs.end(), taylor.begin(), taylor.end());
  }
  return {partition, p, std::move(coeffs)};
}

StaggeredPiecewisePolynomial project_l2_staggered(const SmoothFunction& f,
                                                  const UniformPartition& partition, int p) {
  check_degree(p, "project_l2_staggered");
  check_projection_domain(f, partition);
  const auto cells = StaggeredPiecewisePolynomial::dual_cells(partition);
  std::vector<double> coeffs;
  coeffs.reserve(cells.size() * (p + 1));
  for (const auto& cell : cells) {
    const auto leg = project_cell_legendre(f, cell, p);
    const auto taylor = legendre_to_taylor(leg, 0.5 * cell.width());
    coeffs.insert(coeffs.end(), taylor.begin(), taylor.end());
  }
  return {partition, p, std::move(coeffs)};
}

double error_norm(const SmoothFunction& f, const CellwisePolynomial& u, NormKind which) {
  if (!same_endpoint(f.a(), u.a()) || !same_endpoint(f.b(), u.b())) {
    throw ArgumentError("error_norm: domain of " + f.name() + " does not match the approximant");
  }
  NormAccumulator acc(which, u.degree());
  for (int i = 0; i < u.cell_count(); ++i) {
    const CellPolynomial piece = u.piece(i);
    acc.add([&](double x) { return f.value(x) - piece.value(x); }, u.cell(i).lo, u.cell(i).hi);
  }
  return acc.result();
}

double polynomial_norm(const CellwisePolynomial& u, NormKind which) {
  NormAccumulator acc(which, u.degree());
  for (int i = 0; i < u.cell_count(); ++i) {
    const CellPolynomial piece = u.piece(i);
    acc.add([&](double x) { return piece.value(x); }, u.cell(i).lo, u.cell(i).hi);
  }
  return acc.result();
}

}  // namespace numsmooth
