#pragma once

#include <span>
#include <vector>

namespace numsmooth {

class SmoothFunction;

/// Highest polynomial degree the toolkit accepts. The centered Taylor basis
/// and the exact Q-form stay well conditioned up to here.
inline constexpr int kMaxDegree = 8;

enum class Side { Left, Right };
enum class NormKind { L1, L2, Linf };

void check_degree(int p, const char* where);

/// a = x_0 < x_1 < ... < x_N = b with constant cell width h = (b - a) / N.
class UniformPartition {
 public:
  UniformPartition(double a, double b, int n_cells);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  int n_cells() const noexcept { return n_; }
  double h() const noexcept { return h_; }

  /// x_i = a + i*h, computed directly (never accumulated).
  double node(int i) const noexcept { return a_ + i * h_; }
  /// Midpoint of primal cell i, i.e. x_{i+1/2}.
  double midpoint(int i) const noexcept { return a_ + (i + 0.5) * h_; }

  bool operator==(const UniformPartition&) const = default;

 private:
  double a_;
  double b_;
  int n_;
  double h_;
};

struct CellInterval {
  double lo;
  double hi;
  double center;
  double width() const noexcept { return hi - lo; }
};

/// Polynomial of one cell: value(x) = sum_k coeffs[k] * (x - center)^k / k!.
/// coeffs[k] is therefore the k-th derivative at the center.
struct CellPolynomial {
  double center;
  std::span<const double> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double value(double x) const noexcept;
  /// k-th derivative at x; zero for k > degree.
  double derivative(double x, int k) const noexcept;
};

/// Shared storage for piecewise polynomials in the centered Taylor basis.
/// Cells are contiguous and sorted; coefficients are row-major, one row of
/// degree+1 entries per cell.
class CellwisePolynomial {
 public:
  int degree() const noexcept { return degree_; }
  int cell_count() const noexcept { return static_cast<int>(cells_.size()); }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  const CellInterval& cell(int i) const { return cells_.at(i); }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<const double> cell_coeffs(int i) const;
  CellPolynomial piece(int i) const;

  /// Index of the cell containing x. At a breakpoint shared by two cells,
  /// `side` selects the cell to the left or right; at a and b the only
  /// adjacent cell is used regardless of side. Throws DomainError outside
  /// [a, b].
  int locate(double x, Side side) const;

  double evaluate(double x, Side side) const;
  /// k-th derivative, 0 <= k <= degree (ArgumentError otherwise).
  double derivative_at(double x, int k, Side side) const;

 protected:
  CellwisePolynomial(std::vector<CellInterval> cells, double a, double b, int degree,
                     std::vector<double> coeffs);

 private:
  std::vector<CellInterval> cells_;
  double a_;
  double b_;
  int degree_;
  std::vector<double> coeffs_;
};

/// The reconstructed numerical solution: degree p on each cell of a
/// uniform partition.
class PiecewisePolynomial : public CellwisePolynomial {
 public:
  PiecewisePolynomial(UniformPartition partition, int degree, std::vector<double> coeffs);

  static PiecewisePolynomial zero(UniformPartition partition, int degree);

  const UniformPartition& partition() const noexcept { return partition_; }

  bool operator==(const PiecewisePolynomial& other) const;

 private:
  UniformPartition partition_;
};

/// Piecewise polynomial on the dual partition a < x_{1/2} < ... < x_{N-1/2} < b.
/// Cell 0 and cell N are half cells of width h/2; cell i for 1 <= i <= N-1
/// has width h and is centered on the primal node x_i.
class StaggeredPiecewisePolynomial : public CellwisePolynomial {
 public:
  StaggeredPiecewisePolynomial(UniformPartition partition, int degree, std::vector<double> coeffs);

  const UniformPartition& partition() const noexcept { return partition_; }

  static std::vector<CellInterval> dual_cells(const UniformPartition& partition);

 private:
  UniformPartition partition_;
};

/// Per-cell L2 projection onto polynomials of degree <= p.
PiecewisePolynomial project_l2(const SmoothFunction& f, const UniformPartition& partition, int p);

/// Same on the dual partition (the interpolant space used in the lower-bound proofs).
StaggeredPiecewisePolynomial project_l2_staggered(const SmoothFunction& f,
                                                  const UniformPartition& partition, int p);

/// ||f - u|| over [a, b]. L1/L2 use per-cell Gauss quadrature with
/// quadrature_points(p) nodes (sign-change splitting for L1); Linf samples
/// 32(p+1) Chebyshev-Lobatto points per cell then refines around the
/// per-cell maximum. Domains of f and u must coincide.
double error_norm(const SmoothFunction& f, const CellwisePolynomial& u, NormKind which);

/// Norm of u itself (same quadrature contract as error_norm).
double polynomial_norm(const CellwisePolynomial& u, NormKind which);

/// Gauss points used per cell for degree-p integrands.
int quadrature_points(int p) noexcept;
/// Linf sample count per cell for degree p.
int sup_samples(int p) noexcept;

/// Legendre coefficients (in s = (x - center) / (width/2)) of the L2
/// projection of f onto degree p on one cell.
std::vector<double> project_cell_legendre(const SmoothFunction& f, const CellInterval& cell, int p);

/// Taylor coefficients (derivatives at `center`) of the polynomial with
/// Legendre coefficients `legendre` in s = (x - center) / half_width.
std::vector<double> legendre_to_taylor(std::span<const double> legendre, double half_width);

/// Taylor coefficients of the degree (xs.size()-1) interpolant through
/// (xs, values). Points must be distinct.
std::vector<double> fit_cell_from_samples(std::span<const double> xs, std::span<const double> values,
                                          double center, double half_width);

}  // namespace numsmooth
