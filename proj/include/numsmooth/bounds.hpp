#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "numsmooth/piecewise_poly.hpp"
#include "numsmooth/smooth_function.hpp"

namespace numsmooth {

/// Relative slack allowed on each link of a lower-bound chain.
inline constexpr double kChainSlack = 1e-9;

/// One evaluated lower-bound chain
///   err + proj_err >= mid_term >= bound_term
/// where err = ||u - u^R||, proj_err = ||u - u^I|| with u^I the staggered
/// L2 projection, mid_term aggregates ||u^I - u^R|| over the interior dual
/// cells, and bound_term is the h^{p+1}-scaled Q aggregate.
struct ChainRecord {
  NormKind norm;
  double err;
  double proj_err;
  double mid_term;
  double bound_term;

  bool triangle_holds(double slack = kChainSlack) const noexcept;
  bool bound_holds(double slack = kChainSlack) const noexcept;
  bool holds(double slack = kChainSlack) const noexcept { return triangle_holds(slack) && bound_holds(slack); }
};

/// min over degree-<=p polynomials v of ||v - u||^2 on the dual cell
/// centered at interior node x_i (1 <= i <= N-1), by direct least squares
/// on that cell.
double cell_min_distance_sq(const PiecewisePolynomial& u, int node);

ChainRecord chain(const SmoothFunction& f, const PiecewisePolynomial& u, NormKind norm);

/// c(p) = min ||w||_{L1(0,1)} over degree-<=p polynomials with ||w||_{L2(0,1)} = 1,
/// so ||w||_{L1(I)} >= c(p) |I|^{1/2} ||w||_{L2(I)} on any interval I.
double compute_c12(int p);

/// Least-squares slope of log(value) against log(h). Needs >= 3 points,
/// strictly decreasing h and positive values.
double rate_estimate(std::span<const std::pair<double, double>> points);

using Builder =
    std::function<PiecewisePolynomial(const SmoothFunction&, const UniformPartition&, int)>;

struct NamedBuilder {
  std::string name;
  Builder build;
};

enum class Verdict { Smooth, RateLoss, Inconclusive };

const char* to_string(Verdict v) noexcept;

struct AuditOptions {
  double beta_max = 0.2;
  double rate_slack = 0.2;
  /// Worker threads for the per-N runs; 0 runs serially.
  int threads = 0;
  /// Errors at or below this are quadrature noise and excluded from fits.
  double error_floor = 1e-14;
  /// sum_hQ at or below this is roundoff in the jumps and excluded from fits.
  double indicator_floor = 1e-20;
};

struct AuditRun {
  int n_cells;
  double h;
  double err_L1;
  double err_L2;
  double err_Linf;
  double sum_hQ;
  double sum_h_sqrtQ;
  double max_sqrtQ;
  double max_D;
  double max_M;
  double norm_h;
  double norm_l1;
};

struct AuditReport {
  std::string function;
  std::string builder;
  int degree;
  std::vector<AuditRun> runs;  ///< decreasing h
  /// Fitted slopes; empty when fewer than 3 values clear the noise floor.
  std::optional<double> rate_L2;
  std::optional<double> beta;
  std::optional<double> beta_sqrt;  ///< -slope of sum_h_sqrtQ
  std::optional<double> beta_max;   ///< -slope of max_sqrtQ
  Verdict verdict;
  /// p + 1 - beta/2 when rate loss is flagged.
  std::optional<double> predicted_rate;
};

/// Runs `builder` on each N of `n_list` (>= 3 strictly increasing entries)
/// over the domain of f and classifies the sequence:
///   smooth        beta <= beta_max and rate_L2 >= p+1-rate_slack
///   rate_loss     beta > beta_max
///   inconclusive  otherwise
/// A fit that is empty because everything sits at the noise floor counts
/// as beta = 0 and as an optimal rate.
AuditReport audit(const SmoothFunction& f, const NamedBuilder& builder, int p,
                  std::span<const int> n_list, const AuditOptions& options = {});

}  // namespace numsmooth
