#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "numsmooth/bounds.hpp"
#include "numsmooth/piecewise_poly.hpp"
#include "numsmooth/smooth_function.hpp"

namespace numsmooth {

/// Derivative order every catalog entry supports exactly.
inline constexpr int kCatalogMaxOrder = kMaxDegree + 1;

/// Reference functions on [0, 1]:
///   sin    sin(2 pi x)
///   exp    e^x
///   runge  1 / (1 + 25 (2x - 1)^2)
///   poly   degree p+3 polynomial, coefficients uniform in [-1, 1] from `seed`
/// Throws ArgumentError for any other name.
SmoothFunction catalog(std::string_view name, int p = 1, std::uint64_t seed = 1);

/// Names accepted by catalog().
std::vector<std::string> catalog_names();

/// u shifted by `shift` with periodic wrap over its domain: x -> u(x - shift).
SmoothFunction translated_periodic(const SmoothFunction& u, double shift);

/// Per-cell interpolation at the p+1 Chebyshev points of each cell.
PiecewisePolynomial build_interpolant(const SmoothFunction& f, const UniformPartition& partition, int p);

enum class SignMode { Random, Alternating };

/// Perturbation that makes the k-th derivative jumps scale like
/// h^{p+1-k-delta} instead of h^{p+1-k}.
struct RoughenSpec {
  int k = 0;
  double epsilon = 1.0;
  double delta = 0.0;
  std::uint64_t seed = 1;
  SignMode signs = SignMode::Random;
};

/// The +-1 sign of each of n cells: i.i.d. from the seed, or +,-,+,- ...
std::vector<int> roughen_signs(int n_cells, const RoughenSpec& spec);

/// Adds s_i * epsilon * h^{p+1-k-delta} (x - m_i)^k / k! on every cell i,
/// i.e. shifts Taylor coefficient k of cell i by s_i * epsilon * h^{p+1-k-delta}.
PiecewisePolynomial roughen(const PiecewisePolynomial& u, const RoughenSpec& spec);

/// Upwind modal DG (Legendre basis, degree p in {1, 2}) with SSP-RK3 for
/// u_t + u_x = 0 on the periodic domain of f0, starting from the L2
/// projection of f0. The step is dt = T / ceil(T / (cfl h)) <= cfl h with
/// cfl in (0, 0.2]. Throws SolverBlowupError on non-finite coefficients.
PiecewisePolynomial dg_advection(int p, int n_cells, double cfl, double T, const SmoothFunction& f0);

/// Builder adapters for audit().
NamedBuilder projection_builder();
NamedBuilder interpolant_builder();
NamedBuilder roughen_builder(RoughenSpec spec);
/// DG solution at time T started from translated_periodic(f, -T), so that
/// the exact solution at T is the audited function f itself.
NamedBuilder dg_builder(double cfl, double T);

}  // namespace numsmooth
