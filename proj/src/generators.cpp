#include "numsmooth/generators.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "numsmooth/errors.hpp"
#include "numsmooth/quadrature.hpp"

namespace numsmooth {

namespace {

double unit_uniform(std::mt19937_64& gen) { return (gen() >> 11) * 0x1.0p-53; }

SmoothFunction make_sin() {
  constexpr double w = 2.0 * std::numbers::pi;
  auto d = [](double x, int k) {
    const double s = std::pow(w, k);
    switch (k % 4) {
      case 0:
        return s * std::sin(w * x);
      case 1:
        return s * std::cos(w * x);
      case 2:
        return -s * std::sin(w * x);
      default:
        return -s * std::cos(w * x);
    }
  };
  // Whole periods on [0, 1]: |sin| and |cos| share every norm.
  auto closed = [](int order, NormKind which) -> std::optional<double> {
    const double s = std::pow(w, order);
    switch (which) {
      case NormKind::L1:
        return s * 2.0 / std::numbers::pi;
      case NormKind::L2:
        return s * std::sqrt(0.5);
      case NormKind::Linf:
        return s;
    }
    return std::nullopt;
  };
  return {"sin", 0.0, 1.0, kCatalogMaxOrder, d, closed};
}

SmoothFunction make_exp() {
  auto d = [](double x, int) { return std::exp(x); };
  auto closed = [](int, NormKind which) -> std::optional<double> {
    switch (which) {
      case NormKind::L1:
        return std::numbers::e - 1.0;
      case NormKind::L2:
        return std::sqrt(0.5 * (std::exp(2.0) - 1.0));
      case NormKind::Linf:
        return std::numbers::e;
    }
    return std::nullopt;
  };
  return {"exp", 0.0, 1.0, kCatalogMaxOrder, d, closed};
}

SmoothFunction make_runge() {
  // With t = 10x - 5, f = 1/(1 + t^2) = Im(1/(t - i)), so
  // d^n f/dt^n = (-1)^n n! Im((t - i)^{-(n+1)}) and d/dx = 10 d/dt.
  auto d = [](double x, int k) {
    const std::complex<double> inv = 1.0 / std::complex<double>(10.0 * x - 5.0, -1.0);
    std::complex<double> pw = inv;
    double scale = 1.0;
    for (int j = 1; j <= k; ++j) {
      pw *= inv;
      scale *= -10.0 * j;
    }
    return scale * pw.imag();
  };
  return {"runge", 0.0, 1.0, kCatalogMaxOrder, d};
}

SmoothFunction make_poly(int p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> c(p + 4);
  for (double& v : c) v = 2.0 * unit_uniform(gen) - 1.0;
  auto d = [c](double x, int k) {
    const int deg = static_cast<int>(c.size()) - 1;
    if (k > deg) return 0.0;
    double acc = 0.0;
    for (int j = deg; j >= k; --j) {
      double falling = 1.0;
      for (int m = 0; m < k; ++m) falling *= j - m;
      acc = acc * x + falling * c[j];
    }
    return acc;
  };
  return {"poly(" + std::to_string(seed) + ")", 0.0, 1.0, kCatalogMaxOrder, d};
}

}  // namespace

SmoothFunction catalog(std::string_view name, int p, std::uint64_t seed) {
  if (name == "sin") return make_sin();
  if (name == "exp") return make_exp();
  if (name == "runge") return make_runge();
  if (name == "poly") {
    check_degree(p, "catalog(poly)");
    return make_poly(p, seed);
  }
  throw ArgumentError("unknown catalog function \"" + std::string(name) + "\"");
}

std::vector<std::string> catalog_names() { return {"sin", "exp", "runge", "poly"}; }

SmoothFunction translated_periodic(const SmoothFunction& u, double shift) {
  const double a = u.a();
  const double period = u.b() - u.a();
  auto d = [u, a, period, shift](double x, int k) {
    double t = std::fmod(x - shift - a, period);
    if (t < 0.0) t += period;
    return u.derivative(a + t, k);
  };
  return {u.name(), u.a(), u.b(), u.max_order(), d};
}

PiecewisePolynomial build_interpolant(const SmoothFunction& f, const UniformPartition& partition, int p) {
  check_degree(p, "build_interpolant");
  std::vector<double> coeffs;
  coeffs.reserve(static_cast<std::size_t>(partition.n_cells()) * (p + 1));
  for (int i = 0; i < partition.n_cells(); ++i) {
    const double lo = partition.node(i);
    const double hi = i + 1 == partition.n_cells() ? partition.b() : partition.node(i + 1);
    const std::vector<double> xs = chebyshev_points(p + 1, lo, hi);
    std::vector<double> ys(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) ys[j] = f.value(xs[j]);
    const auto taylor = fit_cell_from_samples(xs, ys, partition.midpoint(i), 0.5 * partition.h());
    coeffs.insert(coeffs.end(), taylor.begin(), taylor.end());
  }
  return {partition, p, std::move(coeffs)};
}

std::vector<int> roughen_signs(int n_cells, const RoughenSpec& spec) {
  std::vector<int> signs(n_cells);
  if (spec.signs == SignMode::Alternating) {
    for (int i = 0; i < n_cells; ++i) signs[i] = i % 2 == 0 ? 1 : -1;
    return signs;
  }
  std::mt19937_64 gen(spec.seed);
  for (int i = 0; i < n_cells; ++i) signs[i] = (gen() >> 63) ? 1 : -1;
  return signs;
}

PiecewisePolynomial roughen(const PiecewisePolynomial& u, const RoughenSpec& spec) {
  const int p = u.degree();
  if (spec.k < 0 || spec.k > p) {
    throw ArgumentError("roughen: derivative order k=" + std::to_string(spec.k) + " outside 0.." +
                        std::to_string(p));
  }
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) {
    throw ArgumentError("roughen: epsilon must be finite and nonnegative");
  }
  if (!(spec.delta >= 0.0) || !(spec.delta < p + 1)) {
    throw ArgumentError("roughen: delta must satisfy 0 <= delta < p+1");
  }
  const UniformPartition& part = u.partition();
  const double amplitude = spec.epsilon * std::pow(part.h(), p + 1 - spec.k - spec.delta);
  const std::vector<int> signs = roughen_signs(part.n_cells(), spec);
  std::vector<double> coeffs(u.coefficients().begin(), u.coefficients().end());
  for (int i = 0; i < part.n_cells(); ++i) {
    coeffs[static_cast<std::size_t>(i) * (p + 1) + spec.k] += signs[i] * amplitude;
  }
  return {part, p, std::move(coeffs)};
}

PiecewisePolynomial dg_advection(int p, int n_cells, double cfl, double T, const SmoothFunction& f0) {
  if (p < 1 || p > 2) throw ArgumentError("dg_advection: degree must be 1 or 2");
  if (!(cfl > 0.0) || cfl > 0.2) throw ArgumentError("dg_advection: cfl must lie in (0, 0.2]");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ArgumentError("dg_advection: T must be finite and >= 0");
  const UniformPartition part(f0.a(), f0.b(), n_cells);
  const int n = n_cells;
  const int nb = p + 1;
  const double h = part.h();

  // Modal coefficients a(i, m) of u = sum_m a_m P_m(s) on cell i.
  std::vector<double> a(static_cast<std::size_t>(n) * nb);
  for (int i = 0; i < n; ++i) {
    const CellInterval cell{part.node(i), part.node(i + 1), part.midpoint(i)};
    const auto leg = project_cell_legendre(f0, cell, p);
    std::copy(leg.begin(), leg.end(), a.begin() + static_cast<std::ptrdiff_t>(i) * nb);
  }

  // h/(2m+1) da_m/dt = sum_{n<m, n+m odd} 2 a_n - (u_i(right) - (-1)^m u_{i-1}(right))
  std::vector<double> trace(n);
  const auto rhs = [&](const std::vector<double>& u, std::vector<double>& out) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int m = 0; m < nb; ++m) s += u[i * nb + m];
      trace[i] = s;
    }
    for (int i = 0; i < n; ++i) {
      const double upwind = trace[(i + n - 1) % n];
      for (int m = 0; m < nb; ++m) {
        double vol = 0.0;
        for (int k = m - 1; k >= 0; k -= 2) vol += 2.0 * u[i * nb + k];
        const double flux = trace[i] - (m % 2 == 0 ? 1.0 : -1.0) * upwind;
        out[i * nb + m] = (2.0 * m + 1.0) / h * (vol - flux);
      }
    }
  };

  const long steps = T == 0.0 ? 0 : static_cast<long>(std::ceil(T / (cfl * h) - 1e-9));
  const double dt = steps == 0 ? 0.0 : T / steps;
  std::vector<double> k1(a.size()), u1(a.size()), u2(a.size());
  for (long step = 0; step < steps; ++step) {
    rhs(a, k1);
    for (std::size_t j = 0; j < a.size(); ++j) u1[j] = a[j] + dt * k1[j];
    rhs(u1, k1);
    for (std::size_t j = 0; j < a.size(); ++j) u2[j] = 0.75 * a[j] + 0.25 * (u1[j] + dt * k1[j]);
    rhs(u2, k1);
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = a[j] / 3.0 + 2.0 / 3.0 * (u2[j] + dt * k1[j]);
    }
    for (double v : a) {
      if (!std::isfinite(v)) throw SolverBlowupError(step, "dg_advection: non-finite coefficient");
    }
  }

  std::vector<double> coeffs;
  coeffs.reserve(a.size());
  for (int i = 0; i < n; ++i) {
    const auto taylor =
        legendre_to_taylor(std::span<const double>(a).subspan(static_cast<std::size_t>(i) * nb, nb), 0.5 * h);
    coeffs.insert(coeffs.end(), taylor.begin(), taylor.end());
  }
  return {part, p, std::move(coeffs)};
}

NamedBuilder projection_builder() {
  return {"project", [](const SmoothFunction& f, const UniformPartition& part, int p) {
            return project_l2(f, part, p);
          }};
}

NamedBuilder interpolant_builder() {
  return {"interpolant", [](const SmoothFunction& f, const UniformPartition& part, int p) {
            return build_interpolant(f, part, p);
          }};
}

NamedBuilder roughen_builder(RoughenSpec spec) {
  return {"roughen", [spec](const SmoothFunction& f, const UniformPartition& part, int p) {
            return roughen(project_l2(f, part, p), spec);
          }};
}

NamedBuilder dg_builder(double cfl, double T) {
  return {"dg", [cfl, T](const SmoothFunction& f, const UniformPartition& part, int p) {
            const SmoothFunction f0 = translated_periodic(f, -T);
            PiecewisePolynomial u = dg_advection(p, part.n_cells(), cfl, T, f0);
            if (!(u.partition() == part)) throw ArgumentError("dg builder: partition mismatch");
            return u;
          }};
}

}  // namespace numsmooth
