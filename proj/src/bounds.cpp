#include "numsmooth/bounds.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "numsmooth/errors.hpp"
#include "numsmooth/norms.hpp"
#include "numsmooth/qform.hpp"
#include "numsmooth/quadrature.hpp"
#include "numsmooth/smoothness.hpp"

namespace numsmooth {

bool ChainRecord::triangle_holds(double slack) const noexcept {
  return err + proj_err >= mid_term * (1.0 - slack);
}

bool ChainRecord::bound_holds(double slack) const noexcept {
  return mid_term >= bound_term * (1.0 - slack);
}

double cell_min_distance_sq(const PiecewisePolynomial& u, int node) {
  const UniformPartition& part = u.partition();
  if (node < 1 || node >= part.n_cells()) {
    throw ArgumentError("cell_min_distance_sq: node " + std::to_string(node) +
                        " is not an interior node (1.." + std::to_string(part.n_cells() - 1) + ")");
  }
  const int p = u.degree();
  const double xc = part.node(node);
  const double half = 0.5 * part.h();
  const CellPolynomial left = u.piece(node - 1);
  const CellPolynomial right = u.piece(node);

  // Subtracting the left polynomial leaves r = 0 on the left half and
  // r = right - left on the right half; the distance to P_p is unchanged.
  const auto r = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double x = xc + half * s;
    return right.value(x) - left.value(x);
  };

  const GaussRule& rule = gauss_legendre(p + 2);
  std::vector<double> leg(p + 1);
  std::vector<double> proj(p + 1, 0.0);
  // Nodes on s in (0, 1): s = (1 + t) / 2.
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double s = 0.5 * (1.0 + rule.nodes[q]);
    legendre_values(s, leg);
    const double rv = r(s);
    for (int n = 0; n <= p; ++n) proj[n] += 0.5 * rule.weights[q] * rv * leg[n];
  }
  for (int n = 0; n <= p; ++n) proj[n] *= (2.0 * n + 1.0) / 2.0;

  double residual = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    for (const double s : {0.5 * (rule.nodes[q] - 1.0), 0.5 * (rule.nodes[q] + 1.0)}) {
      legendre_values(s, leg);
      double fit = 0.0;
      for (int n = 0; n <= p; ++n) fit += proj[n] * leg[n];
      const double e = (s > 0.0 ? r(s) : 0.0) - fit;
      residual += 0.5 * rule.weights[q] * e * e;
    }
  }
  return half * residual;
}

ChainRecord chain(const SmoothFunction& f, const PiecewisePolynomial& u, NormKind norm) {
  const UniformPartition& part = u.partition();
  const int p = u.degree();
  const StaggeredPiecewisePolynomial interp = project_l2_staggered(f, part, p);

  ChainRecord rec{norm, error_norm(f, u, norm), error_norm(f, interp, norm), 0.0, 0.0};

  NormAccumulator mid(norm, p);
  for (int i = 1; i < part.n_cells(); ++i) {
    const CellInterval& cell = interp.cell(i);
    const CellPolynomial ui = interp.piece(i);
    const CellPolynomial left = u.piece(i - 1);
    const CellPolynomial right = u.piece(i);
    mid.add([&](double x) { return ui.value(x) - left.value(x); }, cell.lo, cell.center);
    mid.add([&](double x) { return ui.value(x) - right.value(x); }, cell.center, cell.hi);
  }
  rec.mid_term = mid.result();

  const QForm q = assemble_qform(p);
  const QAggregates agg = q_aggregates(compute_indicators(u), q);
  const double scale = std::pow(part.h(), p + 1);
  switch (norm) {
    case NormKind::L2:
      rec.bound_term = scale * std::sqrt(agg.sum_hQ);
      break;
    case NormKind::L1:
      rec.bound_term = compute_c12(p) * scale * agg.sum_h_sqrtQ;
      break;
    case NormKind::Linf:
      rec.bound_term = scale * agg.max_sqrtQ;
      break;
  }
  return rec;
}

namespace {

// w(x) = sum_n a_n sqrt(2n+1) P_n(2x - 1): orthonormal on [0, 1].
double orthonormal_eval(std::span<const double> a, double x, std::vector<double>& leg) {
  legendre_values(2.0 * x - 1.0, leg);
  double v = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) v += a[n] * std::sqrt(2.0 * n + 1.0) * leg[n];
  return v;
}

struct L1Eval {
  double value;
  std::vector<double> gradient;
};

// ||w||_{L1(0,1)} and its gradient with respect to the coefficients.
L1Eval unit_l1(std::span<const double> a) {
  const int p = static_cast<int>(a.size()) - 1;
  std::vector<double> leg(p + 1);
  const ScalarFunction w = [&](double x) { return orthonormal_eval(a, x, leg); };
  const std::vector<double> breaks = sign_change_breaks(w, 0.0, 1.0, 4 * sup_samples(p));

  std::vector<double> legq(p + 1);
  const GaussRule& rule = gauss_legendre(p + 2);
  L1Eval out{0.0, std::vector<double>(p + 1, 0.0)};
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double lo = breaks[j];
    const double hi = breaks[j + 1];
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double integral = 0.0;
    std::vector<double> basis_int(p + 1, 0.0);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = mid + half * rule.nodes[q];
      const double wx = orthonormal_eval(a, x, legq);
      integral += rule.weights[q] * wx;
      for (int n = 0; n <= p; ++n) basis_int[n] += rule.weights[q] * std::sqrt(2.0 * n + 1.0) * legq[n];
    }
    const double sign = integral >= 0.0 ? 1.0 : -1.0;
    out.value += half * std::abs(integral);
    for (int n = 0; n <= p; ++n) out.gradient[n] += sign * half * basis_int[n];
  }
  return out;
}

void normalize(std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  s = std::sqrt(s);
  for (double& v : a) v /= s;
}

// Riemannian gradient descent on the unit sphere with backtracking.
double descend(std::vector<double> a) {
  normalize(a);
  L1Eval cur = unit_l1(a);
  double step = 0.1;
  for (int iter = 0; iter < 2000; ++iter) {
    double radial = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) radial += cur.gradient[n] * a[n];
    std::vector<double> tangent(a.size());
    double gnorm2 = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
      tangent[n] = cur.gradient[n] - radial * a[n];
      gnorm2 += tangent[n] * tangent[n];
    }
    if (gnorm2 < 1e-26) break;
    bool moved = false;
    while (step > 1e-16) {
      std::vector<double> trial(a.size());
      for (std::size_t n = 0; n < a.size(); ++n) trial[n] = a[n] - step * tangent[n];
      normalize(trial);
      L1Eval next = unit_l1(trial);
      if (next.value <= cur.value - 1e-4 * step * gnorm2) {
        a = std::move(trial);
        cur = std::move(next);
        step *= 2.0;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return cur.value;
}

double c12_uncached(int p) {
  if (p == 0) return 1.0;
  double best = std::numeric_limits<double>::infinity();

  // Fine parameterization of the sphere for low degree, polished by descent.
  if (p == 1) {
    const int steps = 4000;
    double best_theta = 0.0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int j = 0; j < steps; ++j) {
      const double th = std::numbers::pi * j / steps;
      const std::array<double, 2> a{std::cos(th), std::sin(th)};
      const double v = unit_l1(a).value;
      if (v < best_val) {
        best_val = v;
        best_theta = th;
      }
    }
    best = std::min(best, descend({std::cos(best_theta), std::sin(best_theta)}));
  } else if (p == 2) {
    const int steps = 100;
    std::vector<double> arg;
    double best_val = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= steps; ++j) {
      const double th = 0.5 * std::numbers::pi * j / steps;
      for (int k = 0; k < 4 * steps; ++k) {
        const double ph = 2.0 * std::numbers::pi * k / (4 * steps);
        const std::array<double, 3> a{std::cos(th), std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph)};
        const double v = unit_l1(a).value;
        if (v < best_val) {
          best_val = v;
          arg.assign(a.begin(), a.end());
        }
      }
    }
    best = std::min(best, descend(arg));
  }

  // Random restarts for every degree.
  std::mt19937_64 gen(0x5eedc12ULL + static_cast<std::uint64_t>(p));
  const auto uniform = [&gen] { return 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0; };
  for (int start = 0; start < 24; ++start) {
    std::vector<double> a(p + 1);
    for (double& v : a) v = uniform();
    best = std::min(best, descend(std::move(a)));
  }
  return best;
}

}  // namespace

double compute_c12(int p) {
  check_degree(p, "compute_c12");
  static std::array<std::once_flag, kMaxDegree + 1> once;
  static std::array<double, kMaxDegree + 1> values{};
  std::call_once(once[p], [p] { values[p] = c12_uncached(p); });
  return values[p];
}

double rate_estimate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw ArgumentError("rate_estimate: need at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto [h, v] = points[j];
    if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("rate_estimate: h must be positive");
    if (j > 0 && !(h < points[j - 1].first)) {
      throw ArgumentError("rate_estimate: h must be strictly decreasing");
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ArgumentError("rate_estimate: nonpositive value " + std::to_string(v) +
                          " (floor and exclude before fitting)");
    }
    sx += std::log(h);
    sy += std::log(v);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [h, v] : points) {
    const double dx = std::log(h) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  return sxy / sxx;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Smooth:
      return "smooth";
    case Verdict::RateLoss:
      return "rate_loss";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

AuditRun run_one(const SmoothFunction& f, const NamedBuilder& builder, int p, int n, const QForm& q) {
  const UniformPartition part(f.a(), f.b(), n);
  const PiecewisePolynomial u = builder.build(f, part, p);
  if (u.degree() != p || !(u.partition() == part)) {
    throw ArgumentError("builder " + builder.name + " returned a mismatched approximant");
  }
  const IndicatorSet ind = compute_indicators(u);
  const QAggregates agg = q_aggregates(ind, q);
  const InfinityNorms inf = norm_infinity(ind);
  return AuditRun{n,
                  part.h(),
                  error_norm(f, u, NormKind::L1),
                  error_norm(f, u, NormKind::L2),
                  error_norm(f, u, NormKind::Linf),
                  agg.sum_hQ,
                  agg.sum_h_sqrtQ,
                  agg.max_sqrtQ,
                  inf.max_D,
                  inf.max_M,
                  norm_h(ind),
                  norm_l1(ind)};
}

std::optional<double> fit_above(const std::vector<AuditRun>& runs, double AuditRun::*field, double floor) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : runs) {
    if (r.*field > floor) pts.emplace_back(r.h, r.*field);
  }
  if (pts.size() < 3) return std::nullopt;
  return rate_estimate(pts);
}

}  // namespace

AuditReport audit(const SmoothFunction& f, const NamedBuilder& builder, int p,
                  std::span<const int> n_list, const AuditOptions& options) {
  check_degree(p, "audit");
  if (n_list.size() < 3) throw ArgumentError("audit: N list needs at least 3 entries");
  for (std::size_t j = 1; j < n_list.size(); ++j) {
    if (n_list[j] <= n_list[j - 1]) throw ArgumentError("audit: N list must be strictly increasing");
  }
  if (!(options.beta_max > 0.0) || !std::isfinite(options.beta_max)) {
    throw ArgumentError("audit: beta_max must be positive and finite");
  }
  if (!(options.rate_slack >= 0.0) || !std::isfinite(options.rate_slack)) {
    throw ArgumentError("audit: rate_slack must be nonnegative and finite");
  }
  if (!builder.build) throw ArgumentError("audit: empty builder");

  const QForm q = assemble_qform(p);
  const std::size_t count = n_list.size();
  std::vector<AuditRun> runs(count);
  std::vector<std::exception_ptr> failures(count);

  const auto work = [&](std::size_t j) {
    try {
      runs[j] = run_one(f, builder, p, n_list[j], q);
    } catch (const std::exception& e) {
      failures[j] = std::make_exception_ptr(std::runtime_error(
          "audit run N=" + std::to_string(n_list[j]) + " (builder " + builder.name + "): " + e.what()));
    }
  };

  const std::size_t workers = std::min<std::size_t>(options.threads > 0 ? options.threads : 0, count);
  if (workers <= 1) {
    for (std::size_t j = 0; j < count; ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < count; j = next++) work(j);
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  AuditReport report;
  report.function = f.name();
  report.builder = builder.name;
  report.degree = p;
  report.runs = std::move(runs);
  report.rate_L2 = fit_above(report.runs, &AuditRun::err_L2, options.error_floor);
  report.beta = fit_above(report.runs, &AuditRun::sum_hQ, options.indicator_floor);
  report.beta_sqrt = fit_above(report.runs, &AuditRun::sum_h_sqrtQ, std::sqrt(options.indicator_floor));
  report.beta_max = fit_above(report.runs, &AuditRun::max_sqrtQ, std::sqrt(options.indicator_floor));
  for (auto* b : {&report.beta, &report.beta_sqrt, &report.beta_max}) {
    if (*b) **b = -**b;
  }

  const double beta = report.beta.value_or(0.0);
  const bool rate_ok = !report.rate_L2 || *report.rate_L2 >= p + 1 - options.rate_slack;
  if (beta > options.beta_max) {
    report.verdict = Verdict::RateLoss;
    report.predicted_rate = p + 1 - beta / 2.0;
  } else if (rate_ok) {
    report.verdict = Verdict::Smooth;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

}  // namespace numsmooth
