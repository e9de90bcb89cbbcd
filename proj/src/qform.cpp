#include "numsmooth/qform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "numsmooth/errors.hpp"
#include "numsmooth/piecewise_poly.hpp"
#include "numsmooth/quadrature.hpp"

namespace numsmooth {

namespace {

using RationalMatrix = std::vector<mpq_class>;

mpq_class factorial_q(int k) {
  mpq_class r = 1;
  for (int j = 2; j <= k; ++j) r *= j;
  return r;
}

// ∫_{-1/2}^{1/2} xi^m dxi (even moments) and ∫ sign(xi) xi^m dxi (odd moments).
mpq_class half_power_moment(int m) {
  mpz_class pow2 = 1;
  pow2 <<= m;
  return mpq_class(1) / (mpq_class(pow2) * (m + 1));
}

mpq_class even_moment(int m) { return m % 2 == 0 ? half_power_moment(m) : mpq_class(0); }
mpq_class odd_moment(int m) { return m % 2 == 1 ? half_power_moment(m) : mpq_class(0); }

// Solves G X = B exactly for square n x n G (nonsingular), B n x n.
RationalMatrix solve_exact(RationalMatrix g, RationalMatrix b, int n) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && g[piv * n + c] == 0) ++piv;
    if (piv == n) throw std::logic_error("solve_exact: singular Gram matrix");
    if (piv != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(g[piv * n + k], g[c * n + k]);
        std::swap(b[piv * n + k], b[c * n + k]);
      }
    }
    const mpq_class inv = 1 / g[c * n + c];
    for (int k = 0; k < n; ++k) {
      g[c * n + k] *= inv;
      b[c * n + k] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || g[r * n + c] == 0) continue;
      const mpq_class f = g[r * n + c];
      for (int k = 0; k < n; ++k) {
        g[r * n + k] -= f * g[c * n + k];
        b[r * n + k] -= f * b[c * n + k];
      }
    }
  }
  return b;
}

// Unit lower L (row-major) and pivots d with M = L diag(d) L^T, no pivoting.
// Stops early (returning fewer pivots) at the first nonpositive pivot.
void ldlt_exact(const RationalMatrix& m, int n, RationalMatrix* lower, std::vector<mpq_class>* pivots) {
  RationalMatrix work = m;
  RationalMatrix l(static_cast<std::size_t>(n) * n, mpq_class(0));
  pivots->clear();
  for (int k = 0; k < n; ++k) {
    const mpq_class d = work[k * n + k];
    pivots->push_back(d);
    if (d <= 0) break;
    l[k * n + k] = 1;
    for (int i = k + 1; i < n; ++i) l[i * n + k] = work[i * n + k] / d;
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) work[i * n + j] -= l[i * n + k] * work[k * n + j];
    }
  }
  if (lower) *lower = std::move(l);
}

bool positive_definite_shifted(const QForm& q, const mpq_class& shift) {
  const auto piv = ldlt_pivots(q, shift);
  if (static_cast<int>(piv.size()) != q.size()) return false;
  for (const auto& d : piv) {
    if (d <= 0) return false;
  }
  return true;
}

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

}  // namespace

QForm assemble_qform(int p) {
  check_degree(p, "assemble_qform");
  const int n = p + 1;
  RationalMatrix gram(n * n), coupling(n * n), constant(n * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      gram[j * n + k] = even_moment(j + k);
      coupling[j * n + k] = odd_moment(j + k) / (2 * factorial_q(k));
      constant[j * n + k] = even_moment(j + k) / (4 * factorial_q(j) * factorial_q(k));
    }
  }
  const RationalMatrix x = solve_exact(gram, coupling, n);

  QForm q;
  q.degree_ = p;
  q.exact_.resize(n * n);
  q.approx_.resize(n * n);
  q.minimizer_map_.resize(n * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      mpq_class btgb = 0;
      for (int i = 0; i < n; ++i) btgb += coupling[i * n + j] * x[i * n + k];
      q.exact_[j * n + k] = constant[j * n + k] - btgb;
      q.exact_[j * n + k].canonicalize();
      q.approx_[j * n + k] = q.exact_[j * n + k].get_d();
      q.minimizer_map_[j * n + k] = x[j * n + k].get_d();
    }
  }

  RationalMatrix lower;
  std::vector<mpq_class> pivots;
  ldlt_exact(q.exact_, n, &lower, &pivots);
  if (static_cast<int>(pivots.size()) != n || pivots.back() <= 0) {
    throw std::logic_error("assemble_qform: exact factorization found a nonpositive pivot");
  }
  // root_(k, j) = sqrt(d_k) * L(j, k), so Q(D) = sum_k (root_ row k . D)^2.
  q.root_.assign(n * n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double sd = std::sqrt(pivots[k].get_d());
    for (int j = k; j < n; ++j) q.root_[k * n + j] = sd * lower[j * n + k].get_d();
  }
  return q;
}

std::vector<double> QForm::minimizer(std::span<const double> D) const {
  if (static_cast<int>(D.size()) != size()) throw ArgumentError("QForm::minimizer: length mismatch");
  std::vector<double> v(size(), 0.0);
  for (int j = 0; j < size(); ++j) {
    for (int k = 0; k < size(); ++k) v[j] += minimizer_map_[index(j, k)] * D[k];
  }
  return v;
}

double eval_q(const QForm& q, std::span<const double> D) {
  const int n = q.size();
  if (static_cast<int>(D.size()) != n) {
    throw ArgumentError("eval_q: expected " + std::to_string(n) + " entries, got " +
                        std::to_string(D.size()));
  }
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    double row = 0.0;
    for (int j = k; j < n; ++j) row += q.root_[k * n + j] * D[j];
    sum += row * row;
  }
  return sum;
}

double qform_objective(std::span<const double> D, std::span<const double> V) {
  std::vector<double> g(D.size());
  double fact = 1.0;
  for (std::size_t k = 0; k < D.size(); ++k) {
    if (k > 1) fact *= static_cast<double>(k);
    g[k] = 0.5 * D[k] / fact;
  }
  const int degree = static_cast<int>(std::max(D.size(), V.size()));
  const GaussRule& rule = gauss_legendre(degree + 2);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double left = -0.25 + 0.25 * rule.nodes[i];
    const double right = 0.25 + 0.25 * rule.nodes[i];
    const double el = horner(V, left) + horner(g, left);
    const double er = horner(V, right) - horner(g, right);
    total += 0.25 * rule.weights[i] * (el * el + er * er);
  }
  return total;
}

double brute_force_q(int p, std::span<const double> D) {
  check_degree(p, "brute_force_q");
  if (static_cast<int>(D.size()) != p + 1) throw ArgumentError("brute_force_q: length mismatch");
  std::vector<double> g(p + 1);
  double fact = 1.0;
  for (int k = 0; k <= p; ++k) {
    if (k > 1) fact *= k;
    g[k] = 0.5 * D[k] / fact;
  }
  Eigen::MatrixXd basis(kBruteForceSamples, p + 1);
  Eigen::VectorXd target(kBruteForceSamples);
  for (int j = 0; j < kBruteForceSamples; ++j) {
    const double xi = -0.5 + (j + 0.5) / kBruteForceSamples;
    double pw = 1.0;
    for (int k = 0; k <= p; ++k) {
      basis(j, k) = pw;
      pw *= 2.0 * xi;
    }
    target(j) = (xi < 0.0 ? -1.0 : 1.0) * horner(g, xi);
  }
  const Eigen::VectorXd w = basis.householderQr().solve(target);
  std::vector<double> v(p + 1);
  double scale = 1.0;
  for (int k = 0; k <= p; ++k) {
    v[k] = w(k) * scale;
    scale *= 2.0;
  }
  return qform_objective(D, v);
}

std::vector<mpq_class> ldlt_pivots(const QForm& q, const mpq_class& shift) {
  const int n = q.size();
  RationalMatrix m(q.exact_matrix().begin(), q.exact_matrix().end());
  for (int i = 0; i < n; ++i) m[i * n + i] -= shift;
  std::vector<mpq_class> pivots;
  ldlt_exact(m, n, nullptr, &pivots);
  return pivots;
}

std::vector<mpq_class> leading_principal_minors(const QForm& q) {
  const auto piv = ldlt_pivots(q);
  std::vector<mpq_class> minors;
  mpq_class prod = 1;
  for (const auto& d : piv) {
    prod *= d;
    minors.push_back(prod);
  }
  // An early stop means a nonpositive pivot; later minors are not computed.
  return minors;
}

mpq_class certified_min_eigenvalue(const QForm& q) {
  const int n = q.size();
  mpq_class gershgorin;
  mpq_class min_diag;
  for (int i = 0; i < n; ++i) {
    mpq_class radius = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i) radius += abs(q.exact(i, j));
    }
    const mpq_class lower = q.exact(i, i) - radius;
    if (i == 0 || lower < gershgorin) gershgorin = lower;
    if (i == 0 || q.exact(i, i) < min_diag) min_diag = q.exact(i, i);
  }

  // Largest power-of-two fraction of min_diag at which A - tI stays definite.
  mpq_class lo = min_diag;
  int halvings = 0;
  while (!positive_definite_shifted(q, lo)) {
    lo /= 2;
    if (++halvings > 400) throw std::logic_error("certified_min_eigenvalue: matrix not definite");
  }
  mpq_class hi = lo * 2;
  for (int iter = 0; iter < 48; ++iter) {
    mpq_class mid = (lo + hi) / 2;
    if (positive_definite_shifted(q, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return gershgorin > lo ? gershgorin : lo;
}

double min_eigenvalue_lower_bound(const QForm& q) {
  // mpq_get_d truncates toward zero, i.e. rounds a positive bound down.
  return certified_min_eigenvalue(q).get_d();
}

double max_eigenvalue_upper_bound(const QForm& q) {
  const int n = q.size();
  mpq_class best;
  for (int i = 0; i < n; ++i) {
    mpq_class row = 0;
    for (int j = 0; j < n; ++j) row += abs(q.exact(i, j));
    if (i == 0 || row > best) best = row;
  }
  const double d = best.get_d();
  return mpq_class(d) >= best ? d : std::nextafter(d, std::numeric_limits<double>::infinity());
}

}  // namespace numsmooth
