// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--criterion N] [--cli PATH] [--workdir DIR]
//
// Without --criterion all nine criteria run. Criterion 9 needs --cli for the
// command-line reproducibility half; without it that half is reported as FAIL.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "numsmooth/bounds.hpp"
#include "numsmooth/generators.hpp"
#include "numsmooth/qform.hpp"
#include "numsmooth/smoothness.hpp"
#include "numsmooth/solution_io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace numsmooth;
using namespace numsmooth::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Settings {
  std::string cli;
  fs::path workdir = fs::temp_directory_path() / "numsmooth_acceptance";
};

Outcome qform_exactness(const Settings&) {
  Outcome o;
  const QForm q0 = assemble_qform(0);
  const QForm q1 = assemble_qform(1);
  o.require(q0.exact(0, 0) == mpq_class(1, 4), "A(0) = [1/4]");
  o.require(q1.exact(0, 0) == mpq_class(1, 16) && q1.exact(1, 1) == mpq_class(1, 192) && q1.exact(0, 1) == 0 &&
                q1.exact(1, 0) == 0,
            "A(1) = diag(1/16, 1/192)");
  std::mt19937_64 gen(1);
  double worst = 0.0;
  for (int p = 0; p <= 4; ++p) {
    const QForm q = assemble_qform(p);
    for (int t = 0; t < 100; ++t) {
      const auto d = random_vector(gen, p + 1);
      const double e = eval_q(q, d);
      worst = std::max(worst, std::abs(e - brute_force_q(p, d)) / std::max(e, 1e-12));
    }
  }
  o.require(worst <= 1e-6, "oracle agreement 1e-6");
  o.note("max oracle rel diff " + fmt("%.2e", worst));
  return o;
}

Outcome positive_definiteness(const Settings&) {
  Outcome o;
  std::string bounds;
  for (int p = 0; p <= kMaxDegree; ++p) {
    const QForm q = assemble_qform(p);
    const mpq_class lam = certified_min_eigenvalue(q);
    bool psd = true;
    for (const auto& piv : ldlt_pivots(q, lam)) psd = psd && sgn(piv) >= 0;
    const double lo = min_eigenvalue_lower_bound(q);
    o.require(sgn(lam) > 0 && lo > 0.0 && psd, "p=" + std::to_string(p) + " certified bound > 0");
    bounds += (p ? " " : "") + fmt("%.2e", lo);
  }
  o.note("lambda_min lower bounds p=0..8: " + bounds);
  return o;
}

Outcome per_cell_identity(const Settings&) {
  Outcome o;
  std::mt19937_64 gen(3);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int p = t % 4;
    const PiecewisePolynomial u = random_piecewise(gen, p, 16);
    const QForm q = assemble_qform(p);
    const IndicatorSet ind = compute_indicators(u);
    const double scale = std::pow(u.partition().h(), 2 * p + 3);
    for (int node = 1; node < 16; ++node) {
      worst = std::max(worst, rel_diff(cell_min_distance_sq(u, node), scale * eval_q(q, ind.D_row(node - 1))));
    }
  }
  o.require(worst <= 1e-9, "relative error <= 1e-9");
  o.note("50 random u, max rel err " + fmt("%.2e", worst));
  return o;
}

const char* norm_label(NormKind n) { return n == NormKind::L1 ? "L1" : n == NormKind::L2 ? "L2" : "Linf"; }

// Runs the chain over the criterion-4 grid restricted to `norms`.
void chain_grid(Outcome& o, std::initializer_list<NormKind> norms) {
  int count = 0;
  double worst = -1e300;
  for (const char* name : {"sin", "exp", "runge"}) {
    const SmoothFunction f = catalog(name);
    for (const NamedBuilder& b : {projection_builder(), interpolant_builder()}) {
      for (int p : {1, 2}) {
        for (int n : {16, 32, 64, 128}) {
          const PiecewisePolynomial u = b.build(f, UniformPartition(0.0, 1.0, n), p);
          for (NormKind norm : norms) {
            const ChainRecord r = chain(f, u, norm);
            ++count;
            const double s1 = (r.mid_term - r.err - r.proj_err) / std::max(r.mid_term, 1e-300);
            const double s2 = (r.bound_term - r.mid_term) / std::max(r.bound_term, 1e-300);
            worst = std::max({worst, s1, s2});
            o.require(r.holds(), std::string(name) + "/" + b.name + "/p=" + std::to_string(p) +
                                     "/N=" + std::to_string(n) + "/" + norm_label(norm));
          }
        }
      }
    }
  }
  o.note(std::to_string(count) + " chains, worst relative violation " + fmt("%.2e", worst));
}

Outcome chain_inequalities(const Settings&) {
  Outcome o;
  chain_grid(o, {NormKind::L1, NormKind::L2, NormKind::Linf});
  return o;
}

Outcome smooth_audit(const Settings&) {
  Outcome o;
  const SmoothFunction f = catalog("sin");
  const std::vector<int> ns{16, 32, 64, 128};
  const AuditReport r1 = audit(f, projection_builder(), 1, ns);
  const AuditReport r2 = audit(f, projection_builder(), 2, ns);
  o.require(r1.rate_L2 && std::abs(*r1.rate_L2 - 2.0) <= 0.1, "p=1 rate 2 +- 0.1");
  o.require(r1.beta && *r1.beta <= 0.2, "p=1 beta <= 0.2");
  o.require(r1.verdict == Verdict::Smooth, "p=1 verdict smooth");
  o.require(r2.rate_L2 && std::abs(*r2.rate_L2 - 3.0) <= 0.1, "p=2 rate 3 +- 0.1");
  o.note("p=1 rate " + fmt("%.4f", r1.rate_L2.value_or(NAN)) + " beta " + fmt("%.4f", r1.beta.value_or(NAN)) +
         " " + to_string(r1.verdict) + "; p=2 rate " + fmt("%.4f", r2.rate_L2.value_or(NAN)) + " beta " +
         fmt("%.4f", r2.beta.value_or(NAN)) + " " + to_string(r2.verdict));
  return o;
}

Outcome rate_loss_detection(const Settings&) {
  Outcome o;
  const SmoothFunction f = catalog("exp");
  const std::vector<int> ns{16, 32, 64, 128, 256};
  for (std::uint64_t seed : {1, 2, 3}) {
    const AuditReport r = audit(f, roughen_builder({1, 1.0, 0.5, seed, SignMode::Random}), 1, ns);
    const std::string tag = "seed " + std::to_string(seed);
    o.require(r.verdict == Verdict::RateLoss, tag + " verdict rate_loss");
    o.require(r.rate_L2 && std::abs(*r.rate_L2 - 1.5) <= 0.15, tag + " rate 1.5 +- 0.15");
    o.require(r.beta && std::abs(*r.beta - 1.0) <= 0.3, tag + " beta 1.0 +- 0.3");
    o.note(tag + ": rate " + fmt("%.4f", r.rate_L2.value_or(NAN)) + " beta " + fmt("%.4f", r.beta.value_or(NAN)) +
           " " + to_string(r.verdict));
  }
  return o;
}

Outcome l1_constants(const Settings&) {
  Outcome o;
  o.require(compute_c12(0) == 1.0, "c(0) = 1 exactly");
  std::string values;
  for (int p = 0; p <= 4; ++p) {
    values += (p ? " " : "") + fmt("%.10f", compute_c12(p));
    if (p > 0) o.require(compute_c12(p) < compute_c12(p - 1), "c(" + std::to_string(p) + ") < c(p-1)");
  }
  const double grid = c12_linear_grid(2'000'000);
  o.require(std::abs(compute_c12(1) - grid) <= 1e-6, "c(1) matches grid oracle to 1e-6");
  o.note("c(0..4) = " + values + ", grid oracle c(1) = " + fmt("%.10f", grid));
  chain_grid(o, {NormKind::L1});
  return o;
}

Outcome dg_demonstration(const Settings&) {
  Outcome o;
  const SmoothFunction f = catalog("sin");
  const std::vector<int> ns{16, 32, 64, 128};
  // dg_builder starts from f shifted back by T = 1, a whole period: the
  // initial data is sin itself and the exact terminal solution is sin.
  const AuditReport r = audit(f, dg_builder(0.1, 1.0), 1, ns);
  o.require(r.rate_L2 && *r.rate_L2 >= 1.8, "terminal L2 rate >= 1.8");
  o.require(r.beta && *r.beta <= 0.3, "beta <= 0.3");
  o.note("rate " + fmt("%.4f", r.rate_L2.value_or(NAN)) + " beta " + fmt("%.4f", r.beta.value_or(NAN)));
  return o;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const Settings& s, const std::string& args, const fs::path& out) {
  const std::string cmd = "\"" + s.cli + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome round_trip_and_reproducibility(const Settings& s) {
  Outcome o;
  fs::create_directories(s.workdir);
  int files = 0;
  for (const char* name : {"sin", "exp", "runge", "poly"}) {
    const SmoothFunction f = catalog(name, 2, 7);
    for (int p = 0; p <= kMaxDegree; ++p) {
      const UniformPartition part(0.0, 1.0, 8 + p);
      std::vector<PiecewisePolynomial> us{project_l2(f, part, p), build_interpolant(f, part, p)};
      if (p >= 1) us.push_back(roughen(us[0], {1, 1.0, 0.5, 3, SignMode::Random}));
      if (p == 1 || p == 2) us.push_back(dg_advection(p, 8 + p, 0.1, 0.5, f));
      for (const auto& u : us) {
        const fs::path path = s.workdir / "round_trip.json";
        write_solution_file(path, u);
        o.require(read_solution_file(path) == u, std::string("bit-exact round trip ") + name);
        ++files;
      }
    }
  }
  o.note(std::to_string(files) + " solution files round-tripped");

  if (s.cli.empty()) {
    o.require(false, "CLI path not given");
    return o;
  }
  const fs::path sol = s.workdir / "gen.json";
  const std::vector<std::string> commands{
      "qform --p 3",
      "qform --p 2 --format json",
      "generate --function runge --builder roughen --p 2 --N 24 --k 1 --delta 0.5 --seed 5",
      "dg-run --function sin --p 2 --N 32 --cfl 0.1 --T 0.5",
      "indicators \"" + sol.string() + "\"",
      "chain \"" + sol.string() + "\" --function sin --norm l1 --format json",
      "audit --function sin --builder project --p 1 --N-list 16,32,64,128",
      "audit --function exp --builder roughen --p 1 --N-list 16,32,64,128,256 --k 1 --delta 0.5 --seed 2 "
      "--format json --threads 4",
      "audit --function sin --builder dg --p 1 --N-list 16,32,64"};
  if (run_cli(s, "generate --function sin --builder project --p 2 --N 16", sol) != 0) {
    o.require(false, "CLI generate");
    return o;
  }
  int identical = 0;
  for (const auto& cmd : commands) {
    const fs::path a = s.workdir / "run_a.txt";
    const fs::path b = s.workdir / "run_b.txt";
    const int ca = run_cli(s, cmd, a);
    const int cb = run_cli(s, cmd, b);
    const bool same = ca == cb && slurp(a) == slurp(b) && !slurp(a).empty();
    o.require(same, "byte-identical output for `" + cmd + "`");
    identical += same;
  }
  o.note(std::to_string(identical) + "/" + std::to_string(commands.size()) + " CLI commands byte-identical");
  return o;
}

struct Criterion {
  int number;
  const char* title;
  std::function<Outcome(const Settings&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  Settings settings;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--criterion") {
      only = std::atoi(argv[i + 1]);
    } else if (flag == "--cli") {
      settings.cli = argv[i + 1];
    } else if (flag == "--workdir") {
      settings.workdir = argv[i + 1];
    } else {
      std::fprintf(stderr, "unknown option %s\n", flag.c_str());
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "Q-form exactness", qform_exactness},
      {2, "positive definiteness", positive_definiteness},
      {3, "per-cell identity", per_cell_identity},
      {4, "chain inequalities", chain_inequalities},
      {5, "smooth audit", smooth_audit},
      {6, "rate-loss detection", rate_loss_detection},
      {7, "L1 constants", l1_constants},
      {8, "DG demonstration", dg_demonstration},
      {9, "file round trip and CLI reproducibility", round_trip_and_reproducibility},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    Outcome o;
    try {
      o = c.run(settings);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d [%s]: %s (%s)\n", c.number, c.title, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
