// numsmooth: command-line front end for the smoothness-indicator toolkit.
//
// Exit codes: 0 success (audit verdict smooth, or any non-audit command),
// 1 usage or runtime error, 2 audit verdict rate_loss, 3 inconclusive.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "numsmooth/bounds.hpp"
#include "numsmooth/errors.hpp"
#include "numsmooth/generators.hpp"
#include "numsmooth/qform.hpp"
#include "numsmooth/report.hpp"
#include "numsmooth/smoothness.hpp"
#include "numsmooth/solution_io.hpp"

namespace {

using namespace numsmooth;

constexpr int kExitError = 1;
constexpr int kExitRateLoss = 2;
constexpr int kExitInconclusive = 3;

struct RunConfig {
  std::string input;
  std::string output;
  int p = 1;
  int n_cells = 32;
  std::vector<int> n_list;
  std::string function = "sin";
  std::string builder = "project";
  std::string norm = "l2";
  int k = 1;
  double epsilon = 1.0;
  double delta = 0.5;
  std::string sign_mode = "random";
  double cfl = 0.1;
  double T = 1.0;
  double beta_max = 0.2;
  double rate_slack = 0.2;
  std::uint64_t seed = 1;
  std::string format = "csv";
  int threads = -1;
};

/// Raised for invalid option values; the message names the field.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ReportFormat report_format(const RunConfig& c) {
  return c.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
}

std::string n_list_string(const std::vector<int>& ns) {
  std::string s;
  for (std::size_t j = 0; j < ns.size(); ++j) s += (j ? "," : "") + std::to_string(ns[j]);
  return s;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw std::runtime_error("output: cannot open " + c.output);
  out << text;
}

RoughenSpec roughen_spec(const RunConfig& c) {
  RoughenSpec spec;
  spec.k = c.k;
  spec.epsilon = c.epsilon;
  spec.delta = c.delta;
  spec.seed = c.seed;
  spec.signs = c.sign_mode == "alternating" ? SignMode::Alternating : SignMode::Random;
  return spec;
}

void check_thresholds(const RunConfig& c) {
  if (!std::isfinite(c.beta_max) || !(c.beta_max > 0.0)) {
    throw UsageError("beta-max: threshold must be a positive finite number");
  }
  if (!std::isfinite(c.rate_slack) || c.rate_slack < 0.0 || c.rate_slack >= c.p + 1) {
    throw UsageError("rate-slack: threshold must lie in [0, p+1)");
  }
}

void check_roughen(const RunConfig& c) {
  if (c.k < 0 || c.k > c.p) throw UsageError("k: derivative order must lie in 0..p");
  if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon)) throw UsageError("epsilon: must be finite and >= 0");
  if (!(c.delta >= 0.0) || !(c.delta < c.p + 1)) throw UsageError("delta: must satisfy 0 <= delta < p+1");
}

NamedBuilder make_builder(const RunConfig& c) {
  if (c.builder == "project") return projection_builder();
  if (c.builder == "interpolant") return interpolant_builder();
  if (c.builder == "roughen") {
    check_roughen(c);
    return roughen_builder(roughen_spec(c));
  }
  if (c.builder == "dg") return dg_builder(c.cfl, c.T);
  throw UsageError("builder: unknown builder \"" + c.builder + "\"");
}

ConfigEcho builder_echo(const RunConfig& c) {
  ConfigEcho e;
  if (c.builder == "roughen") {
    e.emplace_back("k", std::to_string(c.k));
    e.emplace_back("epsilon", format_real(c.epsilon));
    e.emplace_back("delta", format_real(c.delta));
    e.emplace_back("sign_mode", c.sign_mode);
  } else if (c.builder == "dg") {
    e.emplace_back("cfl", format_real(c.cfl));
    e.emplace_back("T", format_real(c.T));
  }
  return e;
}

int run_qform(const RunConfig& c) {
  const QForm q = assemble_qform(c.p);
  emit(c, format_qform(q, report_format(c), {{"subcommand", "qform"}, {"p", std::to_string(c.p)},
                                             {"format", c.format}}));
  return 0;
}

int run_indicators(const RunConfig& c) {
  const PiecewisePolynomial u = read_solution_file(c.input);
  const IndicatorSet ind = compute_indicators(u);
  const QForm q = assemble_qform(u.degree());
  emit(c, format_indicators(u, ind, q, report_format(c),
                            {{"subcommand", "indicators"}, {"input", c.input}, {"format", c.format}}));
  return 0;
}

NormKind parse_norm(const std::string& s) {
  if (s == "l1") return NormKind::L1;
  if (s == "l2") return NormKind::L2;
  if (s == "linf") return NormKind::Linf;
  throw UsageError("norm: expected l1, l2 or linf");
}

int run_chain(const RunConfig& c) {
  const PiecewisePolynomial u = read_solution_file(c.input);
  const SmoothFunction f = catalog(c.function, u.degree(), c.seed);
  const ChainRecord rec = chain(f, u, parse_norm(c.norm));
  emit(c, format_chain(rec, report_format(c),
                       {{"subcommand", "chain"},
                        {"input", c.input},
                        {"function", c.function},
                        {"norm", c.norm},
                        {"seed", std::to_string(c.seed)},
                        {"format", c.format}}));
  return 0;
}

int run_audit(const RunConfig& c) {
  check_thresholds(c);
  const SmoothFunction f = catalog(c.function, c.p, c.seed);
  const NamedBuilder builder = make_builder(c);
  AuditOptions opts;
  opts.beta_max = c.beta_max;
  opts.rate_slack = c.rate_slack;
  opts.threads = c.threads;
  if (opts.threads < 0) {
    const char* env = std::getenv("SMOOTHNESS_AUDIT_THREADS");
    opts.threads = env ? std::atoi(env) : 0;
  }
  const AuditReport report = audit(f, builder, c.p, c.n_list, opts);

  ConfigEcho echo{{"subcommand", "audit"}, {"function", c.function}, {"builder", c.builder},
                  {"p", std::to_string(c.p)},   {"N_list", n_list_string(c.n_list)}};
  for (auto& kv : builder_echo(c)) echo.push_back(std::move(kv));
  echo.emplace_back("beta_max", format_real(c.beta_max));
  echo.emplace_back("rate_slack", format_real(c.rate_slack));
  echo.emplace_back("seed", std::to_string(c.seed));
  echo.emplace_back("format", c.format);
  emit(c, format_audit(report, report_format(c), echo));

  switch (report.verdict) {
    case Verdict::Smooth:
      return 0;
    case Verdict::RateLoss:
      return kExitRateLoss;
    case Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitError;
}

int run_generate(const RunConfig& c) {
  if (c.builder == "dg") throw UsageError("builder: use the dg-run subcommand for DG solutions");
  const SmoothFunction f = catalog(c.function, c.p, c.seed);
  const UniformPartition part(f.a(), f.b(), c.n_cells);
  emit(c, solution_to_string(make_builder(c).build(f, part, c.p)));
  return 0;
}

int run_dg(const RunConfig& c) {
  const SmoothFunction f = catalog(c.function, c.p, c.seed);
  emit(c, solution_to_string(dg_advection(c.p, c.n_cells, c.cfl, c.T, f)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical smoothness indicators and convergence-rate audits for 1-D piecewise polynomials"};
  app.require_subcommand(1);
  RunConfig c;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", c.output, "Output path (default: stdout)");
  };
  const auto add_roughen = [&](CLI::App* sub) {
    sub->add_option("--k", c.k, "Roughened derivative order");
    sub->add_option("--epsilon", c.epsilon, "Roughening amplitude");
    sub->add_option("--delta", c.delta, "Rate deficiency injected into the jumps");
    sub->add_option("--sign-mode", c.sign_mode, "Per-cell sign pattern")
        ->check(CLI::IsMember({"random", "alternating"}));
  };
  const std::vector<std::string> functions = catalog_names();

  auto* qform = app.add_subcommand("qform", "Print the Q-form matrix for degree p");
  qform->add_option("--p", c.p, "Polynomial degree")->required();
  add_format(qform);
  add_output(qform);

  auto* indicators = app.add_subcommand("indicators", "Smoothness indicators of a solution file");
  indicators->add_option("file", c.input, "Solution file")->required();
  add_format(indicators);
  add_output(indicators);

  auto* chain_cmd = app.add_subcommand("chain", "Evaluate a lower-bound chain for a solution file");
  chain_cmd->add_option("file", c.input, "Solution file")->required();
  chain_cmd->add_option("--function", c.function, "Reference function")->required()->check(CLI::IsMember(functions));
  chain_cmd->add_option("--norm", c.norm, "Norm")->required()->check(CLI::IsMember({"l1", "l2", "linf"}));
  chain_cmd->add_option("--seed", c.seed, "Seed for the poly catalog entry");
  add_format(chain_cmd);
  add_output(chain_cmd);

  auto* audit_cmd = app.add_subcommand("audit", "Convergence-rate audit across refinements");
  audit_cmd->add_option("--function", c.function, "Reference function")->check(CLI::IsMember(functions));
  audit_cmd->add_option("--builder", c.builder, "Approximant builder")
      ->check(CLI::IsMember({"project", "interpolant", "roughen", "dg"}));
  audit_cmd->add_option("--p", c.p, "Polynomial degree");
  audit_cmd->add_option("--N-list", c.n_list, "Cell counts, comma separated")->delimiter(',')->required();
  add_roughen(audit_cmd);
  audit_cmd->add_option("--cfl", c.cfl, "DG CFL number");
  audit_cmd->add_option("--T", c.T, "DG final time");
  audit_cmd->add_option("--beta-max", c.beta_max, "Largest indicator growth exponent still judged smooth");
  audit_cmd->add_option("--rate-slack", c.rate_slack, "Allowed shortfall of the L2 rate below p+1");
  audit_cmd->add_option("--seed", c.seed, "Seed for roughening signs and the poly catalog entry");
  audit_cmd->add_option("--threads", c.threads, "Worker threads (default: SMOOTHNESS_AUDIT_THREADS, 0 = serial)");
  add_format(audit_cmd);
  add_output(audit_cmd);

  auto* generate = app.add_subcommand("generate", "Write an approximant as a solution file");
  generate->add_option("--function", c.function, "Reference function")->check(CLI::IsMember(functions));
  generate->add_option("--builder", c.builder, "Approximant builder")
      ->check(CLI::IsMember({"project", "interpolant", "roughen"}));
  generate->add_option("--p", c.p, "Polynomial degree");
  generate->add_option("--N", c.n_cells, "Number of cells");
  generate->add_option("--seed", c.seed, "Seed");
  add_roughen(generate);
  add_output(generate);

  auto* dg = app.add_subcommand("dg-run", "Run the DG advection demo and write the final solution");
  dg->add_option("--function", c.function, "Initial data")->check(CLI::IsMember(functions));
  dg->add_option("--p", c.p, "Polynomial degree (1 or 2)");
  dg->add_option("--N", c.n_cells, "Number of cells");
  dg->add_option("--cfl", c.cfl, "CFL number");
  dg->add_option("--T", c.T, "Final time");
  dg->add_option("--seed", c.seed, "Seed for the poly catalog entry");
  add_output(dg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*qform) return run_qform(c);
    if (*indicators) return run_indicators(c);
    if (*chain_cmd) return run_chain(c);
    if (*audit_cmd) return run_audit(c);
    if (*generate) return run_generate(c);
    if (*dg) return run_dg(c);
  } catch (const FormatError& e) {
    std::cerr << "error: malformed solution document, field " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
