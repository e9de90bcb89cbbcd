#include "numsmooth/report.hpp"

#include <cmath>

#include "json.hpp"

#include "numsmooth/solution_io.hpp"

namespace numsmooth {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string config_comment(const ConfigEcho& config) {
  std::string line = std::string("# ") + kReportSchema + " config:";
  for (const auto& [k, v] : config) line += " " + k + "=" + v;
  return line + "\n";
}

ordered_json config_json(const ConfigEcho& config) {
  ordered_json obj = ordered_json::object();
  for (const auto& [k, v] : config) obj[k] = v;
  return obj;
}

ordered_json header_json(const char* kind, const ConfigEcho& config) {
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["kind"] = kind;
  doc["config"] = config_json(config);
  return doc;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ",";
    out += c;
    first = false;
  }
  return out + "\n";
}

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : std::string("nan"); }

ordered_json opt_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

const char* norm_name(NormKind n) {
  switch (n) {
    case NormKind::L1:
      return "l1";
    case NormKind::L2:
      return "l2";
    case NormKind::Linf:
      return "linf";
  }
  return "?";
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string format_qform(const QForm& q, ReportFormat format, const ConfigEcho& config) {
  const int n = q.size();
  if (format == ReportFormat::Json) {
    ordered_json doc = header_json("qform", config);
    doc["degree"] = q.degree();
    ordered_json exact = ordered_json::array();
    ordered_json approx = ordered_json::array();
    for (int j = 0; j < n; ++j) {
      ordered_json er = ordered_json::array();
      ordered_json ar = ordered_json::array();
      for (int k = 0; k < n; ++k) {
        er.push_back(q.exact(j, k).get_str());
        ar.push_back(q(j, k));
      }
      exact.push_back(er);
      approx.push_back(ar);
    }
    doc["exact"] = exact;
    doc["decimal"] = approx;
    doc["min_eigenvalue_lower_bound"] = min_eigenvalue_lower_bound(q);
    doc["max_eigenvalue_upper_bound"] = max_eigenvalue_upper_bound(q);
    return dump(doc);
  }
  std::string out = config_comment(config);
  out += "row,col,exact,decimal\n";
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      out += csv_row({std::to_string(j), std::to_string(k), q.exact(j, k).get_str(), format_real(q(j, k))});
    }
  }
  out += "# min_eigenvalue_lower_bound=" + format_real(min_eigenvalue_lower_bound(q)) +
         " max_eigenvalue_upper_bound=" + format_real(max_eigenvalue_upper_bound(q)) + "\n";
  return out;
}

std::string format_indicators(const PiecewisePolynomial& u, const IndicatorSet& ind, const QForm& q,
                              ReportFormat format, const ConfigEcho& config) {
  const int p = ind.degree();
  const InfinityNorms inf = norm_infinity(ind);
  const QAggregates agg = q_aggregates(ind, q);
  const double nh = norm_h(ind);
  const double nl1 = norm_l1(ind);

  if (format == ReportFormat::Json) {
    ordered_json doc = header_json("indicators", config);
    doc["degree"] = p;
    doc["n_cells"] = ind.n_cells();
    doc["h"] = ind.h();
    ordered_json nodes = ordered_json::array();
    for (int j = 0; j < ind.interior_nodes(); ++j) {
      ordered_json row;
      row["node_index"] = j + 1;
      row["x"] = u.partition().node(j + 1);
      row["J"] = std::vector<double>(ind.J_row(j).begin(), ind.J_row(j).end());
      row["D"] = std::vector<double>(ind.D_row(j).begin(), ind.D_row(j).end());
      nodes.push_back(row);
    }
    doc["nodes"] = nodes;
    doc["summary"] = {{"max_M", inf.max_M},        {"max_D", inf.max_D},
                      {"norm_h", nh},              {"norm_l1", nl1},
                      {"sum_hQ", agg.sum_hQ},      {"sum_h_sqrtQ", agg.sum_h_sqrtQ},
                      {"max_sqrtQ", agg.max_sqrtQ}};
    return dump(doc);
  }

  std::string out = config_comment(config);
  out += "node_index,x";
  for (int k = 0; k <= p; ++k) out += ",J" + std::to_string(k);
  for (int k = 0; k <= p; ++k) out += ",D" + std::to_string(k);
  out += "\n";
  for (int j = 0; j < ind.interior_nodes(); ++j) {
    out += std::to_string(j + 1) + "," + format_real(u.partition().node(j + 1));
    for (double v : ind.J_row(j)) out += "," + format_real(v);
    for (double v : ind.D_row(j)) out += "," + format_real(v);
    out += "\n";
  }
  out += "# summary: max_M=" + format_real(inf.max_M) + " max_D=" + format_real(inf.max_D) +
         " norm_h=" + format_real(nh) + " norm_l1=" + format_real(nl1) +
         " sum_hQ=" + format_real(agg.sum_hQ) + " sum_h_sqrtQ=" + format_real(agg.sum_h_sqrtQ) +
         " max_sqrtQ=" + format_real(agg.max_sqrtQ) + "\n";
  return out;
}

std::string format_chain(const ChainRecord& rec, ReportFormat format, const ConfigEcho& config) {
  if (format == ReportFormat::Json) {
    ordered_json doc = header_json("chain", config);
    doc["norm"] = norm_name(rec.norm);
    doc["err"] = rec.err;
    doc["proj_err"] = rec.proj_err;
    doc["mid_term"] = rec.mid_term;
    doc["bound_term"] = rec.bound_term;
    doc["triangle_holds"] = rec.triangle_holds();
    doc["bound_holds"] = rec.bound_holds();
    return dump(doc);
  }
  std::string out = config_comment(config);
  out += "norm,err,proj_err,mid_term,bound_term,triangle_holds,bound_holds\n";
  out += csv_row({norm_name(rec.norm), format_real(rec.err), format_real(rec.proj_err),
                  format_real(rec.mid_term), format_real(rec.bound_term),
                  rec.triangle_holds() ? "true" : "false", rec.bound_holds() ? "true" : "false"});
  return out;
}

std::string format_audit(const AuditReport& report, ReportFormat format, const ConfigEcho& config) {
  if (format == ReportFormat::Json) {
    ordered_json doc = header_json("audit", config);
    doc["function"] = report.function;
    doc["builder"] = report.builder;
    doc["degree"] = report.degree;
    ordered_json runs = ordered_json::array();
    for (const auto& r : report.runs) {
      runs.push_back({{"N", r.n_cells},
                      {"h", r.h},
                      {"err_L1", r.err_L1},
                      {"err_L2", r.err_L2},
                      {"err_Linf", r.err_Linf},
                      {"sum_hQ", r.sum_hQ},
                      {"sum_h_sqrtQ", r.sum_h_sqrtQ},
                      {"max_sqrtQ", r.max_sqrtQ},
                      {"maxD", r.max_D},
                      {"maxM", r.max_M},
                      {"norm_h", r.norm_h},
                      {"norm_l1", r.norm_l1}});
    }
    doc["runs"] = runs;
    doc["fits"] = {{"rate_L2", opt_json(report.rate_L2)},
                   {"beta", opt_json(report.beta)},
                   {"beta_sqrt", opt_json(report.beta_sqrt)},
                   {"beta_max", opt_json(report.beta_max)}};
    doc["verdict"] = to_string(report.verdict);
    doc["predicted_rate"] = opt_json(report.predicted_rate);
    return dump(doc);
  }
  std::string out = config_comment(config);
  out += "N,h,err_L1,err_L2,err_Linf,sum_hQ,sum_h_sqrtQ,max_sqrtQ,maxD,maxM,norm_h,norm_l1\n";
  for (const auto& r : report.runs) {
    out += csv_row({std::to_string(r.n_cells), format_real(r.h), format_real(r.err_L1),
                    format_real(r.err_L2), format_real(r.err_Linf), format_real(r.sum_hQ),
                    format_real(r.sum_h_sqrtQ), format_real(r.max_sqrtQ), format_real(r.max_D),
                    format_real(r.max_M), format_real(r.norm_h), format_real(r.norm_l1)});
  }
  out += "# fit: rate_L2=" + opt(report.rate_L2) + " beta=" + opt(report.beta) +
         " beta_sqrt=" + opt(report.beta_sqrt) + " beta_max=" + opt(report.beta_max) + "\n";
  out += std::string("# verdict: ") + to_string(report.verdict);
  if (report.predicted_rate) out += " predicted_rate=" + format_real(*report.predicted_rate);
  out += "\n";
  return out;
}

}  // namespace numsmooth
