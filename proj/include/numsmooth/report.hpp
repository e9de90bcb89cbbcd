#pragma once

#include <string>
#include <utility>
#include <vector>

#include "numsmooth/bounds.hpp"
#include "numsmooth/qform.hpp"
#include "numsmooth/smoothness.hpp"

namespace numsmooth {

inline constexpr const char* kReportSchema = "smoothness-audit/1";

enum class ReportFormat { Csv, Json };

/// Ordered key/value echo of the run configuration. CSV reports carry it
/// in a leading '#' comment line, JSON reports under "config".
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string format_qform(const QForm& q, ReportFormat format, const ConfigEcho& config);

/// Per-interior-node rows (node_index, x, J0..Jp, D0..Dp) plus summary
/// norms and Q aggregates.
std::string format_indicators(const PiecewisePolynomial& u, const IndicatorSet& ind, const QForm& q,
                              ReportFormat format, const ConfigEcho& config);

std::string format_chain(const ChainRecord& rec, ReportFormat format, const ConfigEcho& config);

std::string format_audit(const AuditReport& report, ReportFormat format, const ConfigEcho& config);

}  // namespace numsmooth
