#include "numsmooth/solution_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "numsmooth/errors.hpp"

namespace numsmooth {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* field) {
  const auto it = doc.find(field);
  if (it == doc.end()) throw FormatError(field, "missing field");
  return *it;
}

double require_real(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number()) throw FormatError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw FormatError(field, "non-finite value");
  return d;
}

int require_int(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number_integer()) throw FormatError(field, "expected an integer");
  return v.get<int>();
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string solution_to_string(const PiecewisePolynomial& u) {
  const UniformPartition& part = u.partition();
  std::string out;
  out += "{\n";
  out += "  \"a\": " + format_real(part.a()) + ",\n";
  out += "  \"b\": " + format_real(part.b()) + ",\n";
  out += "  \"n_cells\": " + std::to_string(part.n_cells()) + ",\n";
  out += "  \"degree\": " + std::to_string(u.degree()) + ",\n";
  out += std::string("  \"basis\": \"") + kTaylorBasis + "\",\n";
  out += "  \"coeffs\": [\n";
  for (int i = 0; i < u.cell_count(); ++i) {
    out += "    [";
    const auto row = u.cell_coeffs(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ", ";
      out += format_real(row[k]);
    }
    out += i + 1 < u.cell_count() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

void write_solution(std::ostream& out, const PiecewisePolynomial& u) { out << solution_to_string(u); }

void write_solution_file(const std::filesystem::path& path, const PiecewisePolynomial& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_solution(out, u);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

PiecewisePolynomial parse_solution(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("document", e.what());
  }
  if (!doc.is_object()) throw FormatError("document", "expected a JSON object");

  const json& basis = require(doc, "basis");
  if (!basis.is_string()) throw FormatError("basis", "expected a string");
  if (basis.get<std::string>() != kTaylorBasis) {
    throw FormatError("basis", "unknown basis \"" + basis.get<std::string>() + "\"");
  }

  const double a = require_real(doc, "a");
  const double b = require_real(doc, "b");
  const int n = require_int(doc, "n_cells");
  const int p = require_int(doc, "degree");
  if (!(b > a)) throw FormatError("b", "must exceed a");
  if (n < 2) throw FormatError("n_cells", "must be at least 2");
  if (p < 0 || p > kMaxDegree) throw FormatError("degree", "outside 0.." + std::to_string(kMaxDegree));

  const json& rows = require(doc, "coeffs");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
    throw FormatError("coeffs", "expected an array of " + std::to_string(n) + " rows");
  }
  std::vector<double> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n) * (p + 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    const std::string where = "coeffs[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != static_cast<std::size_t>(p + 1)) {
      throw FormatError(where, "expected " + std::to_string(p + 1) + " numbers");
    }
    for (const json& v : row) {
      if (!v.is_number()) throw FormatError(where, "expected a number");
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw FormatError(where, "non-finite value");
      coeffs.push_back(d);
    }
  }
  return {UniformPartition(a, b, n), p, std::move(coeffs)};
}

PiecewisePolynomial read_solution(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution(buf.str());
}

PiecewisePolynomial read_solution_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_solution(in);
}

}  // namespace numsmooth
