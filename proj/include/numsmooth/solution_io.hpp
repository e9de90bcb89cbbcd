#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "numsmooth/piecewise_poly.hpp"

namespace numsmooth {

/// Basis tag written into every solution document.
inline constexpr const char* kTaylorBasis = "taylor-centered-midpoint";

/// Formats a double with 17 significant digits (round-trips bit-exactly).
std::string format_real(double v);

/// Solution document: a JSON object with a, b, n_cells, degree, basis and
/// coeffs (n_cells arrays of degree+1 numbers).
std::string solution_to_string(const PiecewisePolynomial& u);
void write_solution(std::ostream& out, const PiecewisePolynomial& u);
void write_solution_file(const std::filesystem::path& path, const PiecewisePolynomial& u);

/// Parses a solution document. Throws FormatError naming the offending
/// field for missing/ill-typed entries, shape mismatches, non-finite
/// values, or an unknown basis string.
PiecewisePolynomial parse_solution(const std::string& text);
PiecewisePolynomial read_solution(std::istream& in);
PiecewisePolynomial read_solution_file(const std::filesystem::path& path);

}  // namespace numsmooth
