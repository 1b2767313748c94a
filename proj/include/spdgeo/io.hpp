#pragma once

// Shared file formats: matrices as {"n": int, "data": [[...], ...]} and
// simplex points as {"p": [...]}. Numbers are written with 17 significant
// digits so doubles round-trip exactly.

#include <string>
#include <vector>

#include "spdgeo/domain.hpp"

namespace spdgeo::io {

std::string format_scalar(double v);

/// Parses one matrix document. Throws Error(Parse) on malformed JSON or shape,
/// Error(Dimension/Domain/NonFinite) from the SymmetricMatrix checks.
SymmetricMatrix<double> parse_matrix(const std::string& text);
SimplexPoint<double> parse_simplex(const std::string& text);

/// Splits a stream of matrix documents: a single object, a JSON array of
/// objects, or one object per line.
std::vector<SymmetricMatrix<double>> parse_matrix_stream(const std::string& text);

std::string matrix_json(const Matrix<double>& m);
std::string simplex_json(const Vector<double>& p);

/// Whole file, or standard input for "-". Throws Error(Parse) if unreadable.
std::string read_text(const std::string& path);
/// Writes to the file, or standard output for "" or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace spdgeo::io
