#pragma once

// Matrix files: {"rows": int, "cols": int, "data": [[re, im], ...]} row-major.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "abelpow/linalg.hpp"

namespace abelpow::io {

using linalg::ComplexMatrix;
using linalg::Index;

/// Strict parse: unknown fields, non-integer sizes, non-numeric or
/// non-finite entries are ParseError; a data length other than rows*cols is
/// DimensionMismatch.
ComplexMatrix parse_matrix_text(std::string_view text, Index max_dimension = linalg::kDefaultMaxDimension);
ComplexMatrix parse_matrix(const std::filesystem::path& path, Index max_dimension = linalg::kDefaultMaxDimension);

/// JSON value in the matrix file schema.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, Index max_dimension = linalg::kDefaultMaxDimension);

/// Text that parse_matrix_text reads back bit-exactly.
std::string serialize_matrix(const ComplexMatrix& m);

}  // namespace abelpow::io
