#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "radiuslab/matrix.hpp"

namespace radiuslab {

/// {"n": <int>, "data": [[re, im], ...]} with n² row-major entries.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Serialized with 17 significant digits, so reading back is bit-exact.
std::string dump_matrix(const ComplexMatrix& m);
ComplexMatrix parse_matrix(const std::string& text);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path,
                       const ComplexMatrix& m);

/// Decimal text with 17 significant digits; parses back to the same double.
std::string format_double(double value);

}  // namespace radiuslab
