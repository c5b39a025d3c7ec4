#pragma once

#include <string>

#include <json.hpp>

#include "qfdiv/matrix.hpp"

namespace qfdiv {

/// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for real input.
nlohmann::json matrix_to_json(const CMatrix& m);

/// Throws ParseError naming the offending field for non-square or mismatched arrays.
CMatrix matrix_from_json(const nlohmann::json& j, const std::string& context = "matrix");

/// Throws IoError if the file cannot be read, ParseError for malformed content
/// (JSON syntax errors carry the byte offset).
CMatrix parse_matrix_file(const std::string& path);

void write_matrix_file(const std::string& path, const CMatrix& m);

}  // namespace qfdiv
