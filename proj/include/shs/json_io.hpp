#pragma once

#include "shs/errors.hpp"
#include "shs/matrix.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace shs {

using json = nlohmann::ordered_json;

// Matrix wire format:
//   {"rows": n, "cols": m, "data": [[re, im], ...]}    (row-major, n*m pairs)
// Ragged data, wrong pair arity and non-finite entries are rejected.
json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

// Grid wire format: {"d": d, "entries": [[matrix, ...], ...]} (d rows of d).
json grid_to_json(const std::vector<CMat>& grid, int d);
std::vector<CMat> grid_from_json(const json& j, int& d_out);

// Parses a whole document, converting nlohmann's diagnostics (which carry a
// byte offset) into a ParseError.
json parse_json_text(const std::string& text);
json load_json_file(const std::string& path);

} // namespace shs
