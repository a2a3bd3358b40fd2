// json_io.hpp: JSON (de)serialization and the canonical text form

#pragma once

#include <json.hpp>
#include <string>

#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

namespace divprop {

// {"rows": n, "cols": m, "data": [[re, im], ...]} with data row-major
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

// {"dim": d, "t": [[...], ...]}
nlohmann::json transfer_to_json(const TransferMatrix& t);
TransferMatrix transfer_from_json(const nlohmann::json& j);

// Deterministic rendering: object keys sorted, floating-point numbers at 17
// significant digits, no locale dependence. Byte-identical across runs.
std::string canonical_dump(const nlohmann::json& j, int indent = 0);

nlohmann::json parse_json(const std::string& text);   // wraps errors as parse_error
std::string read_text_file(const std::string& path);  // parse_error on failure

}  // namespace divprop
