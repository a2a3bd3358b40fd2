#include "divprop/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace divprop {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    fail(Errc::parse_error, "matrix JSON must have rows, cols and data");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer() || !j["data"].is_array())
    fail(Errc::parse_error, "matrix JSON has wrongly typed fields");
  const long rows = j["rows"].get<long>();
  const long cols = j["cols"].get<long>();
  if (rows < 1 || cols < 1) fail(Errc::parse_error, "matrix JSON has non-positive shape");
  const auto& data = j["data"];
  if (static_cast<long>(data.size()) != rows * cols)
    fail(Errc::parse_error, "matrix JSON data length does not equal rows*cols");
  Matrix m(rows, cols);
  long idx = 0;
  for (long i = 0; i < rows; ++i)
    for (long jj = 0; jj < cols; ++jj, ++idx) {
      const auto& e = data[idx];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        fail(Errc::parse_error, "matrix JSON entries must be [re, im] pairs");
      m(i, jj) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

json transfer_to_json(const TransferMatrix& t) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < t.t.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < t.t.cols(); ++j) row.push_back(t.t(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"dim", t.dim}, {"t", std::move(rows)}};
}

TransferMatrix transfer_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("t"))
    fail(Errc::parse_error, "transfer JSON must have dim and t");
  if (!j["dim"].is_number_integer() || !j["t"].is_array())
    fail(Errc::parse_error, "transfer JSON has wrongly typed fields");
  const int d = j["dim"].get<int>();
  if (d < 2) fail(Errc::parse_error, "transfer JSON dim must be at least 2");
  const int n = d * d;
  const auto& rows = j["t"];
  if (static_cast<int>(rows.size()) != n)
    fail(Errc::parse_error, "transfer JSON t must have dim^2 rows");
  RealMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(Errc::parse_error, "transfer JSON rows must have dim^2 entries");
    for (int k = 0; k < n; ++k) {
      if (!row[k].is_number()) fail(Errc::parse_error, "transfer JSON entries must be numbers");
      t(i, k) = row[k].get<double>();
    }
  }
  return TransferMatrix{d, std::move(t)};
}

namespace {

void dump_number(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void dump_rec(std::string& out, const json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) {
      out += '\n';
      out.append(static_cast<size_t>(indent) * d, ' ');
    }
  };
  switch (j.type()) {
    case json::value_t::null: out += "null"; break;
    case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: out += j.dump(); break;
    case json::value_t::number_float: dump_number(out, j.get<double>()); break;
    case json::value_t::string: out += j.dump(); break;  // handles escaping
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        dump_rec(out, e, indent, depth + 1);
      }
      if (!j.empty()) pad(depth);
      out += ']';
      break;
    }
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // keys already sorted
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_rec(out, it.value(), indent, depth + 1);
      }
      if (!j.empty()) pad(depth);
      out += '}';
      break;
    }
    default: fail(Errc::invalid_argument, "canonical_dump: unsupported JSON value");
  }
}

}  // namespace

std::string canonical_dump(const json& j, int indent) {
  std::string out;
  dump_rec(out, j, indent, 0);
  if (indent > 0) out += '\n';
  return out;
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::parse_error, "invalid JSON");
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse_error, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace divprop
