#include "abelpow/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "abelpow/report.hpp"

namespace abelpow::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { fail(ErrorCode::ParseError, what); }

Index read_size(const json& j, const char* field, Index max_dimension) {
  if (!j.contains(field)) parse_error(std::string("missing field '") + field + "'");
  const json& v = j.at(field);
  if (!v.is_number_unsigned()) parse_error(std::string("field '") + field + "' must be a non-negative integer");
  const auto value = v.get<std::uint64_t>();
  if (value > static_cast<std::uint64_t>(max_dimension)) {
    fail(ErrorCode::DimensionMismatch, std::string("field '") + field + "' = " + std::to_string(value) +
                                           " exceeds the maximum dimension " + std::to_string(max_dimension));
  }
  return static_cast<Index>(value);
}

double read_component(const json& v, std::size_t index, int part) {
  const std::string where = "data[" + std::to_string(index) + "][" + std::to_string(part) + "]";
  if (!v.is_number()) parse_error(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_error(where + " is not finite");
  return x;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, Index max_dimension) {
  if (!j.is_object()) parse_error("top-level value must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "rows" && key != "cols" && key != "data") parse_error("unknown field '" + key + "'");
  }
  const Index rows = read_size(j, "rows", max_dimension);
  const Index cols = read_size(j, "cols", max_dimension);
  if (!j.contains("data")) parse_error("missing field 'data'");
  const json& data = j.at("data");
  if (!data.is_array()) parse_error("field 'data' must be an array");
  const auto expected = static_cast<std::size_t>(rows * cols);
  if (data.size() != expected) {
    fail(ErrorCode::DimensionMismatch, "data has " + std::to_string(data.size()) + " entries, rows*cols = " +
                                           std::to_string(expected));
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const json& pair = data[k];
    if (!pair.is_array() || pair.size() != 2) {
      parse_error("data[" + std::to_string(k) + "] must be a [re, im] pair");
    }
    const auto i = static_cast<Index>(k) / cols;
    const auto c = static_cast<Index>(k) % cols;
    m(i, c) = {read_component(pair[0], k, 0), read_component(pair[1], k, 1)};
  }
  return m;
}

ComplexMatrix parse_matrix_text(std::string_view text, Index max_dimension) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    parse_error("line " + std::to_string(line) + ": " + e.what());
  }
  return matrix_from_json(j, max_dimension);
}

ComplexMatrix parse_matrix(const std::filesystem::path& path, Index max_dimension) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_matrix_text(buffer.str(), max_dimension);
  } catch (const Error& e) {
    const std::string message = e.what();
    fail(e.code(), path.string() + ": " + message.substr(to_string(e.code()).size() + 2));
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

std::string serialize_matrix(const ComplexMatrix& m) {
  linalg::require_finite(m, "serialize_matrix");
  return report::dump(matrix_to_json(m));
}

}  // namespace abelpow::io
