#include "qfdiv/io.hpp"

#include <fstream>
#include <sstream>

#include "qfdiv/error.hpp"

namespace qfdiv {

namespace {

[[noreturn]] void parse_fail(const std::string& context, const std::string& what) {
  throw Error(ErrorKind::ParseError, context + ": " + what);
}

void read_part(const nlohmann::json& rows, std::size_t n, const std::string& field, CMatrix& m, bool imag) {
  if (!rows.is_array() || rows.size() != n) {
    parse_fail(field, "expected " + std::to_string(n) + " rows");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != n) parse_fail(where, "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j].is_number()) parse_fail(where + "[" + std::to_string(j) + "]", "not a number");
      const double v = row[j].get<double>();
      if (imag) {
        m(i, j).imag(v);
      } else {
        m(i, j).real(v);
      }
    }
  }
}

}  // namespace

nlohmann::json matrix_to_json(const CMatrix& m) {
  const std::size_t n = m.dim();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (std::size_t j = 0; j < n; ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  nlohmann::json j;
  j["dim"] = n;
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

CMatrix matrix_from_json(const nlohmann::json& j, const std::string& context) {
  if (!j.is_object()) parse_fail(context, "expected an object");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    parse_fail(context + ".dim", "expected a positive integer");
  }
  const std::size_t n = j["dim"].get<std::size_t>();
  if (!j.contains("re")) parse_fail(context + ".re", "missing");
  CMatrix m(n);
  read_part(j["re"], n, context + ".re", m, false);
  if (j.contains("im")) read_part(j["im"], n, context + ".im", m, true);
  return m;
}

CMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return matrix_from_json(j, path);
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << matrix_to_json(m).dump() << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace qfdiv
