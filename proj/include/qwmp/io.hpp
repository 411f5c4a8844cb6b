#pragma once

#include <string>

#include "json.hpp"
#include "qwmp/qmatrix.hpp"

namespace qwmp {

/// Matrix files are JSON objects {"rows": R, "cols": C, "entries": E}
/// where E is an R x C array of [w, x, y, z] components. Components may
/// be integers, doubles (float backend only), or "p/q" strings.
namespace io {

/// Whole-stream read; path "-" means standard input.
std::string read_source(const std::string& path);
void write_file(const std::string& path, const std::string& text);

namespace detail {

template <class R>
R component_from_json(const nlohmann::json& v, const std::string& where) {
  if constexpr (ScalarTraits<R>::is_exact) {
    if (v.is_number_integer()) return ScalarTraits<R>::from_int(v.get<long>());
    if (v.is_string()) return R(v.get<std::string>());
    if (v.is_number()) {
      throw ParseError(where + ": exact entries must be integers or \"p/q\" strings");
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
  } else {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return Rational(v.get<std::string>()).to_double();
    throw ParseError(where + ": expected a number or a \"p/q\" string");
  }
}

template <class R>
nlohmann::json component_to_json(const R& c) {
  if constexpr (ScalarTraits<R>::is_exact) {
    return c.str();
  } else {
    return c;
  }
}

}  // namespace detail

template <class R>
QMatrix<R> matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("matrix file must be a JSON object");
  for (const char* key : {"rows", "cols", "entries"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("matrix file is missing \"") + key + "\"");
    }
  }
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw ParseError("\"rows\" and \"cols\" must be nonnegative integers");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  if (rows == 0 || cols == 0 || rows > 64 || cols > 64) {
    throw ParseError("matrix dimensions must be within [1, 64]");
  }
  const auto& e = j["entries"];
  if (!e.is_array() || e.size() != rows) {
    throw ParseError("\"entries\" must be an array of " + std::to_string(rows) +
                     " rows");
  }
  QMatrix<R> a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& line = e[i];
    if (!line.is_array() || line.size() != cols) {
      throw ParseError("row " + std::to_string(i) + " must hold " +
                       std::to_string(cols) + " entries");
    }
    for (std::size_t jj = 0; jj < cols; ++jj) {
      const auto& q = line[jj];
      const std::string where =
          "entry (" + std::to_string(i) + ", " + std::to_string(jj) + ")";
      if (!q.is_array() || q.size() != 4) {
        throw ParseError(where + " must be a [w, x, y, z] array");
      }
      a.set(i, jj,
            Quaternion<R>(detail::component_from_json<R>(q[0], where),
                          detail::component_from_json<R>(q[1], where),
                          detail::component_from_json<R>(q[2], where),
                          detail::component_from_json<R>(q[3], where)));
    }
  }
  return a;
}

template <class R>
nlohmann::json matrix_to_json(const QMatrix<R>& a) {
  nlohmann::json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  nlohmann::json e = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    nlohmann::json line = nlohmann::json::array();
    for (std::size_t jj = 0; jj < a.cols(); ++jj) {
      const auto& q = a(i, jj);
      line.push_back({detail::component_to_json(q.w), detail::component_to_json(q.x),
                      detail::component_to_json(q.y), detail::component_to_json(q.z)});
    }
    e.push_back(std::move(line));
  }
  j["entries"] = std::move(e);
  return j;
}

template <class R>
QMatrix<R> load_matrix(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_source(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return matrix_from_json<R>(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <class R>
std::string matrix_to_text(const QMatrix<R>& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out += "[ ";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ",  ";
      out += to_string(a(i, j));
    }
    out += " ]\n";
  }
  return out;
}

}  // namespace io
}  // namespace qwmp
