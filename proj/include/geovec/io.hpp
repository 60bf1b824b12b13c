#pragma once

// Algebra files:
//   {"dim": n, "gram": [[...], ...] (optional), "name": "..." (optional),
//    "brackets": [{"i": 1, "j": 2, "coeffs": [c1, ..., cn]}, ...]}
// Indices are 1-based with i < j; unspecified pairs are zero.

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "geovec/algebra.hpp"
#include "geovec/error.hpp"

namespace geovec {

using json = nlohmann::json;

namespace detail {

inline double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(field, "number must be finite");
  return v;
}

inline std::size_t index_at(const json& j, const std::string& field, std::size_t n) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer index");
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > n)
    throw ParseError(field, "index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
  return static_cast<std::size_t>(v - 1);
}

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline MetricLieAlgebra algebra_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "top level must be a JSON object");
  if (!doc.contains("dim")) throw ParseError("dim", "missing required field");
  if (!doc["dim"].is_number_integer()) throw ParseError("dim", "expected a positive integer");
  const auto dim = doc["dim"].get<long long>();
  if (dim < 1 || dim > 16) throw ParseError("dim", "dimension must be in 1..16");
  const auto n = static_cast<std::size_t>(dim);

  std::optional<Matrix> gram;
  if (doc.contains("gram")) {
    const json& g = doc["gram"];
    if (!g.is_array() || g.size() != n) throw ParseError("gram", "expected an array of " + std::to_string(n) + " rows");
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::string f = "gram[" + std::to_string(r) + "]";
      if (!g[r].is_array() || g[r].size() != n) throw ParseError(f, "expected " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = detail::number_at(g[r][c], f + "[" + std::to_string(c) + "]");
    }
    gram = std::move(m);
  }

  std::vector<MetricLieAlgebra::Bracket> brackets;
  if (doc.contains("brackets")) {
    const json& bs = doc["brackets"];
    if (!bs.is_array()) throw ParseError("brackets", "expected an array");
    std::vector<bool> seen(n * n, false);
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const std::string f = "brackets[" + std::to_string(b) + "]";
      const json& e = bs[b];
      if (!e.is_object()) throw ParseError(f, "expected an object");
      for (const char* key : {"i", "j", "coeffs"})
        if (!e.contains(key)) throw ParseError(f + "." + key, "missing required field");
      const std::size_t i = detail::index_at(e["i"], f + ".i", n);
      const std::size_t j = detail::index_at(e["j"], f + ".j", n);
      if (i >= j) throw ParseError(f, "indices must satisfy i < j");
      if (seen[i * n + j]) throw ParseError(f, "duplicate bracket for this (i, j)");
      seen[i * n + j] = true;
      const json& co = e["coeffs"];
      if (!co.is_array() || co.size() != n)
        throw ParseError(f + ".coeffs", "expected " + std::to_string(n) + " coefficients");
      Vector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = detail::number_at(co[k], f + ".coeffs[" + std::to_string(k) + "]");
      brackets.push_back({i, j, std::move(v)});
    }
  }
  return MetricLieAlgebra::from_brackets(n, brackets, std::move(gram));
}

inline MetricLieAlgebra parse_algebra(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", "invalid JSON at " + detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  return algebra_from_json(doc);
}

inline MetricLieAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

inline json algebra_to_json(const MetricLieAlgebra& alg, const std::string& name = {}) {
  const std::size_t n = alg.dim();
  json doc;
  if (!name.empty()) doc["name"] = name;
  doc["dim"] = n;
  if (alg.gram() != Matrix::identity(n)) {
    json g = json::array();
    for (std::size_t r = 0; r < n; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < n; ++c) row.push_back(alg.gram()(r, c));
      g.push_back(row);
    }
    doc["gram"] = g;
  }
  json bs = json::array();
  for (const auto& b : alg.brackets()) bs.push_back({{"i", b.i + 1}, {"j", b.j + 1}, {"coeffs", b.coeffs.values()}});
  doc["brackets"] = bs;
  return doc;
}

/// Shortest decimal that round-trips a double (at most 17 significant digits).
inline std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

/// Parse "a,b,c" into a vector of the given length.
inline Vector parse_point(const std::string& text, std::size_t n, const std::string& field = "point") {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) throw ParseError(field, "empty component");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(first), &used);
    } catch (const std::exception&) {
      throw ParseError(field, "cannot parse '" + item + "' as a number");
    }
    if (item.find_first_not_of(" \t", first + used) != std::string::npos)
      throw ParseError(field, "trailing characters in '" + item + "'");
    values.push_back(v);
  }
  if (values.size() != n)
    throw DimensionError(field + ": expected " + std::to_string(n) + " components, got " +
                         std::to_string(values.size()));
  return Vector(std::move(values));
}

}  // namespace geovec
