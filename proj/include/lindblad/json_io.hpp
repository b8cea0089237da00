#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lindblad/types.hpp"

namespace lindblad::io {

using nlohmann::json;

// Matrices are row-major nested arrays. Complex entries are always [re, im].
// nlohmann::json serializes doubles in shortest round-trip form.

inline double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw InvariantError(std::string(what) + ": non-finite value");
  return v;
}

inline json from_complex(cplx z) {
  return json::array({finite_or_throw(z.real(), "json"), finite_or_throw(z.imag(), "json")});
}

inline json from_real_matrix(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(finite_or_throw(m(i, j), "json"));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json from_real_vector(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(finite_or_throw(v(i), "json"));
  return out;
}

inline json from_complex_matrix(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(from_complex(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json from_complex_vector(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(from_complex(v(i)));
  return out;
}

inline double to_real(const json& j, const std::string& what) {
  if (!j.is_number()) throw ShapeError(what + ": expected a number");
  return finite_or_throw(j.get<double>(), what.c_str());
}

/// Accepts a plain number or a two-element [re, im] array.
inline cplx to_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {to_real(j, what), 0.0};
  if (j.is_array() && j.size() == 2) return {to_real(j[0], what), to_real(j[1], what)};
  throw ShapeError(what + ": expected a number or [re, im]");
}

inline RVector to_real_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw ShapeError(what + ": expected an array");
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_real(j[i], what);
  return v;
}

template <class Matrix, class Entry>
Matrix to_matrix(const json& j, const std::string& what, Entry&& entry) {
  if (!j.is_array()) throw ShapeError(what + ": expected an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw ShapeError(what + ": expected an array of rows");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) throw ShapeError(what + ": rows have different lengths");
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry(j[r][c], what);
  return m;
}

inline RMatrix to_real_matrix(const json& j, const std::string& what) {
  return to_matrix<RMatrix>(j, what, to_real);
}

inline CMatrix to_complex_matrix(const json& j, const std::string& what) {
  return to_matrix<CMatrix>(j, what, to_complex);
}

}  // namespace lindblad::io
