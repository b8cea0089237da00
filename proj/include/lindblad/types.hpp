#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lindblad {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// Default tolerances. Algebraic identities on constructed objects are held to
// kAlgebraicTol; data supplied by a caller is validated against kInputTol.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kInputTol = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input violates a structural requirement (Hermiticity, tracelessness, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class NotDiagonalizable : public Error {
 public:
  using Error::Error;
};

class SingularGenerator : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require_square(const CMatrix& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                     std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

inline void require_square(const RMatrix& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                     std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

inline void require_length(Eigen::Index got, Eigen::Index n, const char* what) {
  if (got != n) {
    throw ShapeError(std::string(what) + ": expected length " + std::to_string(n) +
                     ", got " + std::to_string(got));
  }
}

// Largest |M - M^dagger| entry.
inline double hermiticity_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const RVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

// Tr(A B) without forming the product.
inline cplx trace_of_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().array() * b.array()).sum();
}

inline bool all_finite(const RMatrix& m) { return m.allFinite(); }

}  // namespace detail
}  // namespace lindblad
