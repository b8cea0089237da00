#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

/// Orthonormal Hermitian operator basis {F_0, ..., F_J} of d x d matrices with
/// F_0 = I/sqrt(d) and J = d^2 - 1.
///
/// Index convention used throughout the library: element(0) is F_0 and
/// traceless(k), k in [0, J), is F_{k+1}. Every J-indexed object (G, c, a, R, Q,
/// coherence vectors) is indexed by k and refers to traceless(k).
///
/// Construction checks shapes only; use verify_nice_basis() for the algebraic
/// requirements, since user bases may be deliberately invalid.
class NiceBasis {
 public:
  explicit NiceBasis(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw ShapeError("NiceBasis: no elements");
    dim_ = static_cast<int>(elements_.front().rows());
    if (dim_ < 1) throw ShapeError("NiceBasis: dimension must be >= 1");
    if (static_cast<int>(elements_.size()) != dim_ * dim_) {
      throw ShapeError("NiceBasis: expected d^2 = " + std::to_string(dim_ * dim_) +
                       " elements, got " + std::to_string(elements_.size()));
    }
    for (const auto& e : elements_) detail::require_square(e, dim_, "NiceBasis element");
  }

  int dim() const noexcept { return dim_; }
  int num_traceless() const noexcept { return dim_ * dim_ - 1; }
  int size() const noexcept { return dim_ * dim_; }

  const CMatrix& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
  const CMatrix& traceless(int k) const { return elements_.at(static_cast<std::size_t>(k) + 1); }
  const std::vector<CMatrix>& elements() const noexcept { return elements_; }

 private:
  std::vector<CMatrix> elements_;
  int dim_ = 0;
};

/// Normalized generalized Gell-Mann basis.
///
/// Order: F_0 = I/sqrt(d); symmetric (E_jk + E_kj)/sqrt(2) for the pairs j < k
/// taken column by column, (0,1), (0,2), (1,2), (0,3), ...; the antisymmetric
/// -i(E_jk - E_kj)/sqrt(2) in the same pair order; then the d-1 diagonal
/// elements diag(1,..,1,-l,0,..)/sqrt(l(l+1)) for l = 1..d-1.
/// For d = 2 this is {I, sx, sy, sz}/sqrt(2).
inline NiceBasis generate_gell_mann(int d) {
  if (d < 1) throw InvariantError("generate_gell_mann: dimension must be >= 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  out.push_back(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));

  std::vector<std::pair<int, int>> pairs;
  for (int k = 1; k < d; ++k)
    for (int j = 0; j < k; ++j) pairs.emplace_back(j, k);

  for (auto [j, k] : pairs) {
    CMatrix m = CMatrix::Zero(d, d);
    m(j, k) = inv_sqrt2;
    m(k, j) = inv_sqrt2;
    out.push_back(std::move(m));
  }
  for (auto [j, k] : pairs) {
    CMatrix m = CMatrix::Zero(d, d);
    m(j, k) = -kI * inv_sqrt2;
    m(k, j) = kI * inv_sqrt2;
    out.push_back(std::move(m));
  }
  for (int l = 1; l < d; ++l) {
    CMatrix m = CMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -l * norm;
    out.push_back(std::move(m));
  }
  return NiceBasis(std::move(out));
}

struct BasisReport {
  double hermiticity = 0.0;     // max |F_j - F_j^dagger|, j >= 1
  double tracelessness = 0.0;   // max |Tr F_j|, j >= 1
  double orthonormality = 0.0;  // max |Tr(F_j F_k) - delta_jk|
  double identity_element = 0.0;  // max |F_0 - I/sqrt(d)|
  CMatrix gram;                 // Tr(F_j F_k), 0 <= j,k <= J
  double tolerance = 0.0;
  bool passed = false;

  double max_violation() const {
    return std::max({hermiticity, tracelessness, orthonormality, identity_element});
  }
};

inline BasisReport verify_nice_basis(const NiceBasis& b, double tol = kAlgebraicTol) {
  BasisReport r;
  const int d = b.dim();
  const int n = b.size();
  r.tolerance = tol;
  r.identity_element =
      detail::max_abs(CMatrix(b.element(0) - CMatrix::Identity(d, d) / std::sqrt(double(d))));
  for (int j = 1; j < n; ++j) {
    r.hermiticity = std::max(r.hermiticity, detail::hermiticity_defect(b.element(j)));
    r.tracelessness = std::max(r.tracelessness, std::abs(b.element(j).trace()));
  }
  r.gram = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      r.gram(j, k) = detail::trace_of_product(b.element(j), b.element(k));
      const double target = (j == k) ? 1.0 : 0.0;
      r.orthonormality = std::max(r.orthonormality, std::abs(r.gram(j, k) - target));
    }
  }
  r.passed = r.max_violation() <= tol;
  return r;
}

/// Real structure constants f_ijk with [F_i, F_j] = i sum_k f_ijk F_k, stored
/// densely (J^3 doubles) and indexed by traceless positions.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int J) : J_(J), data_(static_cast<std::size_t>(J) * J * J, 0.0) {}

  int num_traceless() const noexcept { return J_; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * J_ + j) * J_ + k;
  }
  int J_ = 0;
  std::vector<double> data_;
};

/// f_ijk = -i Tr([F_i, F_j] F_k). Imaginary residues up to kAlgebraicTol are
/// dropped; anything above 1e-9 means the basis is not a valid nice basis.
inline StructureConstants structure_constants(const NiceBasis& b) {
  const BasisReport check = verify_nice_basis(b);
  if (!check.passed) {
    throw InvariantError("structure_constants: invalid basis, violation " + std::to_string(check.max_violation()));
  }
  const int J = b.num_traceless();
  StructureConstants f(J);
  for (int i = 0; i < J; ++i) {
    for (int j = i + 1; j < J; ++j) {
      const CMatrix comm = detail::commutator(b.traceless(i), b.traceless(j));
      for (int k = 0; k < J; ++k) {
        const cplx v = -kI * detail::trace_of_product(comm, b.traceless(k));
        if (std::abs(v.imag()) > 1e-9) {
          throw InvariantError("structure_constants: imaginary residue " +
                               std::to_string(std::abs(v.imag())) + " (invalid basis)");
        }
        f(i, j, k) = v.real();
        f(j, i, k) = -v.real();
      }
    }
  }
  return f;
}

/// max |sum_jk f_jkl f_jkm - 2d delta_lm|
inline double contraction_identity_defect(const StructureConstants& f, int d) {
  const int J = f.num_traceless();
  double worst = 0.0;
  for (int l = 0; l < J; ++l) {
    for (int m = 0; m < J; ++m) {
      double s = 0.0;
      for (int j = 0; j < J; ++j)
        for (int k = 0; k < J; ++k) s += f(j, k, l) * f(j, k, m);
      worst = std::max(worst, std::abs(s - (l == m ? 2.0 * d : 0.0)));
    }
  }
  return worst;
}

/// Coordinates X_i = Tr(F_i X), i = 0..J. Real iff X is Hermitian.
inline CVector coordinatize(const CMatrix& x, const NiceBasis& b) {
  detail::require_square(x, b.dim(), "coordinatize");
  CVector out(b.size());
  for (int i = 0; i < b.size(); ++i) out(i) = detail::trace_of_product(b.element(i), x);
  return out;
}

inline CMatrix decoordinatize(const CVector& coords, const NiceBasis& b) {
  detail::require_length(coords.size(), b.size(), "decoordinatize");
  CMatrix x = CMatrix::Zero(b.dim(), b.dim());
  for (int i = 0; i < b.size(); ++i) x += coords(i) * b.element(i);
  return x;
}

/// Expansion of a traceless operator over F_1..F_J: b_m = Tr(F_m B).
inline CVector traceless_coords(const CMatrix& x, const NiceBasis& b) {
  detail::require_square(x, b.dim(), "traceless_coords");
  const int J = b.num_traceless();
  CVector out(J);
  for (int m = 0; m < J; ++m) out(m) = detail::trace_of_product(b.traceless(m), x);
  return out;
}

inline CMatrix from_traceless_coords(const CVector& coords, const NiceBasis& b) {
  detail::require_length(coords.size(), b.num_traceless(), "from_traceless_coords");
  CMatrix x = CMatrix::Zero(b.dim(), b.dim());
  for (int m = 0; m < b.num_traceless(); ++m) x += coords(m) * b.traceless(m);
  return x;
}

/// Coherence vector v_j = Tr(rho F_j) of a unit-trace Hermitian rho.
inline RVector coherence_vector(const CMatrix& rho, const NiceBasis& b, double tol = kInputTol) {
  detail::require_square(rho, b.dim(), "coherence_vector");
  if (detail::hermiticity_defect(rho) > tol)
    throw InvariantError("coherence_vector: density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol)
    throw InvariantError("coherence_vector: density matrix trace is not 1");
  const int J = b.num_traceless();
  RVector v(J);
  for (int j = 0; j < J; ++j) v(j) = detail::trace_of_product(rho, b.traceless(j)).real();
  return v;
}

/// rho = I/d + sum_j v_j F_j
inline CMatrix density_from_coherence(const RVector& v, const NiceBasis& b) {
  detail::require_length(v.size(), b.num_traceless(), "density_from_coherence");
  const int d = b.dim();
  CMatrix rho = CMatrix::Identity(d, d) / static_cast<double>(d);
  for (int j = 0; j < b.num_traceless(); ++j) rho += v(j) * b.traceless(j);
  return rho;
}

/// Purity bound ||v|| <= sqrt(1 - 1/d), necessary for v to describe a state.
inline bool within_purity_bound(const RVector& v, int d, double slack = kInputTol) {
  return v.norm() <= std::sqrt(1.0 - 1.0 / d) + slack;
}

}  // namespace lindblad
