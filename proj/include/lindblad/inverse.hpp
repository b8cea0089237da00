#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/SVD>

#include "lindblad/basis.hpp"
#include "lindblad/forward.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// H = (1/2id) sum_nm G_nm [F_m, F_n]
inline CMatrix h_from_g(const RMatrix& G, const NiceBasis& b) {
  const int J = b.num_traceless();
  detail::require_square(G, J, "h_from_g");
  const int d = b.dim();
  CMatrix s = CMatrix::Zero(d, d);
  for (int n = 0; n < J; ++n)
    for (int m = n + 1; m < J; ++m) {
      const double w = G(n, m) - G(m, n);  // [F_m, F_n] is antisymmetric in (n, m)
      if (w != 0.0) s += w * detail::commutator(b.traceless(m), b.traceless(n));
    }
  CMatrix h = s / (2.0 * kI * static_cast<double>(d));
  return 0.5 * (h + h.adjoint());
}

/// H = -(1/2d) sum_jkm f_jkm G_jk F_m
inline CMatrix h_from_g(const RMatrix& G, const StructureConstants& f, const NiceBasis& b) {
  detail::require_square(G, b.num_traceless(), "h_from_g");
  return from_traceless_coords(h_coords_from_q(G, f, b.dim()).cast<cplx>(), b);
}

/// a_mn = sum_i Tr[(sum_j G_ij F_j + c_i I) F_m F_i F_n]
inline CMatrix a_from_gc(const RMatrix& G, const RVector& c, const NiceBasis& b) {
  const int J = b.num_traceless();
  const int d = b.dim();
  detail::require_square(G, J, "a_from_gc G");
  detail::require_length(c.size(), J, "a_from_gc c");
  std::vector<CMatrix> gt(static_cast<std::size_t>(J));
  for (int i = 0; i < J; ++i) {
    CMatrix g = c(i) * CMatrix::Identity(d, d);
    for (int j = 0; j < J; ++j)
      if (G(i, j) != 0.0) g += G(i, j) * b.traceless(j);
    gt[static_cast<std::size_t>(i)] = std::move(g);
  }
  // a_mn = Tr(F_m W_n), W_n = sum_i F_i F_n Gt_i
  CMatrix a(J, J);
  for (int n = 0; n < J; ++n) {
    CMatrix w = CMatrix::Zero(d, d);
    for (int i = 0; i < J; ++i) w += b.traceless(i) * b.traceless(n) * gt[static_cast<std::size_t>(i)];
    for (int m = 0; m < J; ++m) a(m, n) = detail::trace_of_product(b.traceless(m), w);
  }
  return a;
}

/// Precomputed linear kernel of (G, c) -> a for repeated evaluation:
/// a_mn = sum_ij G_ij T(i,j,m,n) + sum_i c_i S(i,m,n), with
/// T(i,j,m,n) = Tr(F_j F_m F_i F_n) and S(i,m,n) = Tr(F_m F_i F_n).
class AKernel {
 public:
  explicit AKernel(const NiceBasis& b) : J_(b.num_traceless()) {
    const std::size_t J = static_cast<std::size_t>(J_);
    t_.resize(J * J, CMatrix(J_, J_));
    s_.resize(J, CMatrix(J_, J_));
    for (int i = 0; i < J_; ++i)
      for (int m = 0; m < J_; ++m) {
        const CMatrix mi = b.traceless(m) * b.traceless(i);
        for (int n = 0; n < J_; ++n) {
          const CMatrix min = mi * b.traceless(n);
          s_[static_cast<std::size_t>(i)](m, n) = min.trace();
          for (int j = 0; j < J_; ++j)
            t_[static_cast<std::size_t>(i) * J + static_cast<std::size_t>(j)](m, n) =
                detail::trace_of_product(b.traceless(j), min);
        }
      }
  }

  int num_traceless() const noexcept { return J_; }

  CMatrix apply(const RMatrix& G, const RVector& c) const {
    detail::require_square(G, J_, "AKernel G");
    detail::require_length(c.size(), J_, "AKernel c");
    CMatrix a = CMatrix::Zero(J_, J_);
    for (int i = 0; i < J_; ++i) {
      if (c(i) != 0.0) a += c(i) * s_[static_cast<std::size_t>(i)];
      for (int j = 0; j < J_; ++j)
        a += G(i, j) * t_[static_cast<std::size_t>(i) * static_cast<std::size_t>(J_) +
                          static_cast<std::size_t>(j)];
    }
    return a;
  }

 private:
  int J_;
  std::vector<CMatrix> t_;
  std::vector<CMatrix> s_;
};

inline MasterEqParams inverse_map(const OdePair& pair, const NiceBasis& b) {
  pair.validate(b.num_traceless());
  MasterEqParams p;
  p.H = h_from_g(pair.G, b);
  const CMatrix a = a_from_gc(pair.G, pair.c, b);
  p.a = 0.5 * (a + a.adjoint());
  return p;
}

struct GDecomposition {
  RMatrix Q;  // antisymmetric, Hamiltonian part
  RMatrix R;  // dissipative part
};

/// Q_ij = (1/2d) sum_nmk G_nm f_knm f_kij, R = G - Q.
inline GDecomposition decompose_g(const RMatrix& G, const StructureConstants& f, int d) {
  const int J = f.num_traceless();
  detail::require_square(G, J, "decompose_g");
  // u_k = sum_nm G_nm f_knm, then Q_ij = (1/2d) sum_k u_k f_kij.
  RVector u = RVector::Zero(J);
  for (int k = 0; k < J; ++k)
    for (int n = 0; n < J; ++n)
      for (int m = 0; m < J; ++m) u(k) += G(n, m) * f(k, n, m);
  GDecomposition out{RMatrix::Zero(J, J), RMatrix()};
  for (int i = 0; i < J; ++i)
    for (int j = 0; j < J; ++j) {
      double s = 0.0;
      for (int k = 0; k < J; ++k) s += u(k) * f(k, i, j);
      out.Q(i, j) = s / (2.0 * d);
    }
  out.R = G - out.Q;
  return out;
}

inline GDecomposition decompose_g(const RMatrix& G, const NiceBasis& b) {
  return decompose_g(G, structure_constants(b), b.dim());
}

/// || sum_mn R_mn [F_n, F_m] ||_F
inline double r_image_defect(const RMatrix& R, const NiceBasis& b) {
  const int J = b.num_traceless();
  detail::require_square(R, J, "r_image_check");
  CMatrix s = CMatrix::Zero(b.dim(), b.dim());
  for (int m = 0; m < J; ++m)
    for (int n = m + 1; n < J; ++n) {
      const double w = R(m, n) - R(n, m);
      if (w != 0.0) s += w * detail::commutator(b.traceless(n), b.traceless(m));
    }
  return s.norm();
}

inline bool r_image_check(const RMatrix& R, const NiceBasis& b, double tol = 1e-10) {
  return r_image_defect(R, b) <= tol;
}

struct ImageDimensions {
  int r_image = 0;       // dim of {R(a)}
  int antisym_r = 0;     // dim of {R(a)} intersected with antisymmetric matrices
  int kernel = 0;        // dim of ker(a -> (R, c))
};

namespace detail {

inline int numeric_rank(const RMatrix& m, double rel = 1e-8) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(m);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

// Real basis of J x J Hermitian matrices: E_jj, E_jk + E_kj, i(E_jk - E_kj).
inline std::vector<CMatrix> hermitian_real_basis(int J) {
  std::vector<CMatrix> out;
  for (int j = 0; j < J; ++j) {
    CMatrix e = CMatrix::Zero(J, J);
    e(j, j) = 1.0;
    out.push_back(e);
  }
  for (int j = 0; j < J; ++j)
    for (int k = j + 1; k < J; ++k) {
      CMatrix s = CMatrix::Zero(J, J);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      out.push_back(s);
      CMatrix a = CMatrix::Zero(J, J);
      a(j, k) = kI;
      a(k, j) = -kI;
      out.push_back(a);
    }
  return out;
}

}  // namespace detail

/// Ranks of the linear map a -> (R, c) over Hermitian a, decided at singular
/// values above 1e-8 sigma_max.
inline ImageDimensions image_dimensions(const NiceBasis& b) {
  const int J = b.num_traceless();
  ImageDimensions out;
  if (J == 0) return out;
  const auto basis = detail::hermitian_real_basis(J);
  const int n = static_cast<int>(basis.size());  // J^2
  RMatrix rmap(J * J, n);
  RMatrix rcmap(J * J + J, n);
  for (int col = 0; col < n; ++col) {
    const RMatrix r = r_from_a(basis[static_cast<std::size_t>(col)], b);
    const RVector c = c_from_a(basis[static_cast<std::size_t>(col)], b);
    rmap.col(col) = Eigen::Map<const RVector>(r.data(), J * J);
    rcmap.col(col).head(J * J) = rmap.col(col);
    rcmap.col(col).tail(J) = c;
  }
  out.r_image = detail::numeric_rank(rmap);
  out.kernel = n - detail::numeric_rank(rcmap);

  const int na = J * (J - 1) / 2;
  RMatrix joint(J * J, out.r_image + na);
  // Orthonormal basis of the image from the SVD, then antisymmetric units.
  Eigen::JacobiSVD<RMatrix> svd(rmap, Eigen::ComputeThinU);
  joint.leftCols(out.r_image) = svd.matrixU().leftCols(out.r_image);
  int col = out.r_image;
  for (int j = 0; j < J; ++j)
    for (int k = j + 1; k < J; ++k) {
      RMatrix e = RMatrix::Zero(J, J);
      e(j, k) = 1.0 / std::sqrt(2.0);
      e(k, j) = -1.0 / std::sqrt(2.0);
      joint.col(col++) = Eigen::Map<const RVector>(e.data(), J * J);
    }
  out.antisym_r = out.r_image + na - detail::numeric_rank(joint);
  return out;
}

}  // namespace lindblad
