#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lindblad/basis.hpp"
#include "lindblad/hermitian_eigen.hpp"
#include "lindblad/superop.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// (H, a) of the master equation
///   rho' = -i[H, rho] + sum_ij a_ij (F_i rho F_j - 1/2 {F_j F_i, rho}).
/// H is stored traceless; the removed multiple of the identity is kept in
/// trace_shift (H_input = H + trace_shift * I).
struct MasterEqParams {
  CMatrix H;
  CMatrix a;
  double trace_shift = 0.0;

  static MasterEqParams make(const CMatrix& H, const CMatrix& a, double tol = kInputTol) {
    if (H.rows() < 1) throw ShapeError("MasterEqParams: empty Hamiltonian");
    const Eigen::Index d = H.rows();
    detail::require_square(H, d, "MasterEqParams H");
    detail::require_square(a, d * d - 1, "MasterEqParams a");
    if (!H.allFinite() || !a.allFinite()) throw InvariantError("MasterEqParams: non-finite entries");
    if (detail::hermiticity_defect(H) > tol) throw InvariantError("MasterEqParams: H is not Hermitian");
    if (detail::hermiticity_defect(a) > tol) throw InvariantError("MasterEqParams: a is not Hermitian");
    MasterEqParams p;
    p.trace_shift = H.trace().real() / static_cast<double>(d);
    p.H = 0.5 * (H + H.adjoint());
    p.H.diagonal().array() -= p.trace_shift;
    p.a = 0.5 * (a + a.adjoint());
    return p;
  }

  int dim() const noexcept { return static_cast<int>(H.rows()); }
};

/// v' = G v + c, with the optional Q (Hamiltonian) / R (dissipative) split of G.
struct OdePair {
  RMatrix G;
  RVector c;
  std::optional<RMatrix> Q;
  std::optional<RMatrix> R;
  double imag_residual = 0.0;  // largest discarded imaginary part, when computed

  int num_traceless() const noexcept { return static_cast<int>(G.rows()); }

  void validate(int J) const {
    detail::require_square(G, J, "OdePair G");
    detail::require_length(c.size(), J, "OdePair c");
    if (!G.allFinite() || !c.allFinite()) throw InvariantError("OdePair: non-finite entries");
  }
};

/// Lindblad diagonal form: L_a(X) = sum_alpha gamma_alpha (L X L^dag - 1/2 {L^dag L, X}).
struct DiagonalDissipator {
  RVector gamma;                     // descending
  std::vector<CMatrix> lindblad_ops;  // L_alpha = sum_j V_{j alpha} F_j
};

namespace detail {

// Y_j = sum_i a_ij F_i
inline std::vector<CMatrix> weighted_columns(const CMatrix& a, const NiceBasis& b) {
  const int J = b.num_traceless();
  std::vector<CMatrix> y(static_cast<std::size_t>(J), CMatrix::Zero(b.dim(), b.dim()));
  for (int j = 0; j < J; ++j)
    for (int i = 0; i < J; ++i)
      if (a(i, j) != cplx{}) y[static_cast<std::size_t>(j)] += a(i, j) * b.traceless(i);
  return y;
}

inline void check_ma(const CMatrix& a, const NiceBasis& b, const char* what) {
  require_square(a, b.num_traceless(), what);
}

}  // namespace detail

/// sum_ij a_ij (F_i X F_j - 1/2 {F_j F_i, X})
inline CMatrix apply_dissipator(const CMatrix& a, const CMatrix& x, const NiceBasis& b) {
  detail::check_ma(a, b, "apply_dissipator a");
  detail::require_square(x, b.dim(), "apply_dissipator X");
  const auto y = detail::weighted_columns(a, b);
  CMatrix sandwich = CMatrix::Zero(b.dim(), b.dim());
  CMatrix k = CMatrix::Zero(b.dim(), b.dim());
  for (int j = 0; j < b.num_traceless(); ++j) {
    const CMatrix& fj = b.traceless(j);
    sandwich += y[static_cast<std::size_t>(j)] * x * fj;
    k += fj * y[static_cast<std::size_t>(j)];
  }
  return sandwich - 0.5 * (k * x + x * k);
}

inline CMatrix apply_liouvillian(const MasterEqParams& p, const CMatrix& x, const NiceBasis& b) {
  detail::require_square(p.H, b.dim(), "apply_liouvillian H");
  return -kI * detail::commutator(p.H, x) + apply_dissipator(p.a, x, b);
}

inline SuperopTensor liouvillian_tensor(const MasterEqParams& p, const NiceBasis& b) {
  return SuperopTensor::from_map(b.dim(), [&](const CMatrix& x) { return apply_liouvillian(p, x, b); });
}

/// Q_ij = -i Tr(F_i [H, F_j])
inline RMatrix q_from_h(const CMatrix& H, const NiceBasis& b) {
  detail::require_square(H, b.dim(), "q_from_h");
  const int J = b.num_traceless();
  RMatrix q(J, J);
  for (int j = 0; j < J; ++j) {
    const CMatrix comm = detail::commutator(H, b.traceless(j));
    for (int i = 0; i < J; ++i) q(i, j) = (-kI * detail::trace_of_product(b.traceless(i), comm)).real();
  }
  return q;
}

/// R_kl = Tr[F_k L_a(F_l)]. The imaginary residue is written to *imag if given.
inline RMatrix r_from_a(const CMatrix& a, const NiceBasis& b, double* imag = nullptr) {
  detail::check_ma(a, b, "r_from_a");
  const int J = b.num_traceless();
  RMatrix r(J, J);
  double worst = 0.0;
  for (int l = 0; l < J; ++l) {
    const CMatrix image = apply_dissipator(a, b.traceless(l), b);
    for (int k = 0; k < J; ++k) {
      const cplx v = detail::trace_of_product(b.traceless(k), image);
      r(k, l) = v.real();
      worst = std::max(worst, std::abs(v.imag()));
    }
  }
  if (imag) *imag = worst;
  return r;
}

/// c_k = (1/d) sum_ij a_ij Tr([F_i, F_j] F_k)
inline RVector c_from_a(const CMatrix& a, const NiceBasis& b, double* imag = nullptr) {
  detail::check_ma(a, b, "c_from_a");
  const int J = b.num_traceless();
  const auto y = detail::weighted_columns(a, b);
  CMatrix m = CMatrix::Zero(b.dim(), b.dim());
  for (int j = 0; j < J; ++j) m += detail::commutator(y[static_cast<std::size_t>(j)], b.traceless(j));
  RVector c(J);
  double worst = 0.0;
  for (int k = 0; k < J; ++k) {
    const cplx v = detail::trace_of_product(m, b.traceless(k)) / static_cast<double>(b.dim());
    c(k) = v.real();
    worst = std::max(worst, std::abs(v.imag()));
  }
  if (imag) *imag = worst;
  return c;
}

/// c_k = (i/d) sum_ij a_ij f_ijk
inline RVector c_from_a(const CMatrix& a, const StructureConstants& f, int d) {
  const int J = f.num_traceless();
  detail::require_square(a, J, "c_from_a");
  RVector c = RVector::Zero(J);
  for (int k = 0; k < J; ++k) {
    cplx s{};
    for (int i = 0; i < J; ++i)
      for (int j = 0; j < J; ++j) s += a(i, j) * f(i, j, k);
    c(k) = (kI * s / static_cast<double>(d)).real();
  }
  return c;
}

inline OdePair forward_map(const MasterEqParams& p, const NiceBasis& b) {
  detail::require_square(p.H, b.dim(), "forward_map H");
  OdePair out;
  double imag_r = 0.0, imag_c = 0.0;
  out.Q = q_from_h(p.H, b);
  out.R = r_from_a(p.a, b, &imag_r);
  out.G = *out.Q + *out.R;
  out.c = c_from_a(p.a, b, &imag_c);
  out.imag_residual = std::max(imag_r, imag_c);
  return out;
}

/// L_ij = Tr[F_i L(F_j)] over the full basis; block form [[0, 0], [sqrt(d) c, G]].
inline RMatrix liouvillian_matrix(const MasterEqParams& p, const NiceBasis& b) {
  const int n = b.size();
  RMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    const CMatrix image = apply_liouvillian(p, b.element(j), b);
    for (int i = 0; i < n; ++i) m(i, j) = detail::trace_of_product(b.element(i), image).real();
  }
  return m;
}

/// Greedy nearest matching of two eigenvalue multisets; returns the worst
/// matched distance (infinity on size mismatch).
inline double spectrum_mismatch(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(static_cast<std::size_t>(y.size()), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index pick = -1;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double dist = std::abs(x(i) - y(j));
      if (dist < best) {
        best = dist;
        pick = j;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

inline CVector general_eigenvalues(const RMatrix& m) {
  if (m.size() == 0) return CVector();
  Eigen::EigenSolver<RMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw Error("eigenvalue computation failed");
  return es.eigenvalues();
}

/// spec(L) = {0} U spec(G), matched within tol.
inline bool spectrum_relation_check(const MasterEqParams& p, const NiceBasis& b, double tol = 1e-8) {
  const RMatrix l = liouvillian_matrix(p, b);
  const OdePair pair = forward_map(p, b);
  const CVector lhs = general_eigenvalues(l);
  CVector rhs(pair.G.rows() + 1);
  rhs(0) = 0.0;
  rhs.tail(pair.G.rows()) = general_eigenvalues(pair.G);
  return spectrum_mismatch(lhs, rhs) <= tol;
}

inline DiagonalDissipator diagonalize_dissipator(const CMatrix& a, const NiceBasis& b) {
  detail::check_ma(a, b, "diagonalize_dissipator");
  if (detail::hermiticity_defect(a) > kInputTol)
    throw InvariantError("diagonalize_dissipator: a is not Hermitian");
  const HermitianEigen eig = hermitian_eigensolve(a);
  const int J = b.num_traceless();
  DiagonalDissipator out;
  out.gamma = eig.values;
  const double scale = detail::max_abs(eig.values);
  for (int k = 0; k < J; ++k)
    if (std::abs(out.gamma(k)) < 1e-12 * scale) out.gamma(k) = 0.0;
  out.lindblad_ops.reserve(static_cast<std::size_t>(J));
  for (int alpha = 0; alpha < J; ++alpha) {
    CMatrix l = CMatrix::Zero(b.dim(), b.dim());
    for (int j = 0; j < J; ++j) l += eig.vectors(j, alpha) * b.traceless(j);
    out.lindblad_ops.push_back(std::move(l));
  }
  return out;
}

inline CMatrix apply_diagonal_dissipator(const DiagonalDissipator& dd, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (std::size_t k = 0; k < dd.lindblad_ops.size(); ++k) {
    const double g = dd.gamma(static_cast<Eigen::Index>(k));
    if (g == 0.0) continue;
    const CMatrix& l = dd.lindblad_ops[k];
    const CMatrix ldl = l.adjoint() * l;
    out += g * (l * x * l.adjoint() - 0.5 * (ldl * x + x * ldl));
  }
  return out;
}

/// The equivalent characterizations of a Hermitian dissipator, evaluated
/// independently, plus the (R symmetric and c = 0) criterion.
struct HermitianDissipatorReport {
  bool dissipator_hermitian = false;  // superoperator matrix of L_a is symmetric
  bool hermitian_lindblad_ops = false;  // Hermitian-operator diagonal form reproduces L_a
  bool a_symmetric = false;
  bool a_real = false;
  bool r_symmetric = false;
  bool c_zero = false;
  bool r_symmetric_and_c_zero = false;
  bool all_agree = false;
};

inline HermitianDissipatorReport hermitian_dissipator_checks(const CMatrix& a, const NiceBasis& b,
                                                             double tol = 1e-10) {
  detail::check_ma(a, b, "hermitian_dissipator_checks");
  HermitianDissipatorReport r;
  const int n = b.size();
  const double scale = std::max(1.0, detail::max_abs(a));

  RMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    const CMatrix image = apply_dissipator(a, b.element(j), b);
    for (int i = 0; i < n; ++i) m(i, j) = detail::trace_of_product(b.element(i), image).real();
  }
  r.dissipator_hermitian = detail::max_abs(RMatrix(m - m.transpose())) <= tol * scale;

  // Hermitian operators come from the real part of a; the form is valid iff
  // it reproduces the original action on every matrix unit.
  const DiagonalDissipator dd = diagonalize_dissipator(CMatrix(a.real().cast<cplx>()), b);
  const int d = b.dim();
  double action = 0.0;
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      CMatrix unit = CMatrix::Zero(d, d);
      unit(l, k) = 1.0;
      action = std::max(action, detail::max_abs(CMatrix(apply_diagonal_dissipator(dd, unit) -
                                                         apply_dissipator(a, unit, b))));
    }
  double op_defect = 0.0;
  for (const auto& l : dd.lindblad_ops) op_defect = std::max(op_defect, detail::hermiticity_defect(l));
  r.hermitian_lindblad_ops = action <= tol * scale && op_defect <= tol;

  r.a_symmetric = detail::max_abs(CMatrix(a - a.transpose())) <= tol * scale;
  r.a_real = a.size() == 0 || a.imag().cwiseAbs().maxCoeff() <= tol * scale;

  const RMatrix rr = r_from_a(a, b);
  const RVector c = c_from_a(a, b);
  r.r_symmetric = detail::max_abs(RMatrix(rr - rr.transpose())) <= tol * scale;
  r.c_zero = detail::max_abs(c) <= tol * scale;
  r.r_symmetric_and_c_zero = r.r_symmetric && r.c_zero;

  const bool v = r.dissipator_hermitian;
  r.all_agree = r.hermitian_lindblad_ops == v && r.a_symmetric == v && r.a_real == v &&
                r.r_symmetric_and_c_zero == v;
  return r;
}

/// h_m = -(1/2d) sum_jk f_jkm Q_jk, the traceless coordinates of H.
inline RVector h_coords_from_q(const RMatrix& q, const StructureConstants& f, int d) {
  const int J = f.num_traceless();
  detail::require_square(q, J, "h_coords_from_q");
  RVector h = RVector::Zero(J);
  for (int m = 0; m < J; ++m) {
    double s = 0.0;
    for (int j = 0; j < J; ++j)
      for (int k = 0; k < J; ++k) s += f(j, k, m) * q(j, k);
    h(m) = -s / (2.0 * d);
  }
  return h;
}

}  // namespace lindblad
