#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "lindblad/basis.hpp"
#include "lindblad/forward.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// e^{G t}. Exactly the identity at t = 0.
inline RMatrix propagator(const RMatrix& G, double t) {
  if (G.rows() != G.cols()) throw ShapeError("propagator: G not square");
  if (!G.allFinite() || !std::isfinite(t)) throw InvariantError("propagator: non-finite input");
  if (t == 0.0 || G.size() == 0) return RMatrix::Identity(G.rows(), G.cols());
  const RMatrix gt = G * t;
  RMatrix e = gt.exp();
  if (!e.allFinite()) throw Error("propagator: overflow in exp(G t)");
  return e;
}

enum class SolutionKind { diagonalizable_invertible, diagonalizable_singular, general };

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::diagonalizable_invertible: return "diagonalizable_invertible";
    case SolutionKind::diagonalizable_singular: return "diagonalizable_singular";
    case SolutionKind::general: return "general";
  }
  return "unknown";
}

/// Solution of v' = G v + c with v(0) = v0.
struct OdeSolution {
  SolutionKind kind = SolutionKind::general;
  RMatrix G;
  RVector c;
  RVector v0;
  std::optional<RVector> v_infinity;  // -G^{-1} c when G is invertible
  // Closed form: v(t) = Re(sum_k s_k e^{lambda_k t} X_k) + offset.
  CVector eigenvalues;
  CMatrix eigenvectors;
  CVector initial_coeffs;
  RVector offset;
  // rank(G) == rank([G | c]): c has no component in the frozen directions.
  bool steady_state_consistent = true;

  RVector evaluate(double t) const {
    if (kind == SolutionKind::general) {
      const Eigen::Index J = G.rows();
      RMatrix aug = RMatrix::Zero(J + 1, J + 1);
      aug.topLeftCorner(J, J) = G;
      aug.topRightCorner(J, 1) = c;
      RVector start(J + 1);
      start.head(J) = v0;
      start(J) = 1.0;
      return (propagator(aug, t) * start).head(J);
    }
    CVector w = initial_coeffs;
    for (Eigen::Index k = 0; k < w.size(); ++k) w(k) *= std::exp(eigenvalues(k) * t);
    return (eigenvectors * w).real() + offset;
  }
};

namespace detail {

inline double smallest_singular_value(const RMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline int rank_of(const RMatrix& m, double rel) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(m);
  const RVector& s = svd.singularValues();
  const double cut = rel * std::max(s(0), 1e-300);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut && s(i) > 0.0) ++r;
  return r;
}

inline void check_ode_inputs(const OdePair& pair, const RVector& v0) {
  pair.validate(static_cast<int>(pair.G.rows()));
  detail::require_length(v0.size(), pair.G.rows(), "ODE initial state");
  if (!v0.allFinite()) throw InvariantError("ODE initial state is not finite");
}

}  // namespace detail

/// Closed-form solution through the eigendecomposition of G. Requires the
/// eigenvector matrix to have condition number below 1/tol. A singular G is
/// accepted only when c = 0 (no steady-state offset is needed).
inline OdeSolution solve_diagonalizable(const OdePair& pair, const RVector& v0, double tol = 1e-8) {
  detail::check_ode_inputs(pair, v0);
  const Eigen::Index J = pair.G.rows();
  OdeSolution sol;
  sol.G = pair.G;
  sol.c = pair.c;
  sol.v0 = v0;
  sol.offset = RVector::Zero(J);
  if (J == 0) {
    sol.kind = SolutionKind::diagonalizable_invertible;
    sol.v_infinity = RVector();
    return sol;
  }

  Eigen::EigenSolver<RMatrix> es(pair.G, true);
  if (es.info() != Eigen::Success) throw NotDiagonalizable("solve_diagonalizable: eigensolver failed");
  sol.eigenvalues = es.eigenvalues();
  sol.eigenvectors = es.eigenvectors();
  Eigen::JacobiSVD<CMatrix> svd(sol.eigenvectors);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                               : std::numeric_limits<double>::infinity();
  if (!(cond < 1.0 / tol)) throw NotDiagonalizable("solve_diagonalizable: eigenvector matrix is ill-conditioned");

  const double gnorm = detail::max_abs(pair.G);
  const bool singular = detail::smallest_singular_value(pair.G) <= tol * gnorm || gnorm == 0.0;
  if (singular) {
    if (detail::max_abs(pair.c) != 0.0)
      throw SingularGenerator("solve_diagonalizable: G is singular and c is nonzero");
    sol.kind = SolutionKind::diagonalizable_singular;
  } else {
    sol.kind = SolutionKind::diagonalizable_invertible;
    sol.offset = -pair.G.partialPivLu().solve(pair.c);
    sol.v_infinity = sol.offset;
  }
  const CVector rhs = (v0 - sol.offset).cast<cplx>();
  sol.initial_coeffs = sol.eigenvectors.partialPivLu().solve(rhs);
  return sol;
}

/// v(t) = e^{Gt} v0 + (int_0^t e^{Gs} ds) c, read off the exponential of the
/// augmented matrix [[G, c], [0, 0]].
inline OdeSolution solve_general(const OdePair& pair, const RVector& v0) {
  detail::check_ode_inputs(pair, v0);
  const Eigen::Index J = pair.G.rows();
  OdeSolution sol;
  sol.kind = SolutionKind::general;
  sol.G = pair.G;
  sol.c = pair.c;
  sol.v0 = v0;
  sol.offset = RVector::Zero(J);
  if (J == 0) return sol;
  RMatrix gc(J, J + 1);
  gc << pair.G, pair.c;
  const double rel = 1e-10;
  const int rg = detail::rank_of(pair.G, rel);
  sol.steady_state_consistent = rg == detail::rank_of(gc, rel) || detail::max_abs(pair.c) == 0.0;
  if (rg == J) sol.v_infinity = RVector(-pair.G.partialPivLu().solve(pair.c));
  return sol;
}

/// rho(t) for each requested time, from the coherence-vector solution.
inline std::vector<CMatrix> evolve_density(const MasterEqParams& p, const CMatrix& rho0,
                                           const std::vector<double>& times, const NiceBasis& b) {
  detail::require_square(rho0, b.dim(), "evolve_density rho0");
  const RVector v0 = coherence_vector(rho0, b);
  const RVector eig = hermitian_eigenvalues(rho0);
  if (eig.size() > 0 && eig(eig.size() - 1) < -kInputTol)
    throw InvariantError("evolve_density: rho0 is not positive semidefinite");
  const OdePair pair = forward_map(p, b);
  const OdeSolution sol = solve_general(pair, v0);
  std::vector<CMatrix> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(density_from_coherence(sol.evaluate(t), b));
  return out;
}

}  // namespace lindblad
