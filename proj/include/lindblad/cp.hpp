#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "lindblad/basis.hpp"
#include "lindblad/forward.hpp"
#include "lindblad/hermitian_eigen.hpp"
#include "lindblad/inverse.hpp"
#include "lindblad/random.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

struct CPReport {
  CMatrix a;
  RVector eigenvalues;  // descending
  double min_eigenvalue = 0.0;
  bool is_lindblad = false;
  bool marginal = false;  // |min eigenvalue| within 10x the tolerance
  double tolerance_used = 0.0;
  std::optional<DiagonalDissipator> diagonal_form;
};

/// PSD verdict on a Hermitian rate matrix: min eig >= -tol * max(1, ||a||_2).
inline CPReport cp_verdict(const CMatrix& a, double tol = kInputTol) {
  CPReport r;
  r.a = a;
  r.eigenvalues = hermitian_eigenvalues(a);
  const Eigen::Index n = r.eigenvalues.size();
  r.min_eigenvalue = n ? r.eigenvalues(n - 1) : 0.0;
  const double norm2 = detail::max_abs(r.eigenvalues);
  r.tolerance_used = tol * std::max(1.0, norm2);
  r.is_lindblad = r.min_eigenvalue >= -r.tolerance_used;
  r.marginal = n > 0 && std::abs(r.min_eigenvalue) <= 10.0 * r.tolerance_used;
  return r;
}

/// Is (G, c) a Lindblad (completely positive) generator?
inline CPReport check_lindblad(const OdePair& pair, const NiceBasis& b, double tol = kInputTol) {
  pair.validate(b.num_traceless());
  const CMatrix a = a_from_gc(pair.G, pair.c, b);
  CPReport r = cp_verdict(0.5 * (a + a.adjoint()), tol);
  if (r.is_lindblad) r.diagonal_form = diagonalize_dissipator(r.a, b);
  return r;
}

namespace detail {

inline void require_traceless(const CMatrix& B, const NiceBasis& b, const char* what) {
  require_square(B, b.dim(), what);
  if (std::abs(B.trace()) > kInputTol) throw InvariantError(std::string(what) + ": B must be traceless");
}

}  // namespace detail

/// sum_i Tr[(sum_j G_ij F_j + c_i I) B^dag F_i B]; equals b^dag a b with
/// b_m = Tr(F_m B).
inline double cp_quadratic_form(const OdePair& pair, const CMatrix& B, const NiceBasis& b) {
  pair.validate(b.num_traceless());
  detail::require_traceless(B, b, "cp_quadratic_form");
  const int J = b.num_traceless();
  const int d = b.dim();
  const CMatrix bd = B.adjoint();
  cplx s{};
  for (int i = 0; i < J; ++i) {
    CMatrix g = pair.c(i) * CMatrix::Identity(d, d);
    for (int j = 0; j < J; ++j) g += pair.G(i, j) * b.traceless(j);
    s += detail::trace_of_product(g, CMatrix(bd * b.traceless(i) * B));
  }
  return s.real();
}

/// Generator of the rank-one dissipator X -> B X B^dag - 1/2 {B^dag B, X}:
/// R_kl = Tr[F_k (B F_l B^dag - 1/2 {B^dag B, F_l})], c_k = (1/d) Tr([B, B^dag] F_k).
inline OdePair sample_extreme_ray(const CMatrix& B, const NiceBasis& b) {
  detail::require_traceless(B, b, "sample_extreme_ray");
  const int J = b.num_traceless();
  const int d = b.dim();
  const CMatrix bd = B.adjoint();
  const CMatrix bdb = bd * B;
  OdePair p{RMatrix(J, J), RVector(J), RMatrix::Zero(J, J), std::nullopt, 0.0};
  for (int l = 0; l < J; ++l) {
    const CMatrix& fl = b.traceless(l);
    const CMatrix image = B * fl * bd - 0.5 * (bdb * fl + fl * bdb);
    for (int k = 0; k < J; ++k) p.G(k, l) = detail::trace_of_product(b.traceless(k), image).real();
  }
  const CMatrix comm = detail::commutator(B, bd);
  for (int k = 0; k < J; ++k) p.c(k) = detail::trace_of_product(comm, b.traceless(k)).real() / d;
  p.R = p.G;
  return p;
}

struct ConeHullReport {
  int n_trials = 0;
  int n_pass = 0;              // in-cone combinations accepted
  int n_outside_detected = 0;  // pushed-out combinations rejected
};

/// Random convex combinations of extreme rays, plus a random Hamiltonian part,
/// must pass check_lindblad. Each combination is then pushed out of the cone by
/// subtracting (lambda_min + 1) times the ray of its lowest eigenvector, which
/// must be rejected.
inline ConeHullReport cone_hull_consistency(int n_trials, const NiceBasis& b, std::uint64_t seed,
                                            int rays_per_trial = 3) {
  ConeHullReport rep;
  rep.n_trials = n_trials;
  const int J = b.num_traceless();
  const int d = b.dim();
  for (int t = 0; t < n_trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    OdePair sum{RMatrix::Zero(J, J), RVector::Zero(J), std::nullopt, std::nullopt, 0.0};
    double wsum = 0.0;
    std::vector<double> w(static_cast<std::size_t>(rays_per_trial));
    for (auto& x : w) wsum += (x = rng.uniform() + 1e-3);
    for (int r = 0; r < rays_per_trial; ++r) {
      const OdePair ray = sample_extreme_ray(random_traceless(d, rng), b);
      sum.G += (w[static_cast<std::size_t>(r)] / wsum) * ray.G;
      sum.c += (w[static_cast<std::size_t>(r)] / wsum) * ray.c;
    }
    sum.G += q_from_h(random_traceless_hermitian(d, rng), b);
    const CPReport in = check_lindblad(sum, b);
    if (in.is_lindblad) ++rep.n_pass;

    const HermitianEigen eig = hermitian_eigensolve(in.a);
    const CVector v = eig.vectors.col(J - 1);
    const double lambda_min = eig.values(J - 1);
    const OdePair push = sample_extreme_ray(from_traceless_coords(v, b), b);
    OdePair out = sum;
    out.G -= (lambda_min + 1.0) * push.G;
    out.c -= (lambda_min + 1.0) * push.c;
    if (!check_lindblad(out, b).is_lindblad) ++rep.n_outside_detected;
  }
  return rep;
}

}  // namespace lindblad
