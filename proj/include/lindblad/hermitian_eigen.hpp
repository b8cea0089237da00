#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

struct HermitianEigen {
  RVector values;   // descending
  CMatrix vectors;  // column k is the eigenvector of values(k)
};

namespace detail {

// Off-diagonal Frobenius norm squared.
inline double off_diagonal_norm2(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each pivot (p, q) is handled in two unitary steps: a diagonal phase on q
/// that makes a_pq real, then a real plane rotation that annihilates it.
/// Output is deterministic: eigenvalues are sorted descending, each
/// eigenvector is scaled so that its largest-magnitude component (lowest index
/// among ties) is real and positive, and vectors of (numerically) equal
/// eigenvalues are ordered by the index of that component.
inline HermitianEigen hermitian_eigensolve(const CMatrix& input, bool compute_vectors = true,
                                           int max_sweeps = 100) {
  if (input.rows() != input.cols()) throw ShapeError("hermitian_eigensolve: matrix not square");
  const Eigen::Index n = input.rows();
  CMatrix a = 0.5 * (input + input.adjoint());
  CMatrix v = compute_vectors ? CMatrix(CMatrix::Identity(n, n)) : CMatrix();

  const double total = a.squaredNorm();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double off = detail::off_diagonal_norm2(a);
    if (off <= eps * eps * total || off == 0.0) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Skip entries that are negligible against both diagonals (after the
        // first few sweeps), as in the classic real algorithm.
        if (sweep > 3 && std::abs(app) + 100.0 * r == std::abs(app) &&
            std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Phase step D^dagger A D with D_qq = e^{-i arg a_pq}.
        const cplx phase = std::conj(a(p, q)) / r;  // e^{-i arg a_pq}
        a.col(q) *= phase;
        a.row(q) *= std::conj(phase);
        if (compute_vectors) v.col(q) *= phase;
        // Real rotation on the now-real pivot.
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        CVector colp = a.col(p);
        CVector colq = a.col(q);
        a.col(p) = c * colp - s * colq;
        a.col(q) = s * colp + c * colq;
        Eigen::RowVectorXcd rowp = a.row(p);
        Eigen::RowVectorXcd rowq = a.row(q);
        a.row(p) = c * rowp - s * rowq;
        a.row(q) = s * rowp + c * rowq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (compute_vectors) {
          CVector vp = v.col(p);
          CVector vq = v.col(q);
          v.col(p) = c * vp - s * vq;
          v.col(q) = s * vp + c * vq;
        }
      }
    }
  }

  RVector diag = a.diagonal().real();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  std::vector<Eigen::Index> lead(static_cast<std::size_t>(n), 0);
  if (compute_vectors) {
    for (Eigen::Index k = 0; k < n; ++k) {
      auto col = v.col(k);
      col.normalize();
      double best = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double m = std::abs(col(i));
        if (m > best * (1.0 + 1e-12) + 1e-15) {
          best = m;
          lead[static_cast<std::size_t>(k)] = i;
        }
      }
      const cplx pivot = col(lead[static_cast<std::size_t>(k)]);
      col *= std::abs(pivot) / pivot;
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return diag(x) > diag(y); });
  if (compute_vectors) {
    // Within each cluster of numerically equal eigenvalues, order by lead index.
    const double scale = std::max(1.0, n ? diag.cwiseAbs().maxCoeff() : 0.0);
    const double degenerate = 1e-10 * scale;
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= order.size(); ++k) {
      if (k == order.size() || diag(order[k - 1]) - diag(order[k]) > degenerate) {
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                         order.begin() + static_cast<std::ptrdiff_t>(k),
                         [&](Eigen::Index x, Eigen::Index y) {
                           return lead[static_cast<std::size_t>(x)] < lead[static_cast<std::size_t>(y)];
                         });
        begin = k;
      }
    }
  }

  HermitianEigen out;
  out.values.resize(n);
  if (compute_vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = diag(src);
    if (compute_vectors) out.vectors.col(k) = v.col(src);
  }
  return out;
}

inline RVector hermitian_eigenvalues(const CMatrix& a) {
  return hermitian_eigensolve(a, false).values;
}

}  // namespace lindblad
