#pragma once

// Worked qubit and qutrit systems in the normalized Gell-Mann basis, plus
// small helpers shared by the test binaries.

#include <cmath>
#include <cstdint>

#include "lindblad/lindblad.hpp"

namespace fixtures {

using namespace lindblad;

inline double max_diff(const CMatrix& a, const CMatrix& b) { return detail::max_abs(CMatrix(a - b)); }
inline double max_diff(const RMatrix& a, const RMatrix& b) { return detail::max_abs(RMatrix(a - b)); }
inline double max_diff(const RVector& a, const RVector& b) { return detail::max_abs(RVector(a - b)); }

inline CMatrix cm(const RMatrix& m) { return m.cast<cplx>(); }

inline CMatrix sigma_x() { CMatrix m(2, 2); m << 0, 1, 1, 0; return m; }
inline CMatrix sigma_y() { CMatrix m(2, 2); m << 0, -kI, kI, 0; return m; }
inline CMatrix sigma_z() { CMatrix m(2, 2); m << 1, 0, 0, -1; return m; }

// Qubit pure dephasing: a = diag(0, 0, 2 gamma), G = diag(-2g, -2g, 0), c = 0.
inline CMatrix dephasing_a(double g = 1.0) {
  CMatrix a = CMatrix::Zero(3, 3);
  a(2, 2) = 2.0 * g;
  return a;
}
inline RMatrix dephasing_G(double g = 1.0) {
  RMatrix G = RMatrix::Zero(3, 3);
  G(0, 0) = G(1, 1) = -2.0 * g;
  return G;
}

// Qubit amplitude damping with H = omega sigma_z.
inline CMatrix amplitude_a(double g = 1.0) {
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 0) = g;
  a(0, 1) = -kI * g;
  a(1, 0) = kI * g;
  a(1, 1) = g;
  return a;
}
inline RMatrix amplitude_Q(double w = 1.0) {
  RMatrix q = RMatrix::Zero(3, 3);
  q(0, 1) = -2.0 * w;
  q(1, 0) = 2.0 * w;
  return q;
}
inline RMatrix amplitude_R(double g = 1.0) {
  RMatrix r = RMatrix::Zero(3, 3);
  r(0, 0) = r(1, 1) = -g;
  r(2, 2) = -2.0 * g;
  return r;
}
inline RVector amplitude_c(double g = 1.0) {
  RVector c = RVector::Zero(3);
  c(2) = std::sqrt(2.0) * g;
  return c;
}

// G with a single 1 at (row 1, col 2): Markovian but not CP.
inline RMatrix noncp_G() {
  RMatrix G = RMatrix::Zero(3, 3);
  G(0, 1) = 1.0;
  return G;
}

// Qutrit amplitude damping between the two lowest levels.
inline CMatrix qutrit_a() {
  CMatrix a = CMatrix::Zero(8, 8);
  a(0, 0) = 1.0;
  a(0, 1) = -kI;
  a(1, 0) = kI;
  a(1, 1) = 1.0;
  return a;
}

inline RMatrix qutrit_R() {
  const double s3 = std::sqrt(3.0);
  RMatrix r(8, 8);
  r << -0.25, 0, 0, 0, -0.25, 0, 0, 0,
       0, -0.25, 0, 0.25, 0, 0, 0, 0,
       0, 0, -0.5, 0, 0, 0, 0, 0,
       0, -0.75, 0, -1.25, 0, 0, 0, 0,
       0.75, 0, 0, 0, -1.25, 0, 0, 0,
       0, 0, 0, 0, 0, -0.5, 0.25, 1.0 / (4.0 * s3),
       0, 0, 0, 0, 0, -0.75, -1.25, -s3 / 4.0,
       0, 0, 0, 0, 0, -s3 / 4.0, -s3 / 4.0, -0.75;
  return r;
}

inline RVector qutrit_c() {
  RVector c = RVector::Zero(8);
  c(5) = std::sqrt(2.0) / 3.0;
  return c;
}

// Antisymmetric qutrit G used to illustrate the G = Q + R split.
inline RMatrix qutrit_G_antisym() {
  const double s3 = std::sqrt(3.0);
  RMatrix g = RMatrix::Zero(8, 8);
  g(0, 4) = -0.25;
  g(1, 3) = 0.25;
  g(3, 1) = -0.25;
  g(4, 0) = 0.25;
  g(5, 6) = 0.25;
  g(5, 7) = -s3 / 4.0;
  g(6, 5) = -0.25;
  g(6, 7) = s3 / 4.0;
  g(7, 5) = s3 / 4.0;
  g(7, 6) = -s3 / 4.0;
  return g;
}

inline CMatrix qutrit_H() {
  CMatrix h = CMatrix::Zero(3, 3);
  h(1, 2) = h(2, 1) = 1.0 / 6.0;
  return h;
}

inline RMatrix qutrit_Q() {
  const double s3 = std::sqrt(3.0);
  RMatrix q = RMatrix::Zero(8, 8);
  q(0, 4) = 1.0 / 6.0;
  q(1, 3) = 1.0 / 6.0;
  q(3, 1) = -1.0 / 6.0;
  q(4, 0) = -1.0 / 6.0;
  q(5, 6) = 1.0 / 6.0;
  q(5, 7) = -1.0 / (2.0 * s3);
  q(6, 5) = -1.0 / 6.0;
  q(7, 5) = 1.0 / (2.0 * s3);
  return q;
}

// Random system with traceless Hermitian H and Hermitian a.
inline MasterEqParams random_params(int d, CounterRng& rng) {
  return MasterEqParams::make(random_traceless_hermitian(d, rng), random_hermitian(d * d - 1, rng));
}

// Random Lindblad system: a = m m^dag / J.
inline MasterEqParams random_lindblad(int d, CounterRng& rng) {
  const int J = d * d - 1;
  const CMatrix m = random_complex(J, J, rng);
  return MasterEqParams::make(random_traceless_hermitian(d, rng), m * m.adjoint() / static_cast<double>(J));
}

inline OdePair random_pair(int d, CounterRng& rng) {
  const int J = d * d - 1;
  OdePair p;
  p.G = random_real(J, J, rng);
  p.c = random_real(J, 1, rng).col(0);
  return p;
}

}  // namespace fixtures
