#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lindblad/basis.hpp"
#include "lindblad/cp.hpp"
#include "lindblad/forward.hpp"
#include "lindblad/inverse.hpp"
#include "lindblad/random.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

enum class Ensemble { GinOE, GUE };

inline const char* to_string(Ensemble e) { return e == Ensemble::GinOE ? "GinOE" : "GUE"; }

struct RarityEstimate {
  Ensemble ensemble = Ensemble::GinOE;
  int dim_d = 0;  // 0 when the ensemble is parameterized by J alone
  int J = 0;
  std::int64_t n_samples = 0;
  std::int64_t n_positive = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval.
inline void wilson_interval(std::int64_t k, std::int64_t n, double z, double& lo, double& hi) {
  if (n <= 0) throw InvariantError("wilson_interval: n must be positive");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  lo = std::clamp(centre - half, 0.0, p);
  hi = std::clamp(centre + half, p, 1.0);
}

inline RarityEstimate make_estimate(Ensemble e, int d, int J, std::int64_t n, std::int64_t k, std::uint64_t seed) {
  RarityEstimate r;
  r.ensemble = e;
  r.dim_d = d;
  r.J = J;
  r.n_samples = n;
  r.n_positive = k;
  r.p_hat = static_cast<double>(k) / static_cast<double>(n);
  r.seed = seed;
  wilson_interval(k, n, kZ95, r.ci_low, r.ci_high);
  return r;
}

/// G entries i.i.d. N(0, 1); c entries i.i.d. N(0, 1/d). G is filled row by row, then c.
inline OdePair sample_ginoe_pair(int d, CounterRng& rng) {
  if (d < 2) throw InvariantError("sample_ginoe_pair: d must be >= 2");
  const int J = d * d - 1;
  OdePair p;
  p.G = random_real(J, J, rng);
  p.c = RVector(J);
  const double sc = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < J; ++k) p.c(k) = rng.normal(sc);
  return p;
}

/// a = (A + A^dag)/2, with A's real and imaginary parts i.i.d. N(0, 1/2).
inline CMatrix sample_gue(int J, CounterRng& rng) {
  if (J < 1) throw InvariantError("sample_gue: J must be >= 1");
  const CMatrix A = random_complex(J, J, rng, std::sqrt(0.5));
  return 0.5 * (A + A.adjoint());
}

namespace detail {

// Runs count(i) for i in [0, n) over `threads` workers and sums the results.
// Each index owns its random stream, so totals do not depend on threads.
template <class Count>
std::vector<std::int64_t> parallel_counts(std::int64_t n, int threads, int width, Count&& count) {
  threads = std::max(1, threads);
  std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(threads),
                                                 std::vector<std::int64_t>(static_cast<std::size_t>(width), 0));
  auto work = [&](int w) {
    const std::int64_t lo = n * w / threads;
    const std::int64_t hi = n * (w + 1) / threads;
    for (std::int64_t i = lo; i < hi; ++i) count(i, partial[static_cast<std::size_t>(w)]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<std::int64_t> total(static_cast<std::size_t>(width), 0);
  for (const auto& p : partial)
    for (int k = 0; k < width; ++k) total[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k)];
  return total;
}

}  // namespace detail

struct GinoeRarity {
  RarityEstimate lindblad;  // a >= 0
  RarityEstimate stable;    // every eigenvalue of G has Re <= 0
  std::int64_t psd_but_unstable = 0;  // must be 0: a >= 0 implies a stable spectrum
};

/// Fraction of GinOE pairs that are Lindblad generators, alongside the
/// fraction with a stable spectrum (a necessary condition).
inline GinoeRarity estimate_p_lindblad_ginoe(int d, std::int64_t n_samples, std::uint64_t seed,
                                             const NiceBasis& b, int threads = 1, double tol = kInputTol) {
  if (n_samples < 1) throw InvariantError("estimate_p_lindblad_ginoe: n_samples must be >= 1");
  if (b.dim() != d) throw ShapeError("estimate_p_lindblad_ginoe: basis dimension mismatch");
  const AKernel kernel(b);
  const int J = b.num_traceless();
  const auto counts = detail::parallel_counts(n_samples, threads, 3, [&](std::int64_t i, std::vector<std::int64_t>& acc) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const OdePair p = sample_ginoe_pair(d, rng);
    const CMatrix a = kernel.apply(p.G, p.c);
    const bool psd = cp_verdict(0.5 * (a + a.adjoint()), tol).is_lindblad;
    Eigen::EigenSolver<RMatrix> es(p.G, false);
    const double scale = std::max(1.0, detail::max_abs(p.G));
    const bool stable = es.eigenvalues().real().maxCoeff() <= tol * scale;
    if (psd) ++acc[0];
    if (stable) ++acc[1];
    if (psd && !stable) ++acc[2];
  });
  return {make_estimate(Ensemble::GinOE, d, J, n_samples, counts[0], seed),
          make_estimate(Ensemble::GinOE, d, J, n_samples, counts[1], seed), counts[2]};
}

/// Fraction of GUE matrices of size J that are positive semidefinite.
inline RarityEstimate estimate_p_gue(int J, std::int64_t n_samples, std::uint64_t seed, int threads = 1) {
  if (n_samples < 1) throw InvariantError("estimate_p_gue: n_samples must be >= 1");
  if (J < 1) throw InvariantError("estimate_p_gue: J must be >= 1");
  const auto counts = detail::parallel_counts(n_samples, threads, 1, [&](std::int64_t i, std::vector<std::int64_t>& acc) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const RVector ev = hermitian_eigenvalues(sample_gue(J, rng));
    if (ev(ev.size() - 1) >= 0.0) ++acc[0];
  });
  const int d = static_cast<int>(std::lround(std::sqrt(J + 1.0)));
  return make_estimate(Ensemble::GUE, d * d == J + 1 ? d : 0, J, n_samples, counts[0], seed);
}

struct CovarianceReport {
  int dim_d = 0;
  std::int64_t n_samples = 0;
  double max_deviation = 0.0;      // max |empirical - analytic| over entries and re/im parts
  double max_standard_error = 0.0;
  double max_z = 0.0;              // max |deviation| / standard error
  bool passed = false;
};

inline cplx ginoe_a_covariance_analytic(int m, int n, int mp, int np, const NiceBasis& b) {
  const double delta = (m == np && n == mp) ? 1.0 : 0.0;
  const CMatrix prod = b.traceless(mp) * b.traceless(np) * b.traceless(m) * b.traceless(n);
  return delta - prod.trace() / static_cast<double>(b.dim());
}

namespace detail {

// Compares E(a_mn a_m'n') against `analytic` using the increments of
// `sample(i)` (one a per index); pass iff every part is within 5 standard
// errors (plus 1e-12 for entries with zero spread).
template <class Sample, class Analytic>
CovarianceReport covariance_check(int J, std::int64_t n, Sample&& sample, Analytic&& analytic) {
  const std::size_t J4 = static_cast<std::size_t>(J) * J * J * J;
  std::vector<cplx> sum(J4), sq(J4);  // sq holds (re^2, im^2) sums
  for (std::int64_t s = 0; s < n; ++s) {
    const CMatrix a = sample(s);
    std::size_t idx = 0;
    for (int m = 0; m < J; ++m)
      for (int nn = 0; nn < J; ++nn)
        for (int mp = 0; mp < J; ++mp)
          for (int np = 0; np < J; ++np, ++idx) {
            const cplx v = a(m, nn) * a(mp, np);
            sum[idx] += v;
            sq[idx] += cplx(v.real() * v.real(), v.imag() * v.imag());
          }
  }
  CovarianceReport r;
  r.n_samples = n;
  r.passed = true;
  const double nd = static_cast<double>(n);
  std::size_t idx = 0;
  for (int m = 0; m < J; ++m)
    for (int nn = 0; nn < J; ++nn)
      for (int mp = 0; mp < J; ++mp)
        for (int np = 0; np < J; ++np, ++idx) {
          const cplx mean = sum[idx] / nd;
          const cplx target = analytic(m, nn, mp, np);
          const double var_re = std::max(0.0, sq[idx].real() / nd - mean.real() * mean.real());
          const double var_im = std::max(0.0, sq[idx].imag() / nd - mean.imag() * mean.imag());
          const double se_re = std::sqrt(var_re / nd);
          const double se_im = std::sqrt(var_im / nd);
          const double dev_re = std::abs(mean.real() - target.real());
          const double dev_im = std::abs(mean.imag() - target.imag());
          r.max_deviation = std::max({r.max_deviation, dev_re, dev_im});
          r.max_standard_error = std::max({r.max_standard_error, se_re, se_im});
          if (se_re > 0.0) r.max_z = std::max(r.max_z, dev_re / se_re);
          if (se_im > 0.0) r.max_z = std::max(r.max_z, dev_im / se_im);
          if (dev_re > 5.0 * se_re + 1e-12 || dev_im > 5.0 * se_im + 1e-12) r.passed = false;
        }
  return r;
}

}  // namespace detail

/// E(a_mn a_m'n') for a induced by GinOE pairs, against
/// delta_mn' delta_nm' - (1/d) Tr(F_m' F_n' F_m F_n).
inline CovarianceReport ginoe_induced_a_covariance(int d, std::int64_t n_samples, std::uint64_t seed,
                                                   const NiceBasis& b) {
  if (n_samples < 2) throw InvariantError("ginoe_induced_a_covariance: need at least 2 samples");
  if (b.dim() != d) throw ShapeError("ginoe_induced_a_covariance: basis dimension mismatch");
  const AKernel kernel(b);
  CovarianceReport r = detail::covariance_check(
      b.num_traceless(), n_samples,
      [&](std::int64_t i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        const OdePair p = sample_ginoe_pair(d, rng);
        return kernel.apply(p.G, p.c);
      },
      [&](int m, int n, int mp, int np) { return ginoe_a_covariance_analytic(m, n, mp, np, b); });
  r.dim_d = d;
  return r;
}

/// E(a_mn a_m'n') = 1/2 delta_mn' delta_nm' for the GUE.
inline CovarianceReport gue_covariance(int J, std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw InvariantError("gue_covariance: need at least 2 samples");
  return detail::covariance_check(
      J, n_samples,
      [&](std::int64_t i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        return sample_gue(J, rng);
      },
      [](int m, int n, int mp, int np) { return cplx((m == np && n == mp) ? 0.5 : 0.0); });
}

}  // namespace lindblad
