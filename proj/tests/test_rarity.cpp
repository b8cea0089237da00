#include <gtest/gtest.h>

#include <thread>

#include "fixtures.hpp"

using namespace lindblad;
using fixtures::max_diff;

namespace {

// P(both eigenvalues >= 0) for 2x2 GUE: density e^{-l1^2 - l2^2} (l1 - l2)^2,
// composite Simpson on [0,L]^2 over [-L,L]^2.
double gue2_quadrature() {
  const double L = 7.0;
  const int n = 700;  // even
  auto simpson = [&](double lo, double hi) {
    const double h = (hi - lo) / n;
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double wi = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double x = lo + i * h;
      for (int j = 0; j <= n; ++j) {
        const double wj = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        const double y = lo + j * h;
        total += wi * wj * std::exp(-x * x - y * y) * (x - y) * (x - y);
      }
    }
    return total * h * h / 9.0;
  };
  return simpson(0.0, L) / simpson(-L, L);
}

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

}  // namespace

TEST(Wilson, IntervalProperties) {
  double lo = 0, hi = 0;
  wilson_interval(0, 1, kZ95, lo, hi);
  EXPECT_EQ(lo, 0.0);
  EXPECT_GT(hi, 0.5);
  wilson_interval(1, 1, kZ95, lo, hi);
  EXPECT_EQ(hi, 1.0);
  EXPECT_LT(lo, 0.5);
  wilson_interval(50, 100, kZ95, lo, hi);
  EXPECT_NEAR(lo, 0.4038, 1e-4);
  EXPECT_NEAR(hi, 0.5962, 1e-4);
  EXPECT_THROW(wilson_interval(0, 0, kZ95, lo, hi), InvariantError);
}

TEST(Rng, DeterministicAndKeyed) {
  CounterRng a(5, 17), b(5, 17), c(5, 18);
  for (int i = 0; i < 10; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    EXPECT_NE(x, c.normal());
  }
  CounterRng u(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(GinoeSampling, Moments) {
  const int d = 2, J = 3;
  const std::int64_t n = 100000;
  double gs = 0, gs2 = 0, cs = 0, cs2 = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    CounterRng rng(3, static_cast<std::uint64_t>(i));
    const OdePair p = sample_ginoe_pair(d, rng);
    gs += p.G.sum();
    gs2 += p.G.squaredNorm();
    cs += p.c.sum();
    cs2 += p.c.squaredNorm();
  }
  const double ng = static_cast<double>(n) * J * J, nc = static_cast<double>(n) * J;
  EXPECT_LT(std::abs(gs / ng), 3.0 / std::sqrt(ng));
  EXPECT_NEAR(gs2 / ng, 1.0, 5.0 * std::sqrt(2.0 / ng));
  EXPECT_LT(std::abs(cs / nc), 3.0 * std::sqrt(0.5 / nc));
  EXPECT_NEAR(cs2 / nc, 1.0 / d, 5.0 * std::sqrt(2.0 / nc) / d);
  CounterRng rng(0, 0);
  EXPECT_THROW(sample_ginoe_pair(1, rng), InvariantError);
}

TEST(GueSampling, ScalarAndHermitian) {
  const std::int64_t n = 100000;
  double s2 = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    CounterRng rng(4, static_cast<std::uint64_t>(i));
    const CMatrix a = sample_gue(1, rng);
    EXPECT_EQ(a(0, 0).imag(), 0.0);
    s2 += std::norm(a(0, 0));
  }
  EXPECT_NEAR(s2 / n, 0.5, 5.0 * 0.5 * std::sqrt(2.0 / n));
  CounterRng rng(4, 0);
  const CMatrix a = sample_gue(6, rng);
  EXPECT_EQ(detail::hermiticity_defect(a), 0.0);
}

TEST(GueSampling, SemicircleQualitative) {
  // eigenvalues of J x J GUE with E|a_ij|^2 = 1/2 fill [-sqrt(2J), sqrt(2J)]
  const int J = 32;
  const double edge = std::sqrt(2.0 * J);
  int inside = 0, centre = 0, total = 0;
  for (int s = 0; s < 200; ++s) {
    CounterRng rng(5, static_cast<std::uint64_t>(s));
    const RVector ev = hermitian_eigenvalues(sample_gue(J, rng));
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      ++total;
      if (std::abs(ev(k)) <= 1.05 * edge) ++inside;
      if (std::abs(ev(k)) <= 0.5 * edge) ++centre;
    }
  }
  EXPECT_GT(static_cast<double>(inside) / total, 0.995);
  // semicircle mass in |x| < R/2 is 1/3 + sqrt(3)/(2 pi) = 0.609
  EXPECT_NEAR(static_cast<double>(centre) / total, 0.609, 0.02);
}

TEST(GueRarity, ScalarIsHalf) {
  const RarityEstimate r = estimate_p_gue(1, 100000, 11, threads());
  EXPECT_LE(r.ci_low, 0.5);
  EXPECT_GE(r.ci_high, 0.5);
  EXPECT_EQ(r.n_samples, 100000);
  EXPECT_DOUBLE_EQ(r.p_hat, static_cast<double>(r.n_positive) / r.n_samples);
}

TEST(GueRarity, TwoByTwoMatchesQuadrature) {
  const double oracle = gue2_quadrature();
  EXPECT_NEAR(oracle, 0.25 - 1.0 / (2.0 * M_PI), 1e-9);
  const RarityEstimate r = estimate_p_gue(2, 100000, 12, threads());
  EXPECT_LE(r.ci_low, oracle);
  EXPECT_GE(r.ci_high, oracle);
}

TEST(GueRarity, ThreeByThreeOrderOfMagnitude) {
  const RarityEstimate r = estimate_p_gue(3, 200000, 13, threads());
  EXPECT_GT(r.p_hat, 1e-4);
  EXPECT_LT(r.p_hat, 1e-1);
  EXPECT_EQ(r.dim_d, 2);
}

TEST(GueRarity, ThreadCountDoesNotChangeCounts) {
  const RarityEstimate one = estimate_p_gue(2, 20000, 14, 1);
  const RarityEstimate four = estimate_p_gue(2, 20000, 14, 4);
  EXPECT_EQ(one.n_positive, four.n_positive);
  EXPECT_THROW(estimate_p_gue(2, 0, 1), InvariantError);
}

TEST(GinoeRarity, CountingInequalityAndDeterminism) {
  const NiceBasis b = generate_gell_mann(2);
  const GinoeRarity r = estimate_p_lindblad_ginoe(2, 50000, 21, b, threads());
  EXPECT_LE(r.lindblad.n_positive, r.stable.n_positive);
  EXPECT_EQ(r.psd_but_unstable, 0);
  EXPECT_GT(r.lindblad.n_positive, 0);
  EXPECT_LT(r.lindblad.p_hat, r.stable.p_hat);
  const GinoeRarity again = estimate_p_lindblad_ginoe(2, 50000, 21, b, 3);
  EXPECT_EQ(again.lindblad.n_positive, r.lindblad.n_positive);
  EXPECT_EQ(again.stable.n_positive, r.stable.n_positive);
}

TEST(GinoeRarity, SingleSample) {
  const NiceBasis b = generate_gell_mann(2);
  const GinoeRarity r = estimate_p_lindblad_ginoe(2, 1, 3, b);
  EXPECT_TRUE(r.lindblad.p_hat == 0.0 || r.lindblad.p_hat == 1.0);
  EXPECT_LE(r.lindblad.ci_low, r.lindblad.p_hat);
  EXPECT_GE(r.lindblad.ci_high, r.lindblad.p_hat);
  EXPECT_THROW(estimate_p_lindblad_ginoe(2, 0, 3, b), InvariantError);
}

TEST(GinoeRarity, DecaysWithDimension) {
  const std::int64_t n = 1000000;
  const GinoeRarity r2 = estimate_p_lindblad_ginoe(2, n, 31, generate_gell_mann(2), threads());
  const GinoeRarity r3 = estimate_p_lindblad_ginoe(3, n, 32, generate_gell_mann(3), threads());
  EXPECT_GT(r2.lindblad.p_hat, 0.0);
  EXPECT_LT(r2.lindblad.p_hat, r2.stable.p_hat);
  EXPECT_LT(r3.lindblad.ci_high, r2.lindblad.ci_low);
  EXPECT_LE(r3.lindblad.n_positive, r3.stable.n_positive);
  EXPECT_EQ(r3.psd_but_unstable, 0);
}

TEST(Covariance, AnalyticDiagonalEntry) {
  // m = n = m' = n': 1 - Tr(F^4)/d, Tr(F_1^4) = 1/2 for a d = 2 Pauli element
  const NiceBasis b = generate_gell_mann(2);
  EXPECT_NEAR(std::abs(ginoe_a_covariance_analytic(0, 0, 0, 0, b) - 0.75), 0.0, 1e-15);
  const NiceBasis b3 = generate_gell_mann(3);
  const CMatrix f = b3.traceless(7);
  const double tr4 = (f * f * f * f).trace().real();
  EXPECT_NEAR(ginoe_a_covariance_analytic(7, 7, 7, 7, b3).real(), 1.0 - tr4 / 3.0, 1e-15);
}

TEST(Covariance, GinoeInducedMatchesFormula) {
  const CovarianceReport r2 = ginoe_induced_a_covariance(2, 100000, 41, generate_gell_mann(2));
  EXPECT_TRUE(r2.passed) << r2.max_z;
  const CovarianceReport r3 = ginoe_induced_a_covariance(3, 100000, 42, generate_gell_mann(3));
  EXPECT_TRUE(r3.passed) << r3.max_z;
}

TEST(Covariance, GinoeFormulaDependsOnBasisBeyondQubits) {
  // a rotated nice basis: F'_j = U F_j U^dag with a non-identity real mixing
  const NiceBasis b = generate_gell_mann(3);
  const int J = 8;
  CounterRng rng(43, 0);
  const RMatrix x = random_real(J, J, rng);
  const HermitianEigen e = hermitian_eigensolve(CMatrix((x + x.transpose()).cast<cplx>()));
  const RMatrix o = e.vectors.real();  // real symmetric input -> real orthogonal vectors
  std::vector<CMatrix> el{b.element(0)};
  for (int i = 0; i < J; ++i) {
    CMatrix m = CMatrix::Zero(3, 3);
    for (int j = 0; j < J; ++j) m += o(j, i) * b.traceless(j);
    el.push_back(m);
  }
  const NiceBasis rotated(el);
  ASSERT_TRUE(verify_nice_basis(rotated, 1e-10).passed);
  double diff = 0.0;
  // diagonal entries are fixed by Tr(A^4) = (Tr A^2)^2 / 2 at d = 3, so scan all indices
  for (int m = 0; m < J; ++m)
    for (int n = 0; n < J; ++n)
      for (int mp = 0; mp < J; ++mp)
        for (int np = 0; np < J; ++np)
          diff = std::max(diff, std::abs(ginoe_a_covariance_analytic(m, n, mp, np, b) -
                                         ginoe_a_covariance_analytic(m, n, mp, np, rotated)));
  EXPECT_GT(diff, 1e-3);
}

TEST(Covariance, GueMatchesHalfDelta) {
  const CovarianceReport r = gue_covariance(3, 100000, 44);
  EXPECT_TRUE(r.passed) << r.max_z;
}
