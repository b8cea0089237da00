#pragma once

#include <cmath>
#include <cstdint>

#include "lindblad/types.hpp"

namespace lindblad {

/// Counter-based generator: the stream for (seed, index) is independent of
/// how many other streams were drawn, so sample i is reproducible on any
/// thread. Bits come from splitmix64; uniforms use the top 53 bits; normals use
/// the Marsaglia polar method, rejecting s >= 1 and s == 0 and caching the
/// second variate.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL))) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  double normal(double stddev) { return stddev * normal(); }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline RMatrix random_real(int rows, int cols, CounterRng& rng, double stddev = 1.0) {
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal(stddev);
  return m;
}

inline CMatrix random_complex(int rows, int cols, CounterRng& rng, double stddev = 1.0) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = rng.normal(stddev);
      const double im = rng.normal(stddev);
      m(i, j) = cplx(re, im);
    }
  return m;
}

inline CMatrix random_hermitian(int n, CounterRng& rng) {
  const CMatrix a = random_complex(n, n, rng);
  return 0.5 * (a + a.adjoint());
}

inline CMatrix random_traceless_hermitian(int n, CounterRng& rng) {
  CMatrix h = random_hermitian(n, rng);
  h.diagonal().array() -= h.trace() / static_cast<double>(n);
  return h;
}

inline CMatrix random_traceless(int n, CounterRng& rng) {
  CMatrix m = random_complex(n, n, rng);
  m.diagonal().array() -= m.trace() / static_cast<double>(n);
  return m;
}

}  // namespace lindblad
