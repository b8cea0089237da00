#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "lindblad/basis.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// A linear map on d x d matrices stored by its action on matrix units:
/// E(klmn) = E(|l><m|)_{kn}, so that E(A)_{kn} = sum_lm E(klmn) A_lm.
class SuperopTensor {
 public:
  SuperopTensor() = default;
  explicit SuperopTensor(int d) : d_(d), data_(static_cast<std::size_t>(d) * d * d * d) {}

  /// Tabulate any callable CMatrix(const CMatrix&) on the d^2 matrix units.
  template <class Map>
  static SuperopTensor from_map(int d, Map&& map) {
    SuperopTensor t(d);
    for (int l = 0; l < d; ++l) {
      for (int m = 0; m < d; ++m) {
        CMatrix unit = CMatrix::Zero(d, d);
        unit(l, m) = 1.0;
        const CMatrix image = map(unit);
        detail::require_square(image, d, "SuperopTensor::from_map image");
        for (int k = 0; k < d; ++k)
          for (int n = 0; n < d; ++n) t(k, l, m, n) = image(k, n);
      }
    }
    return t;
  }

  static SuperopTensor identity(int d) {
    return from_map(d, [](const CMatrix& a) { return a; });
  }

  int dim() const noexcept { return d_; }

  cplx operator()(int k, int l, int m, int n) const { return data_[index(k, l, m, n)]; }
  cplx& operator()(int k, int l, int m, int n) { return data_[index(k, l, m, n)]; }

  CMatrix apply(const CMatrix& a) const {
    detail::require_square(a, d_, "SuperopTensor::apply");
    CMatrix out = CMatrix::Zero(d_, d_);
    for (int k = 0; k < d_; ++k)
      for (int l = 0; l < d_; ++l)
        for (int m = 0; m < d_; ++m) {
          const cplx alm = a(l, m);
          if (alm == cplx{}) continue;
          for (int n = 0; n < d_; ++n) out(k, n) += (*this)(k, l, m, n) * alm;
        }
    return out;
  }

  double max_abs_difference(const SuperopTensor& other) const {
    if (other.d_ != d_) throw ShapeError("SuperopTensor: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
  }

 private:
  std::size_t index(int k, int l, int m, int n) const {
    return ((static_cast<std::size_t>(k) * d_ + l) * d_ + m) * d_ + n;
  }
  int d_ = 0;
  std::vector<cplx> data_;
};

/// E_ij = Tr[F_i E(F_j)], (J+1) x (J+1).
struct SuperopMatrix {
  CMatrix entries;
};

/// Coefficients of E(A) = sum_ij c_ij F_i A F_j over the full basis (0..J).
struct FAFRep {
  CMatrix c;
};

inline SuperopMatrix superop_matrix(const SuperopTensor& t, const NiceBasis& b) {
  if (t.dim() != b.dim()) throw ShapeError("superop_matrix: dimension mismatch");
  const int n = b.size();
  SuperopMatrix m{CMatrix(n, n)};
  for (int j = 0; j < n; ++j) {
    const CMatrix image = t.apply(b.element(j));
    for (int i = 0; i < n; ++i) m.entries(i, j) = detail::trace_of_product(b.element(i), image);
  }
  return m;
}

/// c_ij = sum F_i(l'k') F_j(n'm') E(k'l'm'n'): matrix-unit expansion applied on
/// both sides of the map.
inline FAFRep faf_from_tensor(const SuperopTensor& t, const NiceBasis& b) {
  if (t.dim() != b.dim()) throw ShapeError("faf_from_tensor: dimension mismatch");
  const int d = b.dim();
  const int n = b.size();
  FAFRep r{CMatrix::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    const CMatrix& fi = b.element(i);
    for (int j = 0; j < n; ++j) {
      const CMatrix& fj = b.element(j);
      cplx s{};
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const cplx fl = fi(l, k);
          if (fl == cplx{}) continue;
          for (int m = 0; m < d; ++m)
            for (int nn = 0; nn < d; ++nn) s += fl * fj(nn, m) * t(k, l, m, nn);
        }
      r.c(i, j) = s;
    }
  }
  return r;
}

inline CMatrix apply_faf(const FAFRep& r, const NiceBasis& b, const CMatrix& a) {
  detail::require_square(r.c, b.size(), "apply_faf coefficients");
  detail::require_square(a, b.dim(), "apply_faf operand");
  CMatrix out = CMatrix::Zero(b.dim(), b.dim());
  for (int i = 0; i < b.size(); ++i) {
    const CMatrix left = b.element(i) * a;
    for (int j = 0; j < b.size(); ++j) {
      if (r.c(i, j) == cplx{}) continue;
      out += r.c(i, j) * left * b.element(j);
    }
  }
  return out;
}

inline SuperopTensor tensor_from_faf(const FAFRep& r, const NiceBasis& b) {
  return SuperopTensor::from_map(b.dim(), [&](const CMatrix& a) { return apply_faf(r, b, a); });
}

/// Hilbert-Schmidt adjoint: conjugate every coefficient.
inline FAFRep adjoint_faf(const FAFRep& r) { return FAFRep{r.c.conjugate()}; }

inline bool is_hermiticity_preserving(const SuperopMatrix& m, double tol = kAlgebraicTol) {
  return m.entries.size() == 0 || m.entries.imag().cwiseAbs().maxCoeff() <= tol;
}

/// ||E(I)||_F <= tol
inline bool is_unital(const SuperopTensor& t, double tol = kAlgebraicTol) {
  const int d = t.dim();
  return t.apply(CMatrix::Identity(d, d)).norm() <= tol;
}

}  // namespace lindblad
