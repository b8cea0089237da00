#pragma once

#include <array>
#include <cmath>
#include <deque>
#include <string>
#include <variant>
#include <vector>

#include "lindblad/basis.hpp"
#include "lindblad/forward.hpp"
#include "lindblad/inverse.hpp"
#include "lindblad/superop.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

// Six equivalent descriptions of a Markovian generator:
//   V1  (H, a)
//   V2  tensor x       (x_ijkl = x*_lkji, sum_k x_ijkk + x_kkij = 0)
//   V3  tensor x~      (x~_ijkl = x~*_lkji, sum_i x~_ijki = 0)
//   V4  Hermiticity-preserving, trace-annihilating superoperator on M(d)
//   V5  real-linear map from Hermitian to traceless Hermitian matrices
//   V6  (G, c)
enum class Space : int { V1 = 1, V2 = 2, V3 = 3, V4 = 4, V5 = 5, V6 = 6 };

inline std::string to_string(Space s) { return "V" + std::to_string(static_cast<int>(s)); }

enum class TensorFlavor { x, x_tilde };

/// Dense d x d x d x d complex tensor, index order (i, j, k, l).
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int d, TensorFlavor flavor)
      : d_(d), flavor_(flavor), data_(static_cast<std::size_t>(d) * d * d * d) {}

  int dim() const noexcept { return d_; }
  TensorFlavor flavor() const noexcept { return flavor_; }
  cplx operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }
  cplx& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }

  /// Largest violation of the flavor's defining conditions.
  double invariant_defect() const {
    double worst = 0.0;
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        for (int k = 0; k < d_; ++k)
          for (int l = 0; l < d_; ++l)
            worst = std::max(worst, std::abs((*this)(i, j, k, l) - std::conj((*this)(l, k, j, i))));
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        cplx s{};
        for (int k = 0; k < d_; ++k) {
          if (flavor_ == TensorFlavor::x)
            s += (*this)(i, j, k, k) + (*this)(k, k, i, j);
          else
            s += (*this)(k, i, j, k);  // sum over the outer pair: x~_{k i j k}
        }
        worst = std::max(worst, std::abs(s));
      }
    return worst;
  }

  double max_abs_difference(const Tensor4& o) const {
    if (o.d_ != d_) throw ShapeError("Tensor4: dimension mismatch");
    double worst = 0.0;
    for (std::size_t n = 0; n < data_.size(); ++n) worst = std::max(worst, std::abs(data_[n] - o.data_[n]));
    return worst;
  }

  double max_abs() const {
    double worst = 0.0;
    for (const auto& v : data_) worst = std::max(worst, std::abs(v));
    return worst;
  }

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * d_ + j) * d_ + k) * d_ + l;
  }
  int d_ = 0;
  TensorFlavor flavor_ = TensorFlavor::x;
  std::vector<cplx> data_;
};

/// A real-linear map on Hermitian matrices, stored by its images of the real
/// Hermitian units: E_jj, then E_jk + E_kj and -i(E_jk - E_kj) for j < k.
class HermitianRestriction {
 public:
  HermitianRestriction() = default;
  HermitianRestriction(int d, std::vector<CMatrix> images) : d_(d), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != d * d)
      throw ShapeError("HermitianRestriction: expected d^2 images");
    for (const auto& m : images_) detail::require_square(m, d, "HermitianRestriction image");
  }

  static std::vector<CMatrix> units(int d) {
    std::vector<CMatrix> out;
    for (int j = 0; j < d; ++j) {
      CMatrix e = CMatrix::Zero(d, d);
      e(j, j) = 1.0;
      out.push_back(e);
    }
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        CMatrix s = CMatrix::Zero(d, d);
        s(j, k) = 1.0;
        s(k, j) = 1.0;
        out.push_back(s);
        CMatrix a = CMatrix::Zero(d, d);
        a(j, k) = -kI;
        a(k, j) = kI;
        out.push_back(a);
      }
    return out;
  }

  /// Real coefficients of a Hermitian Y over units(d).
  static RVector unit_coords(const CMatrix& y) {
    const int d = static_cast<int>(y.rows());
    RVector out(d * d);
    int n = 0;
    for (int j = 0; j < d; ++j) out(n++) = y(j, j).real();
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        out(n++) = y(j, k).real();
        out(n++) = -y(j, k).imag();
      }
    return out;
  }

  template <class Map>
  static HermitianRestriction from_map(int d, Map&& map) {
    std::vector<CMatrix> images;
    for (const auto& u : units(d)) images.push_back(map(u));
    return HermitianRestriction(d, std::move(images));
  }

  int dim() const noexcept { return d_; }
  const std::vector<CMatrix>& images() const noexcept { return images_; }

  CMatrix apply(const CMatrix& y, double tol = kInputTol) const {
    detail::require_square(y, d_, "HermitianRestriction::apply");
    if (detail::hermiticity_defect(y) > tol)
      throw InvariantError("HermitianRestriction: argument is not Hermitian");
    const RVector w = unit_coords(y);
    CMatrix out = CMatrix::Zero(d_, d_);
    for (int n = 0; n < d_ * d_; ++n)
      if (w(n) != 0.0) out += w(n) * images_[static_cast<std::size_t>(n)];
    return out;
  }

  double invariant_defect() const {
    double worst = 0.0;
    for (const auto& m : images_)
      worst = std::max({worst, detail::hermiticity_defect(m), std::abs(m.trace())});
    return worst;
  }

 private:
  int d_ = 0;
  std::vector<CMatrix> images_;
};

using SpaceValue = std::variant<MasterEqParams, Tensor4, SuperopTensor, HermitianRestriction, OdePair>;

namespace detail {

// Hermiticity preservation and tracelessness of a superoperator tensor.
inline double v4_defect(const SuperopTensor& t) {
  const int d = t.dim();
  double worst = 0.0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n)
          worst = std::max(worst, std::abs(t(k, m, l, n) - std::conj(t(n, l, m, k))));
  for (int l = 0; l < d; ++l)
    for (int m = 0; m < d; ++m) {
      cplx s{};
      for (int k = 0; k < d; ++k) s += t(k, l, m, k);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

[[noreturn]] inline void space_fail(Space s, const std::string& why) {
  throw InvariantError(to_string(s) + ": " + why);
}

inline double value_scale(const SpaceValue& v) {
  struct {
    double operator()(const MasterEqParams& p) const { return std::max(max_abs(p.H), max_abs(p.a)); }
    double operator()(const Tensor4& t) const { return t.max_abs(); }
    double operator()(const SuperopTensor& t) const {
      double w = 0.0;
      const int d = t.dim();
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) w = std::max(w, std::abs(t(k, l, m, n)));
      return w;
    }
    double operator()(const HermitianRestriction& r) const {
      double w = 0.0;
      for (const auto& m : r.images()) w = std::max(w, max_abs(m));
      return w;
    }
    double operator()(const OdePair& p) const { return std::max(max_abs(p.G), max_abs(p.c)); }
  } visitor;
  return std::visit(visitor, v);
}

}  // namespace detail

/// Checks that `v` is a well-formed element of `s` (relative tolerance).
inline void validate_space_value(Space s, const SpaceValue& v, const NiceBasis& b, double tol = kInputTol) {
  const double scale = std::max(1.0, detail::value_scale(v));
  const int d = b.dim();
  switch (s) {
    case Space::V1: {
      const auto* p = std::get_if<MasterEqParams>(&v);
      if (!p) detail::space_fail(s, "expected (H, a)");
      detail::require_square(p->H, d, "V1 H");
      detail::require_square(p->a, b.num_traceless(), "V1 a");
      if (detail::hermiticity_defect(p->H) > tol * scale) detail::space_fail(s, "H is not Hermitian");
      if (std::abs(p->H.trace()) > tol * scale) detail::space_fail(s, "H is not traceless");
      if (detail::hermiticity_defect(p->a) > tol * scale) detail::space_fail(s, "a is not Hermitian");
      return;
    }
    case Space::V2:
    case Space::V3: {
      const auto* t = std::get_if<Tensor4>(&v);
      const TensorFlavor want = s == Space::V2 ? TensorFlavor::x : TensorFlavor::x_tilde;
      if (!t || t->flavor() != want) detail::space_fail(s, "expected a tensor of the matching flavor");
      if (t->dim() != d) throw ShapeError(to_string(s) + ": dimension mismatch");
      if (t->invariant_defect() > tol * scale) detail::space_fail(s, "tensor conditions violated");
      return;
    }
    case Space::V4: {
      const auto* t = std::get_if<SuperopTensor>(&v);
      if (!t) detail::space_fail(s, "expected a superoperator tensor");
      if (t->dim() != d) throw ShapeError("V4: dimension mismatch");
      if (detail::v4_defect(*t) > tol * scale) detail::space_fail(s, "not Hermiticity-preserving and trace-annihilating");
      return;
    }
    case Space::V5: {
      const auto* r = std::get_if<HermitianRestriction>(&v);
      if (!r) detail::space_fail(s, "expected a Hermitian restriction");
      if (r->dim() != d) throw ShapeError("V5: dimension mismatch");
      if (r->invariant_defect() > tol * scale) detail::space_fail(s, "images must be traceless Hermitian");
      return;
    }
    case Space::V6: {
      const auto* p = std::get_if<OdePair>(&v);
      if (!p) detail::space_fail(s, "expected (G, c)");
      p->validate(b.num_traceless());
      return;
    }
  }
  throw InvariantError("unknown space");
}

namespace spaces {

inline Tensor4 x_from_hamiltonian(const MasterEqParams& p, const NiceBasis& b) {
  const int d = b.dim();
  const int J = b.num_traceless();
  Tensor4 x(d, TensorFlavor::x);
  // sum_mn a_mn (F_m)_ij (F_n)_kl = sum_n (Y_n)_ij (F_n)_kl with Y_n = sum_m a_mn F_m.
  const auto y = detail::weighted_columns(p.a, b);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          cplx v = 0.0;
          if (k == l) v += -kI * p.H(i, j);
          if (i == j) v += kI * p.H(k, l);
          for (int n = 0; n < J; ++n) v += y[static_cast<std::size_t>(n)](i, j) * b.traceless(n)(k, l);
          x(i, j, k, l) = v;
        }
  return x;
}

// H_ij = (1/2id) sum_k (x_kkij - x_ijkk), a_mn = sum (F_m)_ji x_ijkl (F_n)_lk.
// Valid for both x and x~.
inline MasterEqParams hamiltonian_from_tensor(const Tensor4& x, const NiceBasis& b) {
  const int d = b.dim();
  const int J = b.num_traceless();
  MasterEqParams p;
  p.H = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx s{};
      for (int k = 0; k < d; ++k) s += x(k, k, i, j) - x(i, j, k, k);
      p.H(i, j) = s / (2.0 * kI * static_cast<double>(d));
    }
  p.H = 0.5 * (p.H + p.H.adjoint());
  // Contract (i, j) against F_m^T first: z_m(k, l) = sum_ij (F_m)_ji x_ijkl.
  p.a = CMatrix(J, J);
  for (int m = 0; m < J; ++m) {
    const CMatrix& fm = b.traceless(m);
    CMatrix z = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const cplx w = fm(j, i);
        if (w == cplx{}) continue;
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) z(k, l) += w * x(i, j, k, l);
      }
    for (int n = 0; n < J; ++n) p.a(m, n) = detail::trace_of_product(z, b.traceless(n));
  }
  p.a = 0.5 * (p.a + p.a.adjoint());
  return p;
}

// [L(X)]_il = sum_jk (x_ijkl X_jk - 1/2 x_jkij X_kl - 1/2 X_ij x_kljk)
inline SuperopTensor superop_from_tensor(const Tensor4& x) {
  const int d = x.dim();
  // Both correction terms contract the same way: k(i, k) = sum_j x_jkij.
  CMatrix k1 = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) k1(i, k) += x(j, k, i, j);
  return SuperopTensor::from_map(d, [&](const CMatrix& X) {
    CMatrix out = -0.5 * (k1 * X + X * k1);
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l) {
        cplx s{};
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) s += x(i, j, k, l) * X(j, k);
        out(i, l) += s;
      }
    return out;
  });
}

// x~_ijkl = [L(|j><k|)]_il
inline Tensor4 xt_from_superop(const SuperopTensor& t) {
  const int d = t.dim();
  Tensor4 x(d, TensorFlavor::x_tilde);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) x(i, j, k, l) = t(i, j, k, l);
  return x;
}

// b_ij = (1/2d) sum_k (x~_ijkk + x~_kkij - (1/d) sum_l x~_llkk delta_ij)
inline CMatrix b_from_xt(const Tensor4& xt) {
  const int d = xt.dim();
  cplx total{};
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) total += xt(l, l, k, k);
  CMatrix bm(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx s{};
      for (int k = 0; k < d; ++k) s += xt(i, j, k, k) + xt(k, k, i, j);
      if (i == j) s -= total / static_cast<double>(d);
      bm(i, j) = s / (2.0 * d);
    }
  return bm;
}

// x = x~ - b delta - delta b
inline Tensor4 x_from_xt(const Tensor4& xt, const CMatrix& bm) {
  const int d = xt.dim();
  Tensor4 x(d, TensorFlavor::x);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          cplx v = xt(i, j, k, l);
          if (k == l) v -= bm(i, j);
          if (i == j) v -= bm(k, l);
          x(i, j, k, l) = v;
        }
  return x;
}

inline HermitianRestriction restrict_superop(const SuperopTensor& t) {
  return HermitianRestriction::from_map(t.dim(), [&](const CMatrix& u) { return t.apply(u); });
}

// L(X) = L(Re X) + i L(Im X)
inline SuperopTensor extend_restriction(const HermitianRestriction& r) {
  return SuperopTensor::from_map(r.dim(), [&](const CMatrix& x) {
    const CMatrix re = 0.5 * (x + x.adjoint());
    const CMatrix im = (x - x.adjoint()) / (2.0 * kI);
    return CMatrix(r.apply(re) + kI * r.apply(im));
  });
}

// G_nm = Tr[F_n L(F_m)], c_n = Tr[F_n L(F_0)] / sqrt(d)
inline OdePair pair_from_restriction(const HermitianRestriction& r, const NiceBasis& b) {
  const int J = b.num_traceless();
  OdePair p{RMatrix(J, J), RVector(J), std::nullopt, std::nullopt, 0.0};
  double worst = 0.0;
  for (int m = 0; m <= J; ++m) {
    const CMatrix image = r.apply(b.element(m));
    for (int n = 0; n < J; ++n) {
      const cplx v = detail::trace_of_product(b.traceless(n), image);
      worst = std::max(worst, std::abs(v.imag()));
      if (m == 0)
        p.c(n) = v.real() / std::sqrt(static_cast<double>(b.dim()));
      else
        p.G(n, m - 1) = v.real();
    }
  }
  p.imag_residual = worst;
  return p;
}

// L(X) = sum_n (sum_m G_nm Tr(F_m X) + c_n Tr X) F_n
inline CMatrix apply_pair(const OdePair& p, const CMatrix& x, const NiceBasis& b) {
  const int J = b.num_traceless();
  CVector coords = traceless_coords(x, b);
  const cplx tr = x.trace();
  CMatrix out = CMatrix::Zero(b.dim(), b.dim());
  for (int n = 0; n < J; ++n) {
    cplx s = p.c(n) * tr;
    for (int m = 0; m < J; ++m) s += p.G(n, m) * coords(m);
    out += s * b.traceless(n);
  }
  return out;
}

// G~_n = sum_m G_nm F_m + c_n I
inline std::vector<CMatrix> g_tilde(const OdePair& p, const NiceBasis& b) {
  const int J = b.num_traceless();
  const int d = b.dim();
  std::vector<CMatrix> out;
  for (int n = 0; n < J; ++n) {
    CMatrix g = p.c(n) * CMatrix::Identity(d, d);
    for (int m = 0; m < J; ++m) g += p.G(n, m) * b.traceless(m);
    out.push_back(std::move(g));
  }
  return out;
}

// x~_ijkl = sum_n (G~_n)_kj (F_n)_il
inline Tensor4 xt_from_pair(const OdePair& p, const NiceBasis& b) {
  const int d = b.dim();
  const auto gt = g_tilde(p, b);
  Tensor4 x(d, TensorFlavor::x_tilde);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          cplx s{};
          for (int n = 0; n < b.num_traceless(); ++n) s += gt[static_cast<std::size_t>(n)](k, j) * b.traceless(n)(i, l);
          x(i, j, k, l) = s;
        }
  return x;
}

// b = (1/2d) sum_n (sum_m G_nm ({F_m, F_n} - delta_mn I/d) + 2 c_n F_n)
inline CMatrix b_from_pair(const OdePair& p, const NiceBasis& b) {
  const int d = b.dim();
  const int J = b.num_traceless();
  CMatrix s = CMatrix::Zero(d, d);
  for (int n = 0; n < J; ++n) {
    for (int m = 0; m < J; ++m) {
      if (p.G(n, m) == 0.0) continue;
      CMatrix term = detail::anticommutator(b.traceless(m), b.traceless(n));
      if (m == n) term -= CMatrix::Identity(d, d) / static_cast<double>(d);
      s += p.G(n, m) * term;
    }
    s += 2.0 * p.c(n) * b.traceless(n);
  }
  return s / (2.0 * d);
}

}  // namespace spaces

struct Edge {
  Space from;
  Space to;
};

/// The direct maps that are implemented; everything else is composed.
inline const std::vector<Edge>& direct_edges() {
  static const std::vector<Edge> edges = {
      {Space::V1, Space::V2}, {Space::V1, Space::V4}, {Space::V2, Space::V1}, {Space::V2, Space::V4},
      {Space::V3, Space::V1}, {Space::V3, Space::V2}, {Space::V3, Space::V4}, {Space::V4, Space::V3},
      {Space::V4, Space::V5}, {Space::V5, Space::V4}, {Space::V5, Space::V6}, {Space::V6, Space::V1},
      {Space::V6, Space::V2}, {Space::V6, Space::V3}, {Space::V6, Space::V4}, {Space::V6, Space::V5},
  };
  return edges;
}

inline bool has_direct_edge(Space from, Space to) {
  for (const auto& e : direct_edges())
    if (e.from == from && e.to == to) return true;
  return false;
}

/// Applies one direct map. The input is assumed valid for `from`.
inline SpaceValue phi_direct(Space from, Space to, const SpaceValue& v, const NiceBasis& b) {
  using namespace spaces;
  const auto key = static_cast<int>(from) * 10 + static_cast<int>(to);
  switch (key) {
    case 12: return x_from_hamiltonian(std::get<MasterEqParams>(v), b);
    case 14: return liouvillian_tensor(std::get<MasterEqParams>(v), b);
    case 21:
    case 31: return hamiltonian_from_tensor(std::get<Tensor4>(v), b);
    case 24:
    case 34: return superop_from_tensor(std::get<Tensor4>(v));
    case 32: {
      const auto& xt = std::get<Tensor4>(v);
      return x_from_xt(xt, b_from_xt(xt));
    }
    case 43: return xt_from_superop(std::get<SuperopTensor>(v));
    case 45: return restrict_superop(std::get<SuperopTensor>(v));
    case 54: return extend_restriction(std::get<HermitianRestriction>(v));
    case 56: return pair_from_restriction(std::get<HermitianRestriction>(v), b);
    case 61: return inverse_map(std::get<OdePair>(v), b);
    case 62: {
      const auto& p = std::get<OdePair>(v);
      return x_from_xt(xt_from_pair(p, b), b_from_pair(p, b));
    }
    case 63: return xt_from_pair(std::get<OdePair>(v), b);
    case 64: {
      const auto& p = std::get<OdePair>(v);
      return SuperopTensor::from_map(b.dim(), [&](const CMatrix& x) { return apply_pair(p, x, b); });
    }
    case 65: {
      const auto& p = std::get<OdePair>(v);
      return HermitianRestriction::from_map(b.dim(), [&](const CMatrix& x) { return apply_pair(p, x, b); });
    }
    default: break;
  }
  throw Error("phi_direct: no direct map " + to_string(from) + " -> " + to_string(to));
}

/// Shortest route from -> to over direct_edges(); BFS visits targets in
/// ascending order, so the route is fixed.
inline std::vector<Space> shortest_route(Space from, Space to) {
  std::array<int, 7> prev{};
  prev.fill(0);
  std::deque<int> queue{static_cast<int>(from)};
  prev[static_cast<std::size_t>(from)] = static_cast<int>(from);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == static_cast<int>(to)) break;
    for (int w = 1; w <= 6; ++w) {
      if (prev[static_cast<std::size_t>(w)] != 0) continue;
      if (!has_direct_edge(static_cast<Space>(u), static_cast<Space>(w))) continue;
      prev[static_cast<std::size_t>(w)] = u;
      queue.push_back(w);
    }
  }
  std::vector<Space> route{to};
  for (int u = static_cast<int>(to); u != static_cast<int>(from); u = prev[static_cast<std::size_t>(u)])
    route.insert(route.begin(), static_cast<Space>(prev[static_cast<std::size_t>(u)]));
  return route;
}

/// Applies the maps along `route` (consecutive pairs must be direct edges).
inline SpaceValue apply_route(const std::vector<Space>& route, SpaceValue v, const NiceBasis& b) {
  for (std::size_t k = 0; k + 1 < route.size(); ++k) {
    if (!has_direct_edge(route[k], route[k + 1]))
      throw Error("apply_route: " + to_string(route[k]) + " -> " + to_string(route[k + 1]) + " is not a direct map");
    v = phi_direct(route[k], route[k + 1], v, b);
  }
  return v;
}

/// Maps `v` from space `from` to space `to`, composing direct maps as needed.
inline SpaceValue phi(Space from, Space to, const SpaceValue& v, const NiceBasis& b, double tol = kInputTol) {
  validate_space_value(from, v, b, tol);
  if (from == to) return v;
  return apply_route(shortest_route(from, to), v, b);
}

/// Every simple directed cycle start -> ... -> start over direct_edges(),
/// in lexicographic order of the visited spaces.
inline std::vector<std::vector<Space>> simple_cycles(Space start) {
  std::vector<std::vector<Space>> out;
  std::vector<Space> path{start};
  std::array<bool, 7> seen{};
  seen[static_cast<std::size_t>(start)] = true;
  auto dfs = [&](auto&& self, Space u) -> void {
    for (int w = 1; w <= 6; ++w) {
      const Space sw = static_cast<Space>(w);
      if (!has_direct_edge(u, sw)) continue;
      if (sw == start) {
        auto cyc = path;
        cyc.push_back(start);
        out.push_back(std::move(cyc));
        continue;
      }
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      path.push_back(sw);
      self(self, sw);
      path.pop_back();
      seen[static_cast<std::size_t>(w)] = false;
    }
  };
  dfs(dfs, start);
  return out;
}

}  // namespace lindblad
