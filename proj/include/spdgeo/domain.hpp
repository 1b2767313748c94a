#pragma once

// The SPD cone PD(n), the open bicone VPM(n) = {0 < X < I} and the maps
// between them (James map, complement, hat embedding, simplex embedding,
// trace normalisation, scaled James map, 2x2 bicone chart).

#include <cmath>
#include <string>
#include <utility>

#include "spdgeo/linalg.hpp"

namespace spdgeo {

/// Symmetric matrix with lambda_min > eig_tol. Caches its decomposition.
template <typename Scalar>
class SpdMatrix {
 public:
  SpdMatrix() = default;

  explicit SpdMatrix(SymmetricMatrix<Scalar> m) : m_(std::move(m)), spec_(eigh(m_)) { validate(); }

  template <typename Derived>
  explicit SpdMatrix(const Eigen::MatrixBase<Derived>& m) : SpdMatrix(SymmetricMatrix<Scalar>(m)) {}

  template <typename Derived>
  static SpdMatrix diagonal(const Eigen::MatrixBase<Derived>& d) {
    return SpdMatrix(SymmetricMatrix<Scalar>::diagonal(d));
  }
  static SpdMatrix scaled_identity(Index n, Scalar c) {
    return SpdMatrix(SymmetricMatrix<Scalar>::scaled_identity(n, c));
  }

  Index dim() const { return m_.dim(); }
  const SymmetricMatrix<Scalar>& sym() const { return m_; }
  const Matrix<Scalar>& matrix() const { return m_.matrix(); }
  const Spectrum<Scalar>& spectrum() const { return spec_; }
  Scalar condition_number() const { return spec_.max() / spec_.min(); }

 private:
  template <typename>
  friend class VpmMatrix;

  // Trusted: spectrum already computed and checked by the caller.
  SpdMatrix(SymmetricMatrix<Scalar> m, Spectrum<Scalar> spec) : m_(std::move(m)), spec_(std::move(spec)) {}

  void validate() const {
    if (dim() == 0) throw Error(ErrorKind::Dimension, "SPD matrix must have n >= 1");
    if (!(spec_.min() > eig_tol<Scalar>())) {
      throw Error(ErrorKind::Domain, "eigenvalue " + detail::fmt(spec_.min()) +
                                         " not positive (SPD requires lambda_min > eig_tol)");
    }
  }

  SymmetricMatrix<Scalar> m_;
  Spectrum<Scalar> spec_;
};

/// Element of the open bicone: spectrum inside (eig_tol, 1 - eig_tol).
/// Stores both X and I - X as SPD matrices so the complement is an exact
/// involution and near-1 eigenvalues keep their relative accuracy.
template <typename Scalar>
class VpmMatrix {
 public:
  VpmMatrix() = default;

  explicit VpmMatrix(const SymmetricMatrix<Scalar>& x)
      : VpmMatrix(x, SymmetricMatrix<Scalar>::identity(x.dim()) - x, false) {}

  template <typename Derived>
  explicit VpmMatrix(const Eigen::MatrixBase<Derived>& m) : VpmMatrix(SymmetricMatrix<Scalar>(m)) {}

  /// Builds from X and a separately computed I - X (checked to sum to I).
  static VpmMatrix from_parts(const SymmetricMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& complement) {
    return VpmMatrix(x, complement, true);
  }

  template <typename Derived>
  static VpmMatrix diagonal(const Eigen::MatrixBase<Derived>& d) {
    return VpmMatrix(SymmetricMatrix<Scalar>::diagonal(d));
  }
  static VpmMatrix scaled_identity(Index n, Scalar c) {
    return VpmMatrix(SymmetricMatrix<Scalar>::scaled_identity(n, c));
  }

  Index dim() const { return value_.dim(); }
  const SymmetricMatrix<Scalar>& sym() const { return value_.sym(); }
  const Matrix<Scalar>& matrix() const { return value_.matrix(); }
  /// X as an element of the cone.
  const SpdMatrix<Scalar>& spd() const { return value_; }
  /// I - X as an element of the cone.
  const SpdMatrix<Scalar>& complement_spd() const { return complement_; }
  const Spectrum<Scalar>& spectrum() const { return value_.spectrum(); }

  VpmMatrix complemented() const {
    VpmMatrix out;
    out.value_ = complement_;
    out.complement_ = value_;
    return out;
  }

 private:
  VpmMatrix(const SymmetricMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& c, bool check_sum) {
    if (x.dim() != c.dim()) throw Error(ErrorKind::Dimension, "VPM parts differ in dimension");
    if (check_sum) {
      const Scalar defect =
          (x.matrix() + c.matrix() - Matrix<Scalar>::Identity(x.dim(), x.dim())).cwiseAbs().maxCoeff();
      if (defect > Scalar(1e-12)) {
        throw Error(ErrorKind::Domain, "VPM parts do not sum to I (defect " + detail::fmt(defect) + ")");
      }
    }
    value_ = make_part(x, false);
    complement_ = make_part(c, true);
  }

  static SpdMatrix<Scalar> make_part(const SymmetricMatrix<Scalar>& m, bool is_complement) {
    if (m.dim() == 0) throw Error(ErrorKind::Dimension, "VPM matrix must have n >= 1");
    auto spec = eigh(m);
    const Scalar lo = spec.min();
    if (!(lo > eig_tol<Scalar>())) {
      const Scalar offending = is_complement ? Scalar(1) - lo : lo;
      throw Error(ErrorKind::Domain, "eigenvalue " + detail::fmt(offending) + " outside (0,1)");
    }
    return SpdMatrix<Scalar>(m, std::move(spec));
  }

  SpdMatrix<Scalar> value_;
  SpdMatrix<Scalar> complement_;
};

/// (X, I - X) in PD(n) x PD(n).
template <typename Scalar>
struct HatPair {
  SpdMatrix<Scalar> first;
  SpdMatrix<Scalar> second;
};

/// Point of the open probability simplex.
template <typename Scalar>
class SimplexPoint {
 public:
  SimplexPoint() = default;

  explicit SimplexPoint(Vector<Scalar> p) : p_(std::move(p)) {
    if (p_.size() == 0) throw Error(ErrorKind::Dimension, "simplex point must have n >= 1");
    if (!p_.allFinite()) throw Error(ErrorKind::NonFinite, "simplex point has non-finite entries");
    for (Index i = 0; i < p_.size(); ++i) {
      if (!(p_(i) > eig_tol<Scalar>() && p_(i) < Scalar(1) - eig_tol<Scalar>())) {
        throw Error(ErrorKind::Domain,
                    "simplex coordinate " + detail::fmt(p_(i)) + " outside (0,1)");
      }
    }
    const Scalar sum = p_.sum();
    if (std::abs(sum - Scalar(1)) > Scalar(1e-12)) {
      throw Error(ErrorKind::Domain, "simplex coordinates sum to " + detail::fmt(sum) + ", not 1");
    }
  }

  Index dim() const { return p_.size(); }
  const Vector<Scalar>& probs() const { return p_; }
  Scalar operator[](Index i) const { return p_(i); }

 private:
  Vector<Scalar> p_;
};

/// Cylindrical chart of VPM(2) as a Lorentz bicone.
template <typename Scalar>
struct BiconeCoords {
  Scalar r;
  Scalar theta;
  Scalar z;

  Eigen::Matrix<Scalar, 3, 1> cartesian() const {
    using std::cos;
    using std::sin;
    return {r * cos(theta), r * sin(theta), z};
  }
};

// ---------------------------------------------------------------------------
// Maps

/// iota(P) = P (I + P)^{-1}, evaluated on P's spectrum. The complement
/// (I + P)^{-1} is produced from the same decomposition.
template <typename Scalar>
VpmMatrix<Scalar> james_forward(const SpdMatrix<Scalar>& p) {
  const auto& spec = p.spectrum();
  auto x = apply_spectral(spec, [](Scalar l) { return l / (Scalar(1) + l); });
  auto c = apply_spectral(spec, [](Scalar l) { return Scalar(1) / (Scalar(1) + l); });
  return VpmMatrix<Scalar>::from_parts(x, c);
}

/// iota^{-1}(X) = X (I - X)^{-1} = X^{1/2} (I - X)^{-1} X^{1/2}.
template <typename Scalar>
SpdMatrix<Scalar> james_inverse(const VpmMatrix<Scalar>& x) {
  const auto x_half = mat_fn(x.spectrum(), MatFn::Sqrt);
  const auto c_inv = mat_fn(x.complement_spd().spectrum(), MatFn::Inverse);
  return SpdMatrix<Scalar>(congruence(x_half, c_inv));
}

/// d iota_P(V) = (I + P)^{-1} V (I + P)^{-1}.
template <typename Scalar>
SymmetricMatrix<Scalar> james_differential(const SpdMatrix<Scalar>& p, const SymmetricMatrix<Scalar>& v) {
  if (v.dim() != p.dim()) throw Error(ErrorKind::Dimension, "james_differential: dimension mismatch");
  const auto a = apply_spectral(p.spectrum(), [](Scalar l) { return Scalar(1) / (Scalar(1) + l); });
  return congruence(a, v);
}

/// X -> I - X.
template <typename Scalar>
VpmMatrix<Scalar> complement(const VpmMatrix<Scalar>& x) {
  return x.complemented();
}

template <typename Scalar>
HatPair<Scalar> hat(const VpmMatrix<Scalar>& x) {
  return {x.spd(), x.complement_spd()};
}

/// p -> diag(p), an element of the open spectraplex.
template <typename Scalar>
VpmMatrix<Scalar> embed_simplex(const SimplexPoint<Scalar>& p) {
  if (p.dim() < 2) throw Error(ErrorKind::Dimension, "embed_simplex requires n >= 2");
  Vector<Scalar> c = Vector<Scalar>::Ones(p.dim()) - p.probs();
  return VpmMatrix<Scalar>::from_parts(SymmetricMatrix<Scalar>::diagonal(p.probs()),
                                       SymmetricMatrix<Scalar>::diagonal(c));
}

/// P / tr(P); lands in VPM(n) for n >= 2.
template <typename Scalar>
VpmMatrix<Scalar> trace_normalize(const SpdMatrix<Scalar>& p) {
  if (p.dim() < 2) {
    throw Error(ErrorKind::Dimension, "trace_normalize requires n >= 2 (n = 1 maps to the boundary point 1)");
  }
  return VpmMatrix<Scalar>(p.sym() / p.sym().trace());
}

/// V_lambda(P) = lambda P (I + P)^{-1}; spectrum inside (0, lambda).
template <typename Scalar>
SymmetricMatrix<Scalar> scaled_james(const SpdMatrix<Scalar>& p, Scalar lambda) {
  if (!(lambda > Scalar(0))) {
    throw Error(ErrorKind::Domain, "scaled_james: lambda = " + detail::fmt(lambda) + " must be > 0");
  }
  return apply_spectral(p.spectrum(), [lambda](Scalar l) { return lambda * l / (Scalar(1) + l); });
}

/// Cylindrical bicone chart of a 2x2 VPM matrix [[a, c], [c, b]].
/// r = |l1 - l2| / det(I + J), theta = atan2(2c, a - b), z = (det J - 1) / det(I + J).
template <typename Scalar>
BiconeCoords<Scalar> bicone_coords(const VpmMatrix<Scalar>& j) {
  using std::atan2;
  if (j.dim() != 2) {
    throw Error(ErrorKind::Dimension, "bicone_coords requires a 2x2 matrix, got n = " + std::to_string(j.dim()));
  }
  const Scalar a = j.matrix()(0, 0);
  const Scalar b = j.matrix()(1, 1);
  const Scalar c = j.matrix()(0, 1);
  const Scalar l1 = j.spectrum().min();
  const Scalar l2 = j.spectrum().max();
  const Scalar denom = Scalar(1) + l1 + l2 + l1 * l2;
  BiconeCoords<Scalar> out;
  out.r = (l2 - l1) / denom;
  out.z = (l1 * l2 - Scalar(1)) / denom;
  out.theta = out.r < Scalar(1e-12) ? Scalar(0) : atan2(Scalar(2) * c, a - b);
  return out;
}

}  // namespace spdgeo
