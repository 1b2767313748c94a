#pragma once

// Hilbert / Birkhoff geometry of the bicone VPM(n).
//
// The distance is available three ways: the extreme generalized eigenvalues
// of the two hat components, the spread of the log of the 2n x 2n
// block-diagonal congruence, and the cross-ratio of the chord exit times.
// All generalized spectra go through the symmetric congruence
// b^{-1/2} a b^{-1/2}; the non-symmetric product b^{-1} a is never formed.

#include <cmath>
#include <limits>
#include <tuple>

#include "spdgeo/domain.hpp"

namespace spdgeo {

/// M_K(v, w) = inf{lambda > 0 : v <= lambda w}. A zero ratio has
/// log_value = -infinity.
template <typename Scalar>
struct BirkhoffRatio {
  Scalar value;
  Scalar log_value;

  static BirkhoffRatio from_value(Scalar v) {
    using std::log;
    return {v, v > Scalar(0) ? log(v) : -std::numeric_limits<Scalar>::infinity()};
  }
};

/// Chord exit times along +v and -v; +infinity when the ray never leaves.
template <typename Scalar>
struct ExitTimes {
  Scalar forward;
  Scalar backward;
};

namespace detail {

template <typename Scalar>
void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::Dimension, std::string(what) + ": dimension mismatch " + std::to_string(a) +
                                          " vs " + std::to_string(b));
  }
}

/// Extreme generalized eigenvalues of the two hat components of (x, y):
/// spectra of y^{-1} x and (I - y)^{-1} (I - x).
template <typename Scalar>
struct HatSpectra {
  Spectrum<Scalar> first;
  Spectrum<Scalar> second;

  Scalar max() const { return std::max(first.max(), second.max()); }
  Scalar min() const { return std::min(first.min(), second.min()); }
};

template <typename Scalar>
HatSpectra<Scalar> hat_spectra(const VpmMatrix<Scalar>& x, const VpmMatrix<Scalar>& y) {
  require_same_dim<Scalar>(x.dim(), y.dim(), "hilbert");
  return {generalized_eigs(x.sym(), y.spectrum()),
          generalized_eigs(x.complement_spd().sym(), y.complement_spd().spectrum())};
}

// M = max(lmax(y^-1 x), lmax((I-y)^-1 (I-x))) and m = 1 / max(lmax(x^-1 y), ...).
// Both are top eigenvalues, which keeps m relatively accurate when x and y
// approach different faces of the boundary.
template <typename Scalar>
std::pair<Scalar, Scalar> hat_extremes(const VpmMatrix<Scalar>& x, const VpmMatrix<Scalar>& y) {
  const Scalar big = hat_spectra(x, y).max();
  const Scalar reverse = hat_spectra(y, x).max();
  return {big, Scalar(1) / reverse};
}

template <typename Scalar>
Scalar log_ratio(Scalar big, Scalar small) {
  using std::log;
  return log(big) - log(small);
}

}  // namespace detail

/// Hilbert distance log(max(lmax(J2^-1 J1), lmax((I-J2)^-1 (I-J1))) /
/// min(lmin(J2^-1 J1), lmin((I-J2)^-1 (I-J1)))), with each lmin taken as
/// 1 / lmax of the reversed pair.
template <typename Scalar>
Scalar hilbert_distance(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2) {
  detail::require_same_dim<Scalar>(j1.dim(), j2.dim(), "hilbert_distance");
  using std::log;
  const Scalar forward = detail::hat_spectra(j1, j2).max();
  const Scalar backward = detail::hat_spectra(j2, j1).max();
  return std::max(Scalar(0), log(forward) + log(backward));
}

/// Same distance as the spread of log(diag(J2^-1/2 J1 J2^-1/2, (I-J2)^-1/2 (I-J1) (I-J2)^-1/2)).
template <typename Scalar>
Scalar hilbert_distance_spread(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2) {
  detail::require_same_dim<Scalar>(j1.dim(), j2.dim(), "hilbert_distance_spread");
  const Index n = j1.dim();
  const auto a = congruence(inv_sqrtm(j2.sym()), j1.sym());
  const auto b = congruence(inv_sqrtm(j2.complement_spd().sym()), j1.complement_spd().sym());
  Matrix<Scalar> block = Matrix<Scalar>::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a.matrix();
  block.bottomRightCorner(n, n) = b.matrix();
  return spread(logm(SymmetricMatrix<Scalar>(block)));
}

/// M_PD(v, w) = max(0, lmax(w^-1/2 v w^-1/2)).
template <typename Scalar>
BirkhoffRatio<Scalar> birkhoff_ratio_pd(const SymmetricMatrix<Scalar>& v, const SpdMatrix<Scalar>& w) {
  const auto spec = generalized_eigs(v, w.spectrum());
  return BirkhoffRatio<Scalar>::from_value(std::max(Scalar(0), spec.max()));
}

/// Birkhoff ratio of hat pairs on PD(n) x PD(n): the max of the component
/// ratios.
template <typename Scalar>
BirkhoffRatio<Scalar> birkhoff_ratio_hat(const VpmMatrix<Scalar>& x, const VpmMatrix<Scalar>& y) {
  detail::require_same_dim<Scalar>(x.dim(), y.dim(), "birkhoff_ratio_hat");
  const auto first = birkhoff_ratio_pd(x.sym(), y.spd());
  const auto second = birkhoff_ratio_pd(x.complement_spd().sym(), y.complement_spd());
  return BirkhoffRatio<Scalar>::from_value(std::max(first.value, second.value));
}

namespace detail {

// Reciprocal exit times: 1/t+ = M(-v^, x^), 1/t- = M(v^, x^) with v^ = (v, -v).
template <typename Scalar>
std::pair<Scalar, Scalar> inverse_exit_times(const VpmMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& v) {
  require_same_dim<Scalar>(x.dim(), v.dim(), "exit_times");
  const auto a = generalized_eigs(v, x.spectrum());
  const auto b = generalized_eigs(v, x.complement_spd().spectrum());
  const Scalar zero(0);
  const Scalar inv_forward = std::max({zero, -a.min(), b.max()});
  const Scalar inv_backward = std::max({zero, a.max(), -b.min()});
  return {inv_forward, inv_backward};
}

}  // namespace detail

/// Forward / backward exit times of the ray x + t v from the bicone.
template <typename Scalar>
ExitTimes<Scalar> exit_times(const VpmMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& v) {
  const auto [inv_f, inv_b] = detail::inverse_exit_times(x, v);
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  return {inv_f > Scalar(0) ? Scalar(1) / inv_f : inf, inv_b > Scalar(0) ? Scalar(1) / inv_b : inf};
}

/// Hilbert distance from the cross-ratio of the chord through j1 and j2.
template <typename Scalar>
Scalar hilbert_distance_oracle(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2) {
  using std::log1p;
  detail::require_same_dim<Scalar>(j1.dim(), j2.dim(), "hilbert_distance_oracle");
  const auto v = j2.sym() - j1.sym();
  if (frobenius(v) < Scalar(1e-13)) {
    throw Error(ErrorKind::DegenerateDirection, "hilbert_distance_oracle: endpoints coincide");
  }
  // log((t- + 1) t+ / (t- (t+ - 1))) written with reciprocals.
  const auto [inv_f, inv_b] = detail::inverse_exit_times(j1, v);
  return log1p(inv_b) - log1p(-inv_f);
}

/// Finsler norm of v at x: 1/t+ + 1/t-, written with the congruences
/// A = x^-1/2 v x^-1/2 and B = (I-x)^-1/2 v (I-x)^-1/2.
template <typename Scalar>
Scalar finsler_norm(const VpmMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& v) {
  detail::require_same_dim<Scalar>(x.dim(), v.dim(), "finsler_norm");
  const auto a = generalized_eigs(v, x.spectrum());
  const auto b = generalized_eigs(v, x.complement_spd().spectrum());
  const Scalar zero(0);
  return std::max(std::max(zero, -a.min()), std::max(zero, b.max())) +
         std::max(std::max(zero, a.max()), std::max(zero, -b.min()));
}

/// (1 - t) J1 + t J2 for t in [0, 1].
template <typename Scalar>
VpmMatrix<Scalar> hilbert_pregeodesic(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2, Scalar t) {
  detail::require_same_dim<Scalar>(j1.dim(), j2.dim(), "hilbert_pregeodesic");
  if (!(t >= Scalar(0) && t <= Scalar(1))) {
    throw Error(ErrorKind::Domain, "hilbert_pregeodesic: t = " + detail::fmt(t) + " outside [0,1]");
  }
  const Scalar u = Scalar(1) - t;
  return VpmMatrix<Scalar>::from_parts(u * j1.sym() + t * j2.sym(),
                                       u * j1.complement_spd().sym() + t * j2.complement_spd().sym());
}

namespace detail {

// Constant-speed chord parameter. With R = M/m = exp(length), the pregeodesic
// parameter reached after a fraction s of the length is
//   t = (1 - R^s) / (R^s (1/M - 1) - (1/m - 1)),
// i.e. the closed form for t(1 - s) anchored so s = 0 is the first endpoint.
template <typename Scalar>
Scalar chord_parameter(Scalar big_m, Scalar small_m, Scalar length, Scalar s) {
  using std::exp;
  using std::expm1;
  const Scalar r_s = exp(s * length);
  const Scalar num = -expm1(s * length);
  const Scalar den = r_s * (Scalar(1) / big_m - Scalar(1)) - (Scalar(1) / small_m - Scalar(1));
  const Scalar t = num / den;
  return std::clamp(t, Scalar(0), Scalar(1));
}

template <typename Scalar>
constexpr Scalar degenerate_length() {
  return Scalar(1e-12);
}

}  // namespace detail

/// Precomputed data for the constant-speed Hilbert geodesic between two
/// bicone points.
template <typename Scalar>
class GeodesicSpec {
 public:
  GeodesicSpec(VpmMatrix<Scalar> a, VpmMatrix<Scalar> b) : a_(std::move(a)), b_(std::move(b)) {
    std::tie(big_m_, small_m_) = detail::hat_extremes(a_, b_);
    length_ = std::max(Scalar(0), detail::log_ratio(big_m_, small_m_));
  }

  const VpmMatrix<Scalar>& endpoint_a() const { return a_; }
  const VpmMatrix<Scalar>& endpoint_b() const { return b_; }
  Scalar big_m() const { return big_m_; }
  Scalar small_m() const { return small_m_; }
  Scalar length() const { return length_; }
  bool degenerate() const { return length_ < detail::degenerate_length<Scalar>(); }

 private:
  VpmMatrix<Scalar> a_, b_;
  Scalar big_m_{1}, small_m_{1}, length_{0};
};

/// Point at arc-length fraction s of the Hilbert geodesic; gamma(0) = a,
/// gamma(1) = b. A degenerate spec returns a.
template <typename Scalar>
VpmMatrix<Scalar> hilbert_geodesic(const GeodesicSpec<Scalar>& spec, Scalar s) {
  if (!(s >= Scalar(0) && s <= Scalar(1))) {
    throw Error(ErrorKind::Domain, "hilbert_geodesic: s = " + detail::fmt(s) + " outside [0,1]");
  }
  if (spec.degenerate() || s == Scalar(0)) return spec.endpoint_a();
  if (s == Scalar(1)) return spec.endpoint_b();
  const Scalar t = detail::chord_parameter(spec.big_m(), spec.small_m(), spec.length(), s);
  return hilbert_pregeodesic(spec.endpoint_a(), spec.endpoint_b(), t);
}

template <typename Scalar>
VpmMatrix<Scalar> hilbert_geodesic(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2, Scalar s) {
  return hilbert_geodesic(GeodesicSpec<Scalar>(j1, j2), s);
}

namespace detail {

template <typename Scalar>
std::pair<Scalar, Scalar> simplex_ratio_extremes(const SimplexPoint<Scalar>& p, const SimplexPoint<Scalar>& q) {
  require_same_dim<Scalar>(p.dim(), q.dim(), "simplex");
  const Vector<Scalar> ratio = p.probs().cwiseQuotient(q.probs());
  return {ratio.maxCoeff(), ratio.minCoeff()};
}

}  // namespace detail

/// Hilbert simplex distance log(max_i p_i/q_i / min_i p_i/q_i).
template <typename Scalar>
Scalar simplex_distance(const SimplexPoint<Scalar>& p, const SimplexPoint<Scalar>& q) {
  const auto [big, small] = detail::simplex_ratio_extremes(p, q);
  return std::max(Scalar(0), detail::log_ratio(big, small));
}

/// Constant-speed Hilbert geodesic in the simplex; gamma(0) = p, gamma(1) = q.
template <typename Scalar>
SimplexPoint<Scalar> simplex_geodesic(const SimplexPoint<Scalar>& p, const SimplexPoint<Scalar>& q, Scalar s) {
  if (!(s >= Scalar(0) && s <= Scalar(1))) {
    throw Error(ErrorKind::Domain, "simplex_geodesic: s = " + detail::fmt(s) + " outside [0,1]");
  }
  const auto [big, small] = detail::simplex_ratio_extremes(p, q);
  const Scalar length = std::max(Scalar(0), detail::log_ratio(big, small));
  if (length < detail::degenerate_length<Scalar>() || s == Scalar(0)) return p;
  if (s == Scalar(1)) return q;
  const Scalar t = detail::chord_parameter(big, small, length, s);
  Vector<Scalar> point = (Scalar(1) - t) * p.probs() + t * q.probs();
  point /= point.sum();
  return SimplexPoint<Scalar>(std::move(point));
}

/// log((lmax(J2^-1 J1) + lmax((I-J2)^-1 (I-J1))) / (lmin(.) + lmin(.))),
/// never above the Hilbert distance.
template <typename Scalar>
Scalar hilbert_lower_bound(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2) {
  const auto hs = detail::hat_spectra(j1, j2);
  return detail::log_ratio(hs.first.max() + hs.second.max(), hs.first.min() + hs.second.min());
}

/// Hilbert distance between trace-normalised SPD matrices; scale invariant.
template <typename Scalar>
Scalar projective_distance(const SpdMatrix<Scalar>& p1, const SpdMatrix<Scalar>& p2) {
  detail::require_same_dim<Scalar>(p1.dim(), p2.dim(), "projective_distance");
  return hilbert_distance(trace_normalize(p1), trace_normalize(p2));
}

}  // namespace spdgeo
