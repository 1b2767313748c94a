#pragma once

// The bilogdet barrier Psi(X) = -log det X - log det(I - X) on VPM(n): the
// potential, its gradient, the Hessian metric, Bregman divergences, a finite
// difference self-concordance verifier and discretised path lengths.

#include <cmath>
#include <vector>

#include "spdgeo/hilbert.hpp"

namespace spdgeo {

template <typename Scalar>
struct BarrierEval {
  Scalar potential;
  SymmetricMatrix<Scalar> gradient;
  VpmMatrix<Scalar> base;
};

namespace detail {

template <typename Scalar>
Scalar neg_log_sum(const Spectrum<Scalar>& spec) {
  using std::log;
  Scalar acc(0);
  for (Index i = 0; i < spec.size(); ++i) acc -= log(spec.eigenvalues(i));
  return acc;
}

// sum_ij (U^T V U)_ij (U^T W U)_ij / (l_i l_j) = tr(X^-1 V X^-1 W).
template <typename Scalar>
Scalar part_metric(const Spectrum<Scalar>& spec, const SymmetricMatrix<Scalar>& v,
                   const SymmetricMatrix<Scalar>& w) {
  const Matrix<Scalar>& u = *spec.basis;
  const Matrix<Scalar> vp = u.transpose() * v.matrix() * u;
  const Matrix<Scalar> wp = u.transpose() * w.matrix() * u;
  const Vector<Scalar> inv = spec.eigenvalues.cwiseInverse();
  return (inv.asDiagonal() * vp.cwiseProduct(wp) * inv.asDiagonal()).sum();
}

// lambda - log(lambda) - 1, with a series near 1.
template <typename Scalar>
Scalar logdet_generator(Scalar lambda) {
  using std::abs;
  using std::log1p;
  const Scalar u = lambda - Scalar(1);
  if (abs(u) < Scalar(1e-4)) {
    const Scalar u2 = u * u;
    return u2 * (Scalar(1) / 2 - u / 3 + u2 / 4 - u2 * u / 5);
  }
  return u - log1p(u);
}

}  // namespace detail

/// Psi(X) = -sum log l_i(X) - sum log l_i(I - X).
template <typename Scalar>
Scalar bilogdet(const VpmMatrix<Scalar>& x) {
  return detail::neg_log_sum(x.spectrum()) + detail::neg_log_sum(x.complement_spd().spectrum());
}

/// grad Psi(X) = -X^-1 + (I - X)^-1.
template <typename Scalar>
SymmetricMatrix<Scalar> bilogdet_gradient(const VpmMatrix<Scalar>& x) {
  return mat_fn(x.complement_spd().spectrum(), MatFn::Inverse) - mat_fn(x.spectrum(), MatFn::Inverse);
}

template <typename Scalar>
BarrierEval<Scalar> barrier_eval(const VpmMatrix<Scalar>& x) {
  return {bilogdet(x), bilogdet_gradient(x), x};
}

/// g_X(V, W) = tr(X^-1 V X^-1 W) + tr((I-X)^-1 V (I-X)^-1 W).
template <typename Scalar>
Scalar barrier_metric(const VpmMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& v, const SymmetricMatrix<Scalar>& w) {
  if (v.dim() != x.dim() || w.dim() != x.dim()) {
    throw Error(ErrorKind::Dimension, "barrier_metric: dimension mismatch");
  }
  return detail::part_metric(x.spectrum(), v, w) + detail::part_metric(x.complement_spd().spectrum(), v, w);
}

template <typename Scalar>
Scalar barrier_norm(const VpmMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& v) {
  using std::sqrt;
  return sqrt(std::max(Scalar(0), barrier_metric(x, v, v)));
}

/// B(V1 : V2) = tr(V1 V2^-1) - log det(V1 V2^-1) - n, as a spectral sum.
template <typename Scalar>
Scalar bregman_logdet(const SpdMatrix<Scalar>& v1, const SpdMatrix<Scalar>& v2) {
  if (v1.dim() != v2.dim()) throw Error(ErrorKind::Dimension, "bregman_logdet: dimension mismatch");
  const auto spec = generalized_eigs(v1.sym(), v2.spectrum());
  Scalar acc(0);
  for (Index i = 0; i < spec.size(); ++i) acc += detail::logdet_generator(spec.eigenvalues(i));
  return acc;
}

/// B(I - J1 : I - J2).
template <typename Scalar>
Scalar bregman_complement(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2) {
  return bregman_logdet(j1.complement_spd(), j2.complement_spd());
}

template <typename Scalar>
Scalar bregman_bilogdet(const VpmMatrix<Scalar>& j1, const VpmMatrix<Scalar>& j2) {
  return bregman_logdet(j1.spd(), j2.spd()) + bregman_complement(j1, j2);
}

template <typename Scalar>
struct SelfConcordanceReport {
  Scalar max_ratio{0};
  Scalar worst_t{0};
  int samples{0};
  bool pass{true};
};

template <typename Scalar>
constexpr Scalar self_concordance_slack() {
  return Scalar(1e-3);
}

namespace detail {

// Psi(y + h u) - Psi(y) = -sum log1p(h a_i) - sum log1p(-h b_i), with a, b the
// eigenvalues of y^-1/2 u y^-1/2 and (I-y)^-1/2 u (I-y)^-1/2.
template <typename Scalar>
struct LineIncrement {
  Vector<Scalar> a;
  Vector<Scalar> b;

  Scalar operator()(Scalar h) const {
    using std::log1p;
    Scalar acc(0);
    for (Index i = 0; i < a.size(); ++i) acc -= log1p(h * a(i));
    for (Index i = 0; i < b.size(); ++i) acc -= log1p(-h * b(i));
    return acc;
  }
};

template <typename Scalar>
std::pair<Scalar, Scalar> fd_second_third(const LineIncrement<Scalar>& g, Scalar h) {
  const Scalar g1 = g(h), gm1 = g(-h), g2 = g(2 * h), gm2 = g(-2 * h);
  const Scalar second = (g1 + gm1) / (h * h);
  const Scalar third = (g2 - Scalar(2) * g1 + Scalar(2) * gm1 - gm2) / (Scalar(2) * h * h * h);
  return {second, third};
}

}  // namespace detail

/// Samples f(t) = Psi(x + t v) at interior points of the chord and reports
/// the largest |f'''| / (2 f''^{3/2}), both derivatives by central
/// differences (h = 1e-3 along the unit-local-norm direction, one Richardson
/// step).
template <typename Scalar>
SelfConcordanceReport<Scalar> self_concordance_check(const VpmMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& v,
                                                     int samples) {
  using std::abs;
  using std::pow;
  if (v.dim() != x.dim()) throw Error(ErrorKind::Dimension, "self_concordance_check: dimension mismatch");
  if (frobenius(v) == Scalar(0)) {
    throw Error(ErrorKind::DegenerateDirection, "self_concordance_check: direction v is zero");
  }
  if (samples < 1) throw Error(ErrorKind::Domain, "self_concordance_check: samples must be >= 1");

  const auto exits = exit_times(x, v);
  const Scalar lo = -exits.backward;
  const Scalar hi = exits.forward;
  const Scalar h(1e-3);

  SelfConcordanceReport<Scalar> report;
  report.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const Scalar t = samples == 1 ? Scalar(0) : lo + (hi - lo) * Scalar(k + 1) / Scalar(samples + 1);
    const auto y = VpmMatrix<Scalar>::from_parts(x.sym() + t * v, x.complement_spd().sym() - t * v);
    const Scalar scale = barrier_norm(y, v);
    const SymmetricMatrix<Scalar> u = v / scale;
    detail::LineIncrement<Scalar> g{generalized_eigs(u, y.spectrum()).eigenvalues,
                                    generalized_eigs(u, y.complement_spd().spectrum()).eigenvalues};
    const auto [s1, t1] = detail::fd_second_third(g, h);
    const auto [s2, t2] = detail::fd_second_third(g, h / 2);
    const Scalar second = (Scalar(4) * s2 - s1) / 3;
    const Scalar third = (Scalar(4) * t2 - t1) / 3;
    const Scalar ratio = abs(third) / (Scalar(2) * pow(second, Scalar(1.5)));
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_t = t;
    }
  }
  report.pass = report.max_ratio <= Scalar(1) + self_concordance_slack<Scalar>();
  return report;
}

/// Midpoint-rule Psi-length: sum_k ||p_{k+1} - p_k|| at (p_k + p_{k+1}) / 2.
template <typename Scalar>
Scalar barrier_path_length(const std::vector<VpmMatrix<Scalar>>& path) {
  if (path.size() < 2) throw Error(ErrorKind::Domain, "barrier_path_length: path needs at least 2 points");
  Scalar total(0);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto& p = path[k];
    const auto& q = path[k + 1];
    if (p.dim() != q.dim()) throw Error(ErrorKind::Dimension, "barrier_path_length: dimension mismatch");
    const auto mid = VpmMatrix<Scalar>::from_parts((p.sym() + q.sym()) / Scalar(2),
                                                   (p.complement_spd().sym() + q.complement_spd().sym()) / Scalar(2));
    total += barrier_norm(mid, q.sym() - p.sym());
  }
  return total;
}

}  // namespace spdgeo
