#pragma once

// Affine-invariant Riemannian metric on PD(n) and its two bicone variants:
// the restriction to VPM(n) and the pullback through the inverse James map.

#include <cmath>

#include <Eigen/Cholesky>

#include "spdgeo/domain.hpp"

namespace spdgeo {

template <typename Scalar>
constexpr Scalar airm_condition_limit() {
  return Scalar(1e12);
}

namespace detail {

template <typename Scalar>
void require_conditioned(const SpdMatrix<Scalar>& x, const char* what) {
  const Scalar kappa = x.condition_number();
  if (!(kappa <= airm_condition_limit<Scalar>())) {
    throw Error(ErrorKind::IllConditioned,
                std::string(what) + ": condition number " + fmt(kappa) + " exceeds " +
                    fmt(airm_condition_limit<Scalar>()));
  }
}

}  // namespace detail

/// sqrt(sum_i log^2 lambda_i(X2^-1 X1)).
template <typename Scalar>
Scalar airm_distance(const SpdMatrix<Scalar>& x1, const SpdMatrix<Scalar>& x2) {
  using std::log;
  using std::sqrt;
  if (x1.dim() != x2.dim()) throw Error(ErrorKind::Dimension, "airm_distance: dimension mismatch");
  detail::require_conditioned(x1, "airm_distance");
  detail::require_conditioned(x2, "airm_distance");
  const auto spec = generalized_eigs(x1.sym(), x2.spectrum());
  Scalar acc(0);
  for (Index i = 0; i < spec.size(); ++i) {
    const Scalar l = log(spec.eigenvalues(i));
    acc += l * l;
  }
  return sqrt(acc);
}

template <typename Scalar>
bool is_extrapolation(Scalar t) {
  return t < Scalar(0) || t > Scalar(1);
}

/// X1^1/2 (X1^-1/2 X2 X1^-1/2)^t X1^1/2. Values of t outside [0, 1] continue
/// the same geodesic (see is_extrapolation).
template <typename Scalar>
SpdMatrix<Scalar> airm_geodesic(const SpdMatrix<Scalar>& x1, const SpdMatrix<Scalar>& x2, Scalar t) {
  if (x1.dim() != x2.dim()) throw Error(ErrorKind::Dimension, "airm_geodesic: dimension mismatch");
  if (!std::isfinite(t)) throw Error(ErrorKind::NonFinite, "airm_geodesic: t is not finite");
  if (t == Scalar(0)) return x1;
  if (t == Scalar(1)) return x2;
  const auto half = mat_fn(x1.spectrum(), MatFn::Sqrt);
  const auto inv_half = mat_fn(x1.spectrum(), MatFn::InvSqrt);
  const auto inner = powm(congruence(inv_half, x2.sym()), t);
  return SpdMatrix<Scalar>(congruence(half, inner));
}

/// tr(X^-1 V X^-1 W), evaluated with a Cholesky solve.
template <typename Scalar>
Scalar airm_metric(const SpdMatrix<Scalar>& x, const SymmetricMatrix<Scalar>& v, const SymmetricMatrix<Scalar>& w) {
  if (v.dim() != x.dim() || w.dim() != x.dim()) {
    throw Error(ErrorKind::Dimension, "airm_metric: dimension mismatch");
  }
  const Eigen::LLT<Matrix<Scalar>> llt(x.matrix());
  const Matrix<Scalar> a = llt.solve(v.matrix());
  const Matrix<Scalar> b = llt.solve(w.matrix());
  return (a.array() * b.transpose().array()).sum();
}

/// AIRM distance of two bicone points viewed as SPD matrices.
template <typename Scalar>
Scalar airm_restricted(const VpmMatrix<Scalar>& x1, const VpmMatrix<Scalar>& x2) {
  return airm_distance(x1.spd(), x2.spd());
}

/// d_AIRM(X (I-X)^-1, Y (I-Y)^-1).
template <typename Scalar>
Scalar airm_pushed(const VpmMatrix<Scalar>& x1, const VpmMatrix<Scalar>& x2) {
  if (x1.dim() != x2.dim()) throw Error(ErrorKind::Dimension, "airm_pushed: dimension mismatch");
  return airm_distance(james_inverse(x1), james_inverse(x2));
}

}  // namespace spdgeo
