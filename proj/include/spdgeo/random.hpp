#pragma once

// Seeded samplers for the test and verification suites.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "spdgeo/domain.hpp"

namespace spdgeo {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for trial `index` of check `stream` under `seed`.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(sub_seed(seed, stream, index));
}

/// Floor on the distance of near-boundary samples to 0 and 1.
constexpr double boundary_floor = 1e-6;

template <typename Scalar = double>
Matrix<Scalar> random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<Scalar> normal;
  Matrix<Scalar> g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

template <typename Scalar = double>
SymmetricMatrix<Scalar> random_symmetric(Index n, Rng& rng) {
  const Matrix<Scalar> g = random_gaussian<Scalar>(n, n, rng);
  return SymmetricMatrix<Scalar>((g + g.transpose()) / Scalar(2));
}

/// G^T G / n + 0.05 I with G standard Gaussian.
template <typename Scalar = double>
SpdMatrix<Scalar> random_spd(Index n, Rng& rng) {
  const Matrix<Scalar> g = random_gaussian<Scalar>(n, n, rng) / std::sqrt(Scalar(n));
  return SpdMatrix<Scalar>(g.transpose() * g + Scalar(0.05) * Matrix<Scalar>::Identity(n, n));
}

/// Haar-distributed orthogonal matrix.
template <typename Scalar = double>
Matrix<Scalar> random_orthogonal(Index n, Rng& rng) {
  const Eigen::HouseholderQR<Matrix<Scalar>> qr(random_gaussian<Scalar>(n, n, rng));
  Matrix<Scalar> q = qr.householderQ();
  const Matrix<Scalar> r = qr.matrixQR();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < Scalar(0)) q.col(j) = -q.col(j);
  return q;
}

/// U diag(exp(s)) W^T with s uniform in [-1, 1]; condition number <= e^2.
template <typename Scalar = double>
Matrix<Scalar> random_invertible(Index n, Rng& rng) {
  std::uniform_real_distribution<Scalar> unif(Scalar(-1), Scalar(1));
  Vector<Scalar> s(n);
  for (Index i = 0; i < n; ++i) s(i) = std::exp(unif(rng));
  return random_orthogonal<Scalar>(n, rng) * s.asDiagonal() * random_orthogonal<Scalar>(n, rng).transpose();
}

/// James image of random_spd. With near_boundary, the eigenvalue nearest to a
/// randomly chosen boundary (0 or 1) and a random subset of the others are
/// pushed towards it by a factor in [1e-6, 1e-1], never closer than
/// boundary_floor.
template <typename Scalar = double>
VpmMatrix<Scalar> random_vpm(Index n, Rng& rng, bool near_boundary = false) {
  const auto p = random_spd<Scalar>(n, rng);
  if (!near_boundary) return james_forward(p);

  std::uniform_real_distribution<Scalar> exponent(Scalar(1), Scalar(6));
  std::bernoulli_distribution coin(0.5);
  const bool toward_one = coin(rng);
  const auto& spec = p.spectrum();
  Vector<Scalar> value(n), comp(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar l = spec.eigenvalues(i);
    Scalar x = l / (Scalar(1) + l);
    Scalar c = Scalar(1) / (Scalar(1) + l);
    const Scalar factor = std::pow(Scalar(10), -exponent(rng));
    const bool extreme = i == (toward_one ? n - 1 : 0);
    const bool push = coin(rng) || extreme;
    if (push && toward_one) {
      c = std::max(Scalar(boundary_floor), c * factor);
      x = Scalar(1) - c;
    } else if (push) {
      x = std::max(Scalar(boundary_floor), x * factor);
      c = Scalar(1) - x;
    }
    value(i) = x;
    comp(i) = c;
  }
  return VpmMatrix<Scalar>::from_parts(reconstruct<Scalar>(*spec.basis, value), reconstruct<Scalar>(*spec.basis, comp));
}

/// Dirichlet(1, ..., 1) sample.
template <typename Scalar = double>
SimplexPoint<Scalar> random_simplex(Index n, Rng& rng) {
  std::exponential_distribution<Scalar> expo(Scalar(1));
  Vector<Scalar> p(n);
  for (Index i = 0; i < n; ++i) p(i) = expo(rng);
  p /= p.sum();
  return SimplexPoint<Scalar>(std::move(p));
}

}  // namespace spdgeo
