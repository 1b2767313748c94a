#pragma once

// Dense symmetric kernel: validated symmetric matrices, sorted spectra,
// spectral matrix functions and congruence-based generalized eigenvalues.
// Everything is templated on the scalar type; double is the tested default.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "spdgeo/errors.hpp"

namespace spdgeo {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Margin used by every definiteness / membership test.
template <typename Scalar>
constexpr Scalar eig_tol() {
  return Scalar(1e-10);
}

/// Relative asymmetry above which construction is refused instead of
/// symmetrized.
template <typename Scalar>
constexpr Scalar asymmetry_tol() {
  return Scalar(1e-8);
}

namespace detail {

template <typename Scalar>
std::string fmt(Scalar v) {
  std::ostringstream os;
  os.precision(17);
  os << static_cast<long double>(v);
  return os.str();
}

}  // namespace detail

/// Dense real symmetric n x n matrix. Inputs are symmetrized as (M + M^T)/2;
/// non-finite entries or gross asymmetry are rejected.
template <typename Scalar>
class SymmetricMatrix {
 public:
  using MatrixType = Matrix<Scalar>;

  SymmetricMatrix() = default;

  template <typename Derived>
  explicit SymmetricMatrix(const Eigen::MatrixBase<Derived>& m) : m_(m) {
    if (m_.rows() != m_.cols()) {
      throw Error(ErrorKind::Dimension, "matrix is " + std::to_string(m_.rows()) + "x" +
                                            std::to_string(m_.cols()) + ", expected square");
    }
    if (!m_.allFinite()) {
      throw Error(ErrorKind::NonFinite, "matrix contains non-finite entries");
    }
    const Scalar asym = (m_ - m_.transpose()).norm();
    const Scalar scale = m_.norm();
    if (asym > asymmetry_tol<Scalar>() * scale) {
      throw Error(ErrorKind::Domain, "matrix is not symmetric (||M - M^T||_F = " +
                                         detail::fmt(asym) + ")");
    }
    m_ = (m_ + m_.transpose().eval()) / Scalar(2);
  }

  static SymmetricMatrix zero(Index n) { return SymmetricMatrix(MatrixType::Zero(n, n)); }
  static SymmetricMatrix identity(Index n) {
    return SymmetricMatrix(MatrixType::Identity(n, n));
  }
  static SymmetricMatrix scaled_identity(Index n, Scalar c) {
    return SymmetricMatrix(MatrixType::Identity(n, n) * c);
  }
  template <typename Derived>
  static SymmetricMatrix diagonal(const Eigen::MatrixBase<Derived>& d) {
    return SymmetricMatrix(MatrixType(d.asDiagonal()));
  }

  Index dim() const { return m_.rows(); }
  const MatrixType& matrix() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }
  Scalar trace() const { return m_.trace(); }

  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return SymmetricMatrix(a.m_ + b.m_);
  }
  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return SymmetricMatrix(a.m_ - b.m_);
  }
  friend SymmetricMatrix operator-(const SymmetricMatrix& a) { return SymmetricMatrix(-a.m_); }
  friend SymmetricMatrix operator*(Scalar c, const SymmetricMatrix& a) {
    return SymmetricMatrix(c * a.m_);
  }
  friend SymmetricMatrix operator*(const SymmetricMatrix& a, Scalar c) { return c * a; }
  friend SymmetricMatrix operator/(const SymmetricMatrix& a, Scalar c) {
    return SymmetricMatrix(a.m_ / c);
  }
  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  MatrixType m_;
};

/// Ascending eigenvalues, optionally with an orthonormal eigenvector basis
/// (columns). Eigenvector signs are normalised so the largest-magnitude
/// component is positive.
template <typename Scalar>
struct Spectrum {
  Vector<Scalar> eigenvalues;
  std::optional<Matrix<Scalar>> basis;

  Index size() const { return eigenvalues.size(); }
  Scalar min() const { return eigenvalues(0); }
  Scalar max() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// Symmetric eigendecomposition.
template <typename Scalar>
Spectrum<Scalar> eigh(const SymmetricMatrix<Scalar>& m, bool with_basis = true) {
  if (!m.matrix().allFinite()) {
    throw Error(ErrorKind::NonFinite, "eigh: non-finite input");
  }
  Spectrum<Scalar> out;
  if (m.dim() == 0) {
    out.eigenvalues.resize(0);
    if (with_basis) out.basis = Matrix<Scalar>(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(
      m.matrix(), with_basis ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "eigh: symmetric eigensolver did not converge");
  }
  // Eigen already returns ascending eigenvalues.
  out.eigenvalues = solver.eigenvalues();
  if (with_basis) {
    Matrix<Scalar> u = solver.eigenvectors();
    for (Index j = 0; j < u.cols(); ++j) {
      Index arg = 0;
      u.col(j).cwiseAbs().maxCoeff(&arg);
      if (u(arg, j) < Scalar(0)) u.col(j) = -u.col(j);
    }
    out.basis = std::move(u);
  }
  return out;
}

/// U diag(values) U^T, re-symmetrized.
template <typename Scalar>
SymmetricMatrix<Scalar> reconstruct(const Matrix<Scalar>& basis, const Vector<Scalar>& values) {
  return SymmetricMatrix<Scalar>(basis * values.asDiagonal() * basis.transpose());
}

/// Applies a scalar function to the spectrum of an already decomposed matrix.
template <typename Scalar, typename F>
SymmetricMatrix<Scalar> apply_spectral(const Spectrum<Scalar>& spec, F&& f) {
  Vector<Scalar> values(spec.size());
  for (Index i = 0; i < spec.size(); ++i) values(i) = f(spec.eigenvalues(i));
  return reconstruct<Scalar>(*spec.basis, values);
}

enum class MatFn { Sqrt, InvSqrt, Log, Exp, Power, Inverse };

inline const char* to_string(MatFn f) {
  switch (f) {
    case MatFn::Sqrt: return "sqrt";
    case MatFn::InvSqrt: return "inv_sqrt";
    case MatFn::Log: return "log";
    case MatFn::Exp: return "exp";
    case MatFn::Power: return "power";
    case MatFn::Inverse: return "inverse";
  }
  return "?";
}

namespace detail {

template <typename Scalar>
Scalar eval_scalar_fn(MatFn f, Scalar x, Scalar exponent) {
  using std::exp;
  using std::log;
  using std::pow;
  using std::sqrt;
  if (f != MatFn::Exp && !(x > Scalar(0))) {
    throw Error(ErrorKind::Domain, std::string("mat_fn: eigenvalue ") + fmt(x) +
                                       " outside the domain of " + to_string(f) +
                                       " (requires > 0)");
  }
  switch (f) {
    case MatFn::Sqrt: return sqrt(x);
    case MatFn::InvSqrt: return Scalar(1) / sqrt(x);
    case MatFn::Log: return log(x);
    case MatFn::Exp: return exp(x);
    case MatFn::Power: return pow(x, exponent);
    case MatFn::Inverse: return Scalar(1) / x;
  }
  return x;
}

}  // namespace detail

/// Spectral matrix function U diag(f(lambda_i)) U^T, reusing a decomposition.
template <typename Scalar>
SymmetricMatrix<Scalar> mat_fn(const Spectrum<Scalar>& spec, MatFn f, Scalar exponent = Scalar(1)) {
  return apply_spectral(spec, [&](Scalar x) { return detail::eval_scalar_fn(f, x, exponent); });
}

template <typename Scalar>
SymmetricMatrix<Scalar> mat_fn(const SymmetricMatrix<Scalar>& m, MatFn f,
                               Scalar exponent = Scalar(1)) {
  return mat_fn(eigh(m), f, exponent);
}

template <typename Scalar>
SymmetricMatrix<Scalar> sqrtm(const SymmetricMatrix<Scalar>& m) { return mat_fn(m, MatFn::Sqrt); }
template <typename Scalar>
SymmetricMatrix<Scalar> inv_sqrtm(const SymmetricMatrix<Scalar>& m) { return mat_fn(m, MatFn::InvSqrt); }
template <typename Scalar>
SymmetricMatrix<Scalar> logm(const SymmetricMatrix<Scalar>& m) { return mat_fn(m, MatFn::Log); }
template <typename Scalar>
SymmetricMatrix<Scalar> expm(const SymmetricMatrix<Scalar>& m) { return mat_fn(m, MatFn::Exp); }
template <typename Scalar>
SymmetricMatrix<Scalar> powm(const SymmetricMatrix<Scalar>& m, Scalar t) { return mat_fn(m, MatFn::Power, t); }
template <typename Scalar>
SymmetricMatrix<Scalar> inverse(const SymmetricMatrix<Scalar>& m) { return mat_fn(m, MatFn::Inverse); }

/// lambda_max - lambda_min.
template <typename Scalar>
Scalar spread(const SymmetricMatrix<Scalar>& m) {
  if (m.dim() == 0) return Scalar(0);
  const auto spec = eigh(m, false);
  return spec.max() - spec.min();
}

template <typename Scalar>
Scalar frobenius(const SymmetricMatrix<Scalar>& m) {
  return m.matrix().norm();
}

template <typename Scalar>
Scalar operator_norm(const SymmetricMatrix<Scalar>& m) {
  if (m.dim() == 0) return Scalar(0);
  const auto spec = eigh(m, false);
  return std::max(std::abs(spec.min()), std::abs(spec.max()));
}

/// B A B for symmetric B, as a symmetric matrix.
template <typename Scalar>
SymmetricMatrix<Scalar> congruence(const SymmetricMatrix<Scalar>& b, const SymmetricMatrix<Scalar>& a) {
  return SymmetricMatrix<Scalar>(b.matrix() * a.matrix() * b.matrix());
}

/// Spectrum of b^{-1} a, computed as eigh(b^{-1/2} a b^{-1/2}) given the
/// decomposition of b. Basis is not returned.
template <typename Scalar>
Spectrum<Scalar> generalized_eigs(const SymmetricMatrix<Scalar>& a, const Spectrum<Scalar>& b_spec) {
  if (a.dim() != b_spec.size()) {
    throw Error(ErrorKind::Dimension, "generalized_eigs: dimension mismatch " +
                                          std::to_string(a.dim()) + " vs " +
                                          std::to_string(b_spec.size()));
  }
  if (b_spec.size() > 0 && !(b_spec.min() > Scalar(0))) {
    throw Error(ErrorKind::Domain, "generalized_eigs: b has eigenvalue " +
                                       detail::fmt(b_spec.min()) + ", not positive definite");
  }
  const auto b_isqrt = mat_fn(b_spec, MatFn::InvSqrt);
  return eigh(congruence(b_isqrt, a), false);
}

template <typename Scalar>
Spectrum<Scalar> generalized_eigs(const SymmetricMatrix<Scalar>& a, const SymmetricMatrix<Scalar>& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::Dimension, "generalized_eigs: dimension mismatch " +
                                          std::to_string(a.dim()) + " vs " +
                                          std::to_string(b.dim()));
  }
  return generalized_eigs(a, eigh(b));
}

/// Frobenius inner product tr(A B) of symmetric matrices.
template <typename Scalar>
Scalar trace_inner(const SymmetricMatrix<Scalar>& a, const SymmetricMatrix<Scalar>& b) {
  return a.matrix().cwiseProduct(b.matrix()).sum();
}

}  // namespace spdgeo
