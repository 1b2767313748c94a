#pragma once

#include <cmath>

#include <doctest.h>

#include "spdgeo/random.hpp"

namespace spdgeo::test {

using Sym = SymmetricMatrix<double>;
using Spd = SpdMatrix<double>;
using Vpm = VpmMatrix<double>;
using Simplex = SimplexPoint<double>;
using Mat = Matrix<double>;
using Vec = Vector<double>;

inline Rng rng_for(std::uint64_t test, std::uint64_t i) { return make_rng(20240611, test, i); }

inline Mat rotation(double theta) {
  Mat u(2, 2);
  u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return u;
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// Worked-example pair; d_H = 1.242398973577776.
inline Vpm worked_j1() {
  const double s = std::sqrt(3.0);
  Mat m(2, 2);
  m << 7.0 / 20, -3 * s / 20, -3 * s / 20, 13.0 / 20;
  return Vpm(m);
}

inline Vpm worked_j2() {
  const double s = std::sqrt(3.0);
  Mat m(2, 2);
  m << 11.0 / 20, -s / 20, -s / 20, 9.0 / 20;
  return Vpm(m);
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parse;
}

constexpr int dims[] = {1, 2, 3, 4, 8};

}  // namespace spdgeo::test
