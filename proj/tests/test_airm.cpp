#include <Eigen/Cholesky>

#include "spdgeo/airm.hpp"
#include "support.hpp"

using namespace spdgeo;
using namespace spdgeo::test;

namespace {

double logdet(const Mat& m) { return 2 * Eigen::LLT<Mat>(m).matrixL().toDenseMatrix().diagonal().array().log().sum(); }

Spd congruent(const Mat& a, const Spd& x) { return Spd(Sym(a * x.matrix() * a.transpose())); }

}  // namespace

TEST_CASE("AIRM distance on fixed inputs") {
  for (int n : dims) {
    for (double eps : {1e-3, 0.5}) {
      for (double c : {2.0, 10.0}) {
        const double d = airm_distance(Spd::scaled_identity(n, eps), Spd::scaled_identity(n, eps * c));
        CHECK(d == doctest::Approx(std::sqrt(double(n)) * std::log(c)).epsilon(1e-13));
      }
    }
  }
  const double d = airm_distance(Spd::diagonal(vec({1.0, 2.0, 5.0})), Spd::diagonal(vec({3.0, 2.0, 0.5})));
  CHECK(d == doctest::Approx(std::hypot(std::log(3.0), std::log(10.0))).epsilon(1e-14));
  CHECK(airm_distance(Spd(Sym::identity(4)), Spd(Sym::identity(4))) == 0.0);
}

TEST_CASE("AIRM invariances") {
  for (int i = 0; i < 200; ++i) {
    Rng rng = rng_for(30, i);
    const int n = dims[i % 5];
    const Spd x = random_spd(n, rng), y = random_spd(n, rng);
    const double d = airm_distance(x, y);
    const double tol = 1e-10 * std::max(1.0, d);
    CHECK(std::abs(d - airm_distance(y, x)) <= tol);
    const Mat a = random_invertible(n, rng);
    CHECK(std::abs(d - airm_distance(congruent(a, x), congruent(a, y))) <= 1e-9 * std::max(1.0, d));
    CHECK(std::abs(d - airm_distance(Spd(inverse(x.sym())), Spd(inverse(y.sym())))) <= 1e-9 * std::max(1.0, d));
  }
}

TEST_CASE("AIRM condition guard") {
  const Spd bad = Spd::diagonal(vec({1e4, 1e-9}));
  CHECK(kind_of([&] { airm_distance(bad, Spd(Sym::identity(2))); }) == ErrorKind::IllConditioned);
  CHECK_NOTHROW(airm_distance(Spd::diagonal(vec({1e3, 1e-8})), Spd(Sym::identity(2))));
  CHECK(kind_of([] { airm_distance(Spd(Sym::identity(2)), Spd(Sym::identity(3))); }) == ErrorKind::Dimension);
}

TEST_CASE("AIRM geodesic") {
  const Vec p = vec({1.0, 4.0, 0.25}), q = vec({2.0, 0.5, 9.0});
  const Spd x = Spd::diagonal(p), y = Spd::diagonal(q);
  for (double t : {0.3, 0.5, 2.0, -0.5}) {
    const Mat g = airm_geodesic(x, y, t).matrix();
    for (Index k = 0; k < 3; ++k) CHECK(g(k, k) == doctest::Approx(std::pow(p(k), 1 - t) * std::pow(q(k), t)).epsilon(1e-13));
  }
  CHECK(airm_geodesic(x, y, 0.0).matrix() == x.matrix());
  CHECK(airm_geodesic(x, y, 1.0).matrix() == y.matrix());
  CHECK_FALSE(is_extrapolation(0.0));
  CHECK_FALSE(is_extrapolation(1.0));
  CHECK(is_extrapolation(1.5));
  CHECK(is_extrapolation(-1e-9));

  for (int i = 0; i < 100; ++i) {
    Rng rng = rng_for(31, i);
    const int n = dims[i % 5];
    const Spd a = random_spd(n, rng), b = random_spd(n, rng);
    const double d = airm_distance(a, b);
    for (double t : {0.1, 0.5, 0.9, 1.5}) {
      CHECK(std::abs(airm_distance(a, airm_geodesic(a, b, t)) - std::abs(t) * d) <= 1e-9 * std::max(1.0, d));
    }
  }
  CHECK(kind_of([&] { airm_geodesic(x, y, std::nan("")); }) == ErrorKind::NonFinite);
}

TEST_CASE("AIRM metric") {
  Rng rng = rng_for(32, 0);
  const Sym v = random_symmetric(3, rng), w = random_symmetric(3, rng);
  CHECK(airm_metric(Spd(Sym::identity(3)), v, w) == doctest::Approx(trace_inner(v, w)).epsilon(1e-13));

  for (int i = 0; i < 100; ++i) {
    Rng r = rng_for(33, i);
    const int n = dims[i % 5];
    const Spd x = random_spd(n, r);
    const Sym a = random_symmetric(n, r), b = random_symmetric(n, r);
    const double g = airm_metric(x, a, b);
    CHECK(airm_metric(x, x.sym(), x.sym()) == doctest::Approx(double(n)).epsilon(1e-11));
    CHECK(g == doctest::Approx(airm_metric(x, b, a)).epsilon(1e-11));

    const Mat m = random_invertible(n, r);
    const double moved = airm_metric(congruent(m, x), Sym(m * a.matrix() * m.transpose()), Sym(m * b.matrix() * m.transpose()));
    CHECK(std::abs(moved - g) <= 1e-9 * std::max(1.0, std::abs(g)));

    // Hessian of -log det along a.
    const double h = 1e-4;
    const double f0 = -logdet(x.matrix());
    const double fp = -logdet(x.matrix() + h * a.matrix()), fm = -logdet(x.matrix() - h * a.matrix());
    const double fd = (fp - 2 * f0 + fm) / (h * h);
    const double exact = airm_metric(x, a, a);
    CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, exact));
  }
}

TEST_CASE("bicone variants") {
  const Vpm a = Vpm::scaled_identity(1, 0.2), b = Vpm::scaled_identity(1, 0.4);
  // n = 1: the pushed distance equals the Hilbert distance log(8/3).
  CHECK(airm_pushed(a, b) == doctest::Approx(std::log(8.0 / 3)).epsilon(1e-14));
  CHECK(airm_restricted(a, b) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  for (int i = 0; i < 50; ++i) {
    Rng rng = rng_for(34, i);
    const int n = dims[i % 5];
    const Spd p = random_spd(n, rng), q = random_spd(n, rng);
    const double want = airm_distance(p, q);
    CHECK(std::abs(airm_pushed(james_forward(p), james_forward(q)) - want) <= 1e-9 * std::max(1.0, want));
  }
  CHECK(airm_restricted(Vpm::scaled_identity(2, 1e-6), Vpm::scaled_identity(2, 2e-6)) == doctest::Approx(std::sqrt(2.0) * std::log(2.0)));
}
