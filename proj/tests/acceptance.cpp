// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "spdgeo/airm.hpp"
#include "spdgeo/barrier.hpp"
#include "spdgeo/bounds.hpp"
#include "spdgeo/hilbert.hpp"
#include "spdgeo/random.hpp"

using namespace spdgeo;
using Sym = SymmetricMatrix<double>;
using Spd = SpdMatrix<double>;
using Vpm = VpmMatrix<double>;
using Simplex = SimplexPoint<double>;
using Mat = Matrix<double>;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 1729;
constexpr int kDims[] = {1, 2, 3, 4, 8};

constexpr double kGoldenTol = 1e-12;
constexpr double kGoldenSeconds = 1e-3;
constexpr double kAgreementTol = 1e-8;
constexpr double kAgreementSeconds = 10.0;
constexpr double kSimplexTol = 1e-10;
constexpr double kSpeedTol = 1e-7;
constexpr double kAirmSpeedTol = 1e-9;
constexpr double kMarginTol = 1e-10;
constexpr double kWitnessTol = 1e-3;
constexpr double kUpperSeqAirm = 2e-6;
constexpr double kUpperSeqHilbert = 3e-6;
constexpr double kLowerSeqAirm = 1e-3;
constexpr double kLowerSeqHilbert = 1e-3;
constexpr double kExitTol = 1e-10;
constexpr double kDirectionalTol = 1e-4;
constexpr double kGradientTol = 1e-6;
constexpr double kHessianTol = 1e-5;
constexpr double kConcordanceSlack = 1e-3;
constexpr double kBregmanZeroTol = 1e-12;
constexpr double kIsometryTol = 1e-10;
constexpr double kJamesTol = 1e-10;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Rng rng_for(int criterion, int i) { return make_rng(kSeed, static_cast<std::uint64_t>(criterion), static_cast<std::uint64_t>(i)); }

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double rel_mat(const Mat& got, const Mat& want) { return (got - want).norm() / std::max(1.0, want.norm()); }

Mat conj(const Mat& u, const Mat& m) { return u * m * u.transpose(); }

Vpm conj(const Mat& u, const Vpm& x) {
  return Vpm::from_parts(Sym(conj(u, x.matrix())), Sym(conj(u, x.complement_spd().matrix())));
}

// Runs the command, returns stdout and sets the exit code.
std::string capture(const std::string& cmd, int& code) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return {};
  }
  std::string out;
  std::array<char, 1 << 16> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Vpm worked(double a, double b, double c) {
  Mat m(2, 2);
  m << a, c, c, b;
  return Vpm(m);
}

void golden_value() {
  const double s3 = std::sqrt(3.0);
  const double want = std::log((47 + std::sqrt(673.0)) / (47 - std::sqrt(673.0)));
  double best = 1e9, got = 0;
  for (int k = 0; k < 5; ++k) {
    const auto t0 = Clock::now();
    const Vpm j1 = worked(7.0 / 20, 13.0 / 20, -3 * s3 / 20);
    const Vpm j2 = worked(11.0 / 20, 9.0 / 20, -s3 / 20);
    got = hilbert_distance(j1, j2);
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  const double err = std::abs(got - want);
  report(1, err <= kGoldenTol && best < kGoldenSeconds,
         "worked example d_H = " + std::to_string(got) + ", |error| = " + num(err) + ", time " + num(best * 1e3) + " ms");
}

void three_way() {
  double worst = 0;
  const auto t0 = Clock::now();
  for (int n : kDims) {
    for (int i = 0; i < 500; ++i) {
      Rng rng = rng_for(2, 1000 * n + i);
      const Vpm x = random_vpm(n, rng, i % 2 == 1), y = random_vpm(n, rng);
      const double d = hilbert_distance(x, y);
      worst = std::max({worst, rel(hilbert_distance_spread(x, y), d), rel(hilbert_distance_oracle(x, y), d)});
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report(2, worst <= kAgreementTol && secs < kAgreementSeconds,
         "eigenvalue/spread/cross-ratio max rel diff " + num(worst) + " over 2500 pairs, " + num(secs) + " s");
}

void simplex_theorem() {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = rng_for(3, i);
    const int n = 2 + i % 7;
    const Simplex p = random_simplex(n, rng), q = random_simplex(n, rng);
    worst = std::max(worst, rel(hilbert_distance(embed_simplex(p), embed_simplex(q)), simplex_distance(p, q)));
  }
  report(3, worst <= kSimplexTol, "diag embedding vs simplex distance max rel diff " + num(worst) + " over 1000 pairs");
}

template <typename Point>
double speed_defect(const std::function<Point(double)>& gamma, const std::function<double(const Point&, const Point&)>& dist,
                    double length) {
  std::vector<Point> pts;
  for (int k = 0; k <= 10; ++k) pts.push_back(gamma(k / 10.0));
  double worst = 0;
  for (int a = 0; a <= 10; ++a) {
    for (int b = a + 1; b <= 10; ++b) {
      worst = std::max(worst, std::abs(dist(pts[a], pts[b]) - (b - a) / 10.0 * length) / length);
    }
  }
  return worst;
}

void constant_speed() {
  double vpm = 0, simplex = 0, airm = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = rng_for(4, i);
    const int n = kDims[i % 5];
    const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
    const GeodesicSpec<double> g(a, b);
    vpm = std::max(vpm, speed_defect<Vpm>([&](double s) { return hilbert_geodesic(g, s); },
                                          [](const Vpm& x, const Vpm& y) { return hilbert_distance(x, y); }, g.length()));

    const int m = std::max(2, n);
    const Simplex p = random_simplex(m, rng), q = random_simplex(m, rng);
    simplex = std::max(simplex, speed_defect<Simplex>([&](double s) { return simplex_geodesic(p, q, s); },
                                                      [](const Simplex& x, const Simplex& y) { return simplex_distance(x, y); },
                                                      simplex_distance(p, q)));

    const Spd x = random_spd(n, rng), y = random_spd(n, rng);
    airm = std::max(airm, speed_defect<Spd>([&](double s) { return airm_geodesic(x, y, s); },
                                            [](const Spd& u, const Spd& v) { return airm_distance(u, v); }, airm_distance(x, y)));
  }
  report(4, vpm <= kSpeedTol && simplex <= kSpeedTol && airm <= kAirmSpeedTol,
         "max |d(g(s),g(s')) - |s-s'|L| / L: vpm " + num(vpm) + ", simplex " + num(simplex) + ", airm " + num(airm));
}

void bound_table() {
  bool pass = true;
  double worst = 1e300;
  auto take = [&](const MarginResult& m) {
    if (m.skipped) return;
    pass = pass && m.errors == 0 && m.worst_margin >= -kMarginTol;
    worst = std::min(worst, m.worst_margin);
  };
  double witness = 0;
  auto wit = [&](const Witness& w) {
    const double e = std::abs(w.ratio - w.target);
    witness = std::max(witness, e);
    pass = pass && e <= kWitnessTol;
  };
  for (int n : kDims) {
    const auto seed = kSeed + static_cast<std::uint64_t>(n);
    take(check_lower_airm_restricted(1000, n, seed));
    take(check_upper_airm_pushed(1000, n, seed));
    const auto norms = check_norm_bounds(1000, n, seed);
    take(norms.upper);
    take(norms.lower);
    wit(lower_airm_restricted_witness(n, 1e-6));
    wit(upper_norm_witness(n));
    wit(lower_norm_witness(n, 1e-6));
  }
  // The two entries without a constant: the ratio grows without bound along
  // the sequences.
  bool grows = true;
  double prev_u = 0, prev_l = 0;
  for (double t : {1e1, 1e2, 1e3, 1e4, 1e5}) {
    const auto u = no_upper_bound_sequence(t, 2);
    const auto l = no_lower_bound_sequence(t, 2);
    const double ru = u.d_hilbert / u.d_airm, rl = l.d_airm / l.d_hilbert;
    grows = grows && ru > prev_u && rl > prev_l;
    prev_u = ru;
    prev_l = rl;
  }
  pass = pass && grows;
  report(5, pass,
         "4 bounded entries worst margin " + num(worst) + " (20000 instances), witness max |ratio - constant| " + num(witness) +
             ", unbounded ratios reach " + num(prev_u) + " / " + num(prev_l));
}

void sequences() {
  const auto u = no_upper_bound_sequence(1e6, 2);
  const auto l = no_lower_bound_sequence(1e4, 2);
  const double lim_a = std::sqrt(2.0) * std::acosh(1.5);
  const bool up = u.d_airm < kUpperSeqAirm && std::abs(u.d_hilbert - std::log(2.0)) < kUpperSeqHilbert;
  const bool lo_airm = std::abs(l.d_airm - lim_a) < kLowerSeqAirm;
  const bool lo_h = l.d_hilbert < kLowerSeqHilbert;
  report(6, up && lo_airm && lo_h,
         "t=1e6: d_airm|| = " + num(u.d_airm) + ", |d_H - log 2| = " + num(std::abs(u.d_hilbert - std::log(2.0))) +
             "; t=1e4: |d_airm-> - limit| = " + num(std::abs(l.d_airm - lim_a)) + ", d_H = " + num(l.d_hilbert) +
             (lo_h ? "" : " (needs < 1e-3)"));
}

void finsler() {
  double exit = 0, direction = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = rng_for(7, i);
    const int n = kDims[i % 5];
    const Vpm x = random_vpm(n, rng);
    Sym v = random_symmetric(n, rng);
    v = v / frobenius(v);
    const double f = finsler_norm(x, v);
    const auto et = exit_times(x, v);
    exit = std::max(exit, rel(f, 1 / et.forward + 1 / et.backward));
    const double h = 1e-6;
    const double fd = hilbert_distance(x, Vpm::from_parts(x.sym() + h * v, x.complement_spd().sym() - h * v)) / h;
    direction = std::max(direction, std::abs(fd - f) / f);
  }
  report(7, exit <= kExitTol && direction <= kDirectionalTol,
         "exit-time form rel diff " + num(exit) + ", one-sided derivative rel diff " + num(direction) + " over 200 (x, v)");
}

Vpm shifted(const Vpm& x, const Sym& v, double h) {
  return Vpm::from_parts(x.sym() + h * v, x.complement_spd().sym() - h * v);
}

void barrier() {
  double grad = 0, hess = 0, concord = 0, iso = 0, min_div = 1e300, zero_div = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = rng_for(8, i);
    const int n = kDims[i % 5];
    const Vpm x = random_vpm(n, rng);
    Sym v = random_symmetric(n, rng), w = random_symmetric(n, rng);
    v = v / barrier_norm(x, v);
    w = w / barrier_norm(x, w);

    const double h1 = 1e-6;
    const double fd1 = (bilogdet(shifted(x, v, h1)) - bilogdet(shifted(x, v, -h1))) / (2 * h1);
    grad = std::max(grad, rel(fd1, trace_inner(bilogdet_gradient(x), v)));

    const double h2 = 1e-4;
    const double fd2 = trace_inner(bilogdet_gradient(shifted(x, w, h2)) - bilogdet_gradient(shifted(x, w, -h2)), v) / (2 * h2);
    hess = std::max(hess, rel(fd2, barrier_metric(x, v, w)));

    const Mat u = random_orthogonal(n, rng);
    const double g = barrier_metric(x, v, w);
    iso = std::max(iso, rel(barrier_metric(conj(u, x), Sym(conj(u, v.matrix())), Sym(conj(u, w.matrix()))), g));
    iso = std::max(iso, rel(barrier_metric(complement(x), -v, -w), g));
  }
  for (int i = 0; i < 100; ++i) {
    Rng rng = rng_for(80, i);
    const int n = kDims[i % 5];
    concord = std::max(concord, self_concordance_check(random_vpm(n, rng), random_symmetric(n, rng), 16).max_ratio);
  }
  for (int i = 0; i < 500; ++i) {
    Rng rng = rng_for(81, i);
    const int n = kDims[i % 5];
    const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
    min_div = std::min({min_div, bregman_logdet(a.spd(), b.spd()), bregman_complement(a, b), bregman_bilogdet(a, b)});
    zero_div = std::max({zero_div, std::abs(bregman_logdet(a.spd(), a.spd())), std::abs(bregman_complement(a, a)),
                         std::abs(bregman_bilogdet(a, a))});
  }
  const bool pass = grad <= kGradientTol && hess <= kHessianTol && concord <= 1 + kConcordanceSlack && min_div > 0 &&
                    zero_div <= kBregmanZeroTol && iso <= kIsometryTol;
  report(8, pass,
         "gradient FD " + num(grad) + ", Hessian FD " + num(hess) + ", self-concordance max " + num(concord) +
             ", min divergence (distinct) " + num(min_div) + ", max divergence (equal) " + num(zero_div) +
             ", isometry " + num(iso));
}

void james() {
  double round = 0, wood1 = 0, wood2 = 0, diff = 0, equi = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = rng_for(9, i);
    const int n = kDims[i % 5];
    const Spd p = random_spd(n, rng);
    const Sym v = random_symmetric(n, rng);
    const Mat u = random_orthogonal(n, rng);
    const Mat id = Mat::Identity(n, n);
    const Vpm x = james_forward(p);

    round = std::max(round, rel_mat(james_inverse(x).matrix(), p.matrix()));
    wood1 = std::max(wood1, rel_mat(x.matrix(), (id + p.matrix().inverse()).inverse()));
    wood2 = std::max(wood2, rel_mat(x.complement_spd().matrix().inverse(), id + p.matrix()));

    auto fd = [&](double h) {
      const Vpm plus = james_forward(Spd(p.sym() + h * v)), minus = james_forward(Spd(p.sym() - h * v));
      return Mat((minus.complement_spd().matrix() - plus.complement_spd().matrix()) / (2 * h));
    };
    const double h = 5e-4;
    const Mat richardson = (4 * fd(h / 2) - fd(h)) / 3;
    diff = std::max(diff, rel_mat(richardson, james_differential(p, v).matrix()));

    equi = std::max(equi, rel_mat(james_forward(Spd(Sym(conj(u, p.matrix())))).matrix(), conj(u, x.matrix())));
  }
  const double worst = std::max({round, wood1, wood2, diff, equi});
  report(9, worst <= kJamesTol,
         "round trip " + num(round) + ", Woodbury " + num(wood1) + " / " + num(wood2) + ", differential FD " + num(diff) +
             ", equivariance " + num(equi));
}

void determinism() {
  const std::string cmd = std::string(SPDGEO_CLI) + " verify --seed 42";
  int c1 = 0, c2 = 0;
  const std::string a = capture(cmd, c1);
  const std::string b = capture(cmd, c2);
  report(10, !a.empty() && a == b && c1 == 0 && c2 == 0,
         "two verify runs with --seed 42: " + std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different") +
             ", exit codes " + std::to_string(c1) + "/" + std::to_string(c2));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {golden_value, three_way, simplex_theorem, constant_speed,
                                                       bound_table,  sequences, finsler,         barrier,
                                                       james,        determinism};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), false, std::string("threw: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
