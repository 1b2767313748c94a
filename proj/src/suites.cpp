#include <cmath>

#include "check_util.hpp"
#include "spdgeo/airm.hpp"
#include "spdgeo/barrier.hpp"
#include "spdgeo/bounds.hpp"
#include "spdgeo/hilbert.hpp"

namespace spdgeo {

using Vpm = VpmMatrix<double>;
using Spd = SpdMatrix<double>;
using Sym = SymmetricMatrix<double>;
using Simplex = SimplexPoint<double>;

using detail::capped;
using detail::cycle;
using detail::finish;
using detail::make_check;
using detail::record_error;
using detail::record_margin;
using detail::rel_error;
using detail::rel_margin;
using detail::rel_matrix_error;
using detail::run_trials;
using detail::trial_rng;

namespace {

std::vector<double> grid11() {
  std::vector<double> s;
  for (int k = 0; k <= 10; ++k) s.push_back(k / 10.0);
  return s;
}

// max over the 11-point grid of |d(g(s), g(s')) - |s - s'| L|, divided by L.
template <typename Point, typename Dist>
double speed_defect(const std::vector<Point>& pts, double length, Dist dist) {
  const auto s = grid11();
  double worst = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      worst = std::max(worst, std::abs(dist(pts[a], pts[b]) - (s[b] - s[a]) * length));
  return worst / length;
}

Sym conjugate(const Matrix<double>& u, const Sym& m) { return Sym(u * m.matrix() * u.transpose()); }

Vpm conjugate(const Matrix<double>& u, const Vpm& x) {
  return Vpm::from_parts(conjugate(u, x.sym()), conjugate(u, x.complement_spd().sym()));
}

CheckRecord skipped_check(const std::string& suite, const std::string& name, const std::string& measure, double tol) {
  auto r = make_check(suite, name, measure, tol, {});
  r.skipped = true;
  finish(r);
  return r;
}

}  // namespace

std::vector<CheckRecord> hilbert_checks(const VerifyConfig& c) {
  const std::string suite = "hilbert";
  std::vector<CheckRecord> out;
  const auto dims2 = detail::dims_at_least(c.dims, 2);

  for (int n : c.dims) {
    auto r = make_check(suite, "three_way_agreement", "max_error", 1e-8, {n});
    run_trials(r, capped(c, 500), [&](int i) {
      Rng rng = trial_rng(c, "three_way_agreement/" + std::to_string(n), i);
      const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
      const double d = hilbert_distance(a, b);
      record_error(r, std::abs(d - hilbert_distance_spread(a, b)));
      record_error(r, std::abs(d - hilbert_distance_oracle(a, b)));
    });
    out.push_back(r);
  }

  if (dims2.empty()) {
    out.push_back(skipped_check(suite, "simplex_embedding", "max_error", 1e-10));
  } else {
    auto r = make_check(suite, "simplex_embedding", "max_error", 1e-10, dims2);
    run_trials(r, capped(c, 1000), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(dims2, i);
      const Simplex p = random_simplex(n, rng), q = random_simplex(n, rng);
      record_error(r, std::abs(hilbert_distance(embed_simplex(p), embed_simplex(q)) - simplex_distance(p, q)));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "geodesic_constant_speed_vpm", "max_error", 1e-7, c.dims);
    run_trials(r, capped(c, 100), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const GeodesicSpec<double> spec(random_vpm(n, rng), random_vpm(n, rng));
      std::vector<Vpm> pts;
      for (double s : grid11()) pts.push_back(hilbert_geodesic(spec, s));
      record_error(r, speed_defect(pts, spec.length(), [](const Vpm& a, const Vpm& b) { return hilbert_distance(a, b); }));
    });
    out.push_back(r);
  }

  if (dims2.empty()) {
    out.push_back(skipped_check(suite, "geodesic_constant_speed_simplex", "max_error", 1e-7));
  } else {
    auto r = make_check(suite, "geodesic_constant_speed_simplex", "max_error", 1e-7, dims2);
    run_trials(r, capped(c, 100), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(dims2, i);
      const Simplex p = random_simplex(n, rng), q = random_simplex(n, rng);
      std::vector<Simplex> pts;
      for (double s : grid11()) pts.push_back(simplex_geodesic(p, q, s));
      record_error(r, speed_defect(pts, simplex_distance(p, q),
                                   [](const Simplex& a, const Simplex& b) { return simplex_distance(a, b); }));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "geodesic_constant_speed_airm", "max_error", 1e-9, c.dims);
    run_trials(r, capped(c, 100), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Spd a = random_spd(n, rng), b = random_spd(n, rng);
      std::vector<Spd> pts;
      for (double s : grid11()) pts.push_back(airm_geodesic(a, b, s));
      record_error(r, speed_defect(pts, airm_distance(a, b), [](const Spd& x, const Spd& y) { return airm_distance(x, y); }));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "finsler_exit_times", "max_error", 1e-10, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng);
      const Sym v = random_symmetric(n, rng);
      const auto e = exit_times(x, v);
      record_error(r, rel_error(finsler_norm(x, v), 1.0 / e.forward + 1.0 / e.backward));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "finsler_directional_derivative", "max_error", 1e-4, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng);
      const Sym v = random_symmetric(n, rng);
      const Sym u = v / frobenius(v);
      const double h = 1e-6;
      const Vpm y = Vpm::from_parts(x.sym() + h * u, x.complement_spd().sym() - h * u);
      record_error(r, rel_error(hilbert_distance(x, y) / h, finsler_norm(x, u)));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "finsler_symmetry", "max_error", 1e-12, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng);
      const Sym v = random_symmetric(n, rng);
      record_error(r, rel_error(finsler_norm(x, -v), finsler_norm(x, v)));
    });
    out.push_back(r);
  }

  {
    auto sym = make_check(suite, "distance_symmetry", "max_error", 1e-12, c.dims);
    auto tri = make_check(suite, "triangle_inequality", "min_margin", 1e-9, c.dims);
    run_trials(tri, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, tri.name, i);
      const int n = cycle(c.dims, i);
      const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng), d = random_vpm(n, rng);
      const double ab = hilbert_distance(a, b);
      record_error(sym, std::abs(ab - hilbert_distance(b, a)));
      record_margin(tri, hilbert_distance(a, d) + hilbert_distance(d, b) - ab);
      ++sym.trials;
    });
    finish(sym);
    out.push_back(sym);
    out.push_back(tri);
  }

  {
    auto comp = make_check(suite, "complement_invariance", "max_error", 1e-10, c.dims);
    auto orth = make_check(suite, "orthogonal_invariance", "max_error", 1e-10, c.dims);
    run_trials(orth, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, orth.name, i);
      const int n = cycle(c.dims, i);
      const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
      const Matrix<double> u = random_orthogonal(n, rng);
      const double d = hilbert_distance(a, b);
      record_error(comp, std::abs(hilbert_distance(complement(a), complement(b)) - d));
      record_error(orth, std::abs(hilbert_distance(conjugate(u, a), conjugate(u, b)) - d));
      ++comp.trials;
    });
    finish(comp);
    out.push_back(comp);
    out.push_back(orth);
  }

  {
    auto r = make_check(suite, "pregeodesic_additivity", "max_error", 1e-9, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
      const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const Vpm m = hilbert_pregeodesic(a, b, alpha);
      record_error(r, std::abs(hilbert_distance(a, m) + hilbert_distance(m, b) - hilbert_distance(a, b)));
    });
    out.push_back(r);
  }

  {
    auto lb = make_check(suite, "lower_bound_corollary", "min_margin", 1e-12, c.dims);
    run_trials(lb, capped(c, 500), [&](int i) {
      Rng rng = trial_rng(c, lb.name, i);
      const int n = cycle(c.dims, i);
      const Vpm a = random_vpm(n, rng, i % 2 == 1), b = random_vpm(n, rng, i % 2 == 1);
      record_margin(lb, hilbert_distance(a, b) - hilbert_lower_bound(a, b));
    });
    out.push_back(lb);
  }

  {
    auto r = make_check(suite, "birkhoff_symmetrisation", "max_error", 1e-10, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
      const double sum = birkhoff_ratio_hat(a, b).log_value + birkhoff_ratio_hat(b, a).log_value;
      record_error(r, std::abs(sum - hilbert_distance(a, b)));
    });
    out.push_back(r);
  }
  return out;
}

std::vector<CheckRecord> barrier_checks(const VerifyConfig& c) {
  const std::string suite = "barrier";
  std::vector<CheckRecord> out;

  {
    auto r = make_check(suite, "gradient_finite_difference", "max_error", 1e-6, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng);
      const Sym v = random_symmetric(n, rng);
      const double h = 1e-6;
      const Vpm xp = Vpm::from_parts(x.sym() + h * v, x.complement_spd().sym() - h * v);
      const Vpm xm = Vpm::from_parts(x.sym() - h * v, x.complement_spd().sym() + h * v);
      const double fd = (bilogdet(xp) - bilogdet(xm)) / (2 * h);
      record_error(r, rel_error(fd, trace_inner(bilogdet_gradient(x), v)));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "hessian_finite_difference", "max_error", 1e-5, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng);
      const Sym v = random_symmetric(n, rng);
      const Sym w0 = random_symmetric(n, rng);
      const Sym w = w0 / barrier_norm(x, w0);
      const double h = 1e-4;
      const Vpm xp = Vpm::from_parts(x.sym() + h * w, x.complement_spd().sym() - h * w);
      const Vpm xm = Vpm::from_parts(x.sym() - h * w, x.complement_spd().sym() + h * w);
      const double fd = trace_inner(bilogdet_gradient(xp) - bilogdet_gradient(xm), v) / (2 * h);
      const double scale = barrier_norm(x, v) * barrier_norm(x, w);
      record_error(r, std::abs(fd - barrier_metric(x, v, w)) / scale);
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "self_concordance", "max_error", 1.0 + self_concordance_slack<double>(), c.dims);
    run_trials(r, capped(c, 100), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const auto rep = self_concordance_check(random_vpm(n, rng), random_symmetric(n, rng), 16);
      record_error(r, rep.max_ratio);
    });
    out.push_back(r);
  }

  {
    auto pos = make_check(suite, "bregman_positivity", "min_margin", 0.0, c.dims);
    auto zero = make_check(suite, "bregman_identity", "max_error", 1e-12, c.dims);
    auto spectral = make_check(suite, "bregman_spectral_sum", "max_error", 1e-10, c.dims);
    auto generic = make_check(suite, "bregman_generic_form", "max_error", 1e-9, c.dims);
    auto swap = make_check(suite, "bregman_complement_swap", "max_error", 1e-12, c.dims);
    run_trials(pos, capped(c, 500), [&](int i) {
      Rng rng = trial_rng(c, pos.name, i);
      const int n = cycle(c.dims, i);
      const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
      const double bl = bregman_logdet(a.spd(), b.spd());
      const double bc = bregman_complement(a, b);
      const double bb = bregman_bilogdet(a, b);
      // Distinct arguments: strictly positive.
      record_margin(pos, std::min({bl, bc, bb}));
      if (!(bl > 0.0 && bc > 0.0 && bb > 0.0)) record_margin(pos, -1.0);
      record_error(zero, std::abs(bregman_logdet(a.spd(), a.spd())));
      record_error(zero, std::abs(bregman_complement(a, a)));
      record_error(zero, std::abs(bregman_bilogdet(a, a)));
      // Trace/determinant form.
      const Matrix<double> ab = a.matrix() * inverse(b.sym()).matrix();
      const double logdet = -detail::neg_log_sum(a.spectrum()) + detail::neg_log_sum(b.spectrum());
      record_error(spectral, rel_error(bl, ab.trace() - logdet - n));
      const double g = bilogdet(a) - bilogdet(b) - trace_inner(bilogdet_gradient(b), a.sym() - b.sym());
      record_error(generic, rel_error(bb, g));
      record_error(swap, std::abs(bregman_bilogdet(complement(a), complement(b)) - bb));
      zero.trials = spectral.trials = generic.trials = swap.trials = pos.trials + 1;
    });
    for (auto* r : {&zero, &spectral, &generic, &swap}) {
      finish(*r);
    }
    out.push_back(pos);
    out.push_back(zero);
    out.push_back(spectral);
    out.push_back(generic);
    out.push_back(swap);
  }

  {
    auto conj = make_check(suite, "conjugation_isometry", "max_error", 1e-10, c.dims);
    auto comp = make_check(suite, "complement_isometry", "max_error", 1e-12, c.dims);
    run_trials(conj, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, conj.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng);
      const Sym v = random_symmetric(n, rng), w = random_symmetric(n, rng);
      const Matrix<double> u = random_orthogonal(n, rng);
      const double g = barrier_metric(x, v, w);
      record_error(conj, rel_error(barrier_metric(conjugate(u, x), conjugate(u, v), conjugate(u, w)), g));
      record_error(comp, rel_error(barrier_metric(complement(x), -v, -w), g));
      ++comp.trials;
    });
    finish(comp);
    out.push_back(conj);
    out.push_back(comp);
  }

  {
    auto r = make_check(suite, "strict_convexity", "min_margin", 0.0, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng), y = random_vpm(n, rng);
      const double a = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
      const Vpm m = hilbert_pregeodesic(y, x, a);
      record_margin(r, a * bilogdet(x) + (1 - a) * bilogdet(y) - bilogdet(m) - 1e-12);
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "gradient_injectivity", "min_margin", 0.0, c.dims);
    run_trials(r, capped(c, 200), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng), y = random_vpm(n, rng);
      // Strict monotonicity <grad(x) - grad(y), x - y> > 0 implies injectivity.
      record_margin(r, trace_inner(bilogdet_gradient(x) - bilogdet_gradient(y), x.sym() - y.sym()) > 0.0 ? 0.0 : -1.0);
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "path_length_symmetrised_bregman", "min_margin", 1e-6, c.dims);
    run_trials(r, capped(c, 50), [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm a = random_vpm(n, rng), b = random_vpm(n, rng);
      std::vector<Vpm> path;
      const int segments = 256;
      for (int k = 0; k <= segments; ++k) path.push_back(hilbert_pregeodesic(a, b, double(k) / segments));
      const double bound =
          std::sqrt(trace_inner(b.sym() - a.sym(), bilogdet_gradient(b) - bilogdet_gradient(a)));
      record_margin(r, bound - barrier_path_length(path));
    });
    out.push_back(r);
  }
  return out;
}

std::vector<CheckRecord> lemma_checks(const VerifyConfig& c) {
  const std::string suite = "lemmas";
  std::vector<CheckRecord> out;
  const int count = capped(c, 200);

  {
    auto r = make_check(suite, "conjugation_trace_formula", "max_error", 1e-9, {2});
    run_trials(r, count, [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      std::uniform_real_distribution<double> logscale(-3.0, 3.0), angle(-3.14159, 3.14159);
      const double a = std::exp(logscale(rng)), b = std::exp(logscale(rng)), th = angle(rng);
      Matrix<double> u(2, 2);
      u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      const Matrix<double> d = Vector<double>{{a, b}}.asDiagonal();
      const double direct = 0.5 * (u.transpose() * d.inverse() * u * d).trace();
      const double s2 = std::sin(th) * std::sin(th);
      record_error(r, rel_error(direct, std::cos(th) * std::cos(th) + s2 / 2 * (a / b + b / a)));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "trace_one_equal_det_same_spectrum", "max_error", 1e-9, {2});
    run_trials(r, count, [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const double delta = std::uniform_real_distribution<double>(0.01, 0.24)(rng);
      const double disc = std::sqrt(1 - 4 * delta);
      const Vector<double> lam{{(1 - disc) / 2, (1 + disc) / 2}};
      const Matrix<double> u1 = random_orthogonal(2, rng), u2 = random_orthogonal(2, rng);
      const Vpm x(Sym(u1 * lam.asDiagonal() * u1.transpose()));
      const Vpm y(Sym(u2 * lam.asDiagonal() * u2.transpose()));
      const auto s1 = generalized_eigs(x.sym(), y.spectrum()).eigenvalues;
      const auto s2 = generalized_eigs(x.complement_spd().sym(), y.complement_spd().spectrum()).eigenvalues;
      record_error(r, (s1 - s2).cwiseAbs().maxCoeff() / std::max(1.0, s1.cwiseAbs().maxCoeff()));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "unit_det_cosh_eigenvalues", "max_error", 1e-9, {2});
    run_trials(r, count, [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const double t = std::uniform_real_distribution<double>(3.0, 100.0)(rng);
      const double th = 1.0 / t;
      Matrix<double> u(2, 2);
      u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      const Spd p(Matrix<double>(Vector<double>{{t, 1 / t}}.asDiagonal()));
      const Spd q(Matrix<double>(u * p.matrix() * u.transpose()));
      const auto eig = generalized_eigs(p.sym(), q.spectrum()).eigenvalues;
      const double half_trace = 0.5 * eig.sum();
      const double a = std::acosh(half_trace);
      record_error(r, std::max(rel_error(eig(0), std::exp(-a)), rel_error(eig(1), std::exp(a))));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "hat_co_lipschitz", "min_margin", inequality_tol, c.dims);
    run_trials(r, count, [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Vpm x = random_vpm(n, rng, i % 2 == 1), y = random_vpm(n, rng, i % 2 == 1);
      const double a = airm_restricted(x, y), b = airm_restricted(complement(x), complement(y));
      record_margin(r, rel_margin(hilbert_distance(x, y), std::sqrt(2.0) * std::sqrt(a * a + b * b)));
    });
    out.push_back(r);
  }

  {
    auto r = make_check(suite, "james_one_lipschitz", "min_margin", inequality_tol, c.dims);
    run_trials(r, count, [&](int i) {
      Rng rng = trial_rng(c, r.name, i);
      const int n = cycle(c.dims, i);
      const Spd p = random_spd(n, rng);
      const Sym v = random_symmetric(n, rng);
      const double lhs = barrier_norm(james_forward(p), james_differential(p, v));
      record_margin(r, rel_margin(lhs, std::sqrt(airm_metric(p, v, v))));
    });
    out.push_back(r);
  }

  {
    auto range = make_check(suite, "range_l2_inequality", "min_margin", 1e-12, c.dims);
    auto norms = make_check(suite, "operator_frobenius_inequality", "min_margin", 1e-12, c.dims);
    run_trials(range, capped(c, 1000), [&](int i) {
      Rng rng = trial_rng(c, range.name, i);
      const int n = cycle(c.dims, i);
      const Vector<double> x = random_gaussian(n, 1, rng);
      record_margin(range, std::sqrt(2.0) * x.norm() - (x.maxCoeff() - x.minCoeff()));
      const Sym v = random_symmetric(n, rng);
      const double op = operator_norm(v), fro = frobenius(v);
      record_margin(norms, std::min(fro - op, std::sqrt(double(n)) * op - fro) / std::max(1.0, fro));
      ++norms.trials;
    });
    finish(norms);
    out.push_back(range);
    out.push_back(norms);
  }

  {
    auto round = make_check(suite, "james_round_trip", "max_error", 1e-10, c.dims);
    auto wood1 = make_check(suite, "james_inverse_formula", "max_error", 1e-10, c.dims);
    auto wood2 = make_check(suite, "james_complement_inverse", "max_error", 1e-10, c.dims);
    auto diff = make_check(suite, "james_differential_fd", "max_error", 1e-10, c.dims);
    auto equi = make_check(suite, "james_equivariance", "max_error", 1e-10, c.dims);
    run_trials(round, count, [&](int i) {
      Rng rng = trial_rng(c, round.name, i);
      const int n = cycle(c.dims, i);
      const Spd p = random_spd(n, rng);
      const Sym v = random_symmetric(n, rng);
      const Matrix<double> u = random_orthogonal(n, rng);
      const Matrix<double> id = Matrix<double>::Identity(n, n);
      const Vpm x = james_forward(p);

      record_error(round, rel_matrix_error(james_inverse(x).matrix(), p.matrix()));
      const Matrix<double> via_inverse = (id + p.matrix().inverse()).inverse();
      record_error(wood1, rel_matrix_error(x.matrix(), via_inverse));
      record_error(wood2, rel_matrix_error(inverse(x.complement_spd().sym()).matrix(), id + p.matrix()));

      // d iota = -d (I + P)^-1; central differences at h and h/2, one
      // Richardson step.
      auto fd = [&](double h) {
        const Vpm plus = james_forward(Spd(p.sym() + h * v));
        const Vpm minus = james_forward(Spd(p.sym() - h * v));
        return Matrix<double>((minus.complement_spd().matrix() - plus.complement_spd().matrix()) / (2 * h));
      };
      const double h = 5e-4;
      const Matrix<double> rich = (4 * fd(h / 2) - fd(h)) / 3;
      record_error(diff, rel_matrix_error(rich, james_differential(p, v).matrix()));

      const Vpm rotated = james_forward(Spd(conjugate(u, p.sym())));
      record_error(equi, rel_matrix_error(rotated.matrix(), u * x.matrix() * u.transpose()));
      wood1.trials = wood2.trials = diff.trials = equi.trials = round.trials + 1;
    });
    for (auto* r : {&wood1, &wood2, &diff, &equi}) finish(*r);
    out.push_back(round);
    out.push_back(wood1);
    out.push_back(wood2);
    out.push_back(diff);
    out.push_back(equi);
  }
  return out;
}

}  // namespace spdgeo
