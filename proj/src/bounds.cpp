#include "spdgeo/bounds.hpp"

#include <cmath>

#include "check_util.hpp"
#include "spdgeo/airm.hpp"
#include "spdgeo/barrier.hpp"
#include "spdgeo/hilbert.hpp"

namespace spdgeo {

using Vpm = VpmMatrix<double>;
using Sym = SymmetricMatrix<double>;

namespace detail {

std::uint64_t stream_id(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void run_trials(CheckRecord& record, int count, const std::function<void(int)>& trial) {
  for (int i = 0; i < count; ++i) {
    try {
      trial(i);
    } catch (const Error&) {
      ++record.errors;
    }
    ++record.trials;
  }
  finish(record);
}

}  // namespace detail

namespace {

MarginResult margin_loop(const std::string& name, int trials, int n, std::uint64_t seed,
                         const std::function<double(Rng&, int)>& margin) {
  MarginResult r;
  r.n = n;
  r.worst_margin = 1.0;
  for (int i = 0; i < trials; ++i) {
    Rng rng = make_rng(seed, detail::stream_id(name) + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
    try {
      r.worst_margin = std::min(r.worst_margin, margin(rng, i));
    } catch (const Error&) {
      ++r.errors;
    }
    ++r.trials;
  }
  r.pass = r.errors == 0 && r.worst_margin >= -inequality_tol;
  return r;
}

// Every other sample is pushed towards the boundary.
Vpm sample(Index n, Rng& rng, int i) { return random_vpm(n, rng, i % 2 == 1); }

Vpm padded(const Matrix<double>& x, const Matrix<double>& c, int n) {
  Matrix<double> a = 0.5 * Matrix<double>::Identity(n, n);
  Matrix<double> b = a;
  a.topLeftCorner(x.rows(), x.cols()) = x;
  b.topLeftCorner(c.rows(), c.cols()) = c;
  return Vpm::from_parts(Sym(a), Sym(b));
}

}  // namespace

MarginResult check_lower_airm_restricted(int trials, int n, std::uint64_t seed) {
  return margin_loop("lower_airm_restricted", trials, n, seed, [n](Rng& rng, int i) {
    const Vpm x = sample(n, rng, i);
    const Vpm y = sample(n, rng, i);
    return detail::rel_margin(airm_restricted(x, y) / std::sqrt(double(n)), hilbert_distance(x, y));
  });
}

MarginResult check_upper_airm_pushed(int trials, int n, std::uint64_t seed) {
  return margin_loop("upper_airm_pushed", trials, n, seed, [n](Rng& rng, int i) {
    const Vpm x = sample(n, rng, i);
    const Vpm y = sample(n, rng, i);
    return detail::rel_margin(hilbert_distance(x, y), std::sqrt(2.0) * airm_pushed(x, y));
  });
}

NormBoundsResult check_norm_bounds(int trials, int n, std::uint64_t seed) {
  NormBoundsResult out;
  out.upper = margin_loop("upper_norm", trials, n, seed, [n](Rng& rng, int i) {
    const Vpm x = sample(n, rng, i);
    const Sym v = random_symmetric(n, rng);
    return detail::rel_margin(finsler_norm(x, v), std::sqrt(2.0) * barrier_norm(x, v));
  });
  out.lower = margin_loop("lower_norm", trials, n, seed, [n](Rng& rng, int i) {
    const Vpm x = sample(n, rng, i);
    const Sym v = random_symmetric(n, rng);
    return detail::rel_margin(barrier_norm(x, v), std::sqrt(double(n)) * finsler_norm(x, v));
  });
  return out;
}

Witness lower_airm_restricted_witness(int n, double eps, double c) {
  const Vpm x = Vpm::scaled_identity(n, eps);
  const Vpm y = Vpm::scaled_identity(n, c * eps);
  Witness w;
  w.description = "X = eps I, Y = c eps I, c = " + detail::fmt(c);
  w.parameter = eps;
  w.ratio = airm_restricted(x, y) / hilbert_distance(x, y);
  w.target = std::sqrt(double(n));
  w.pass = std::abs(w.ratio - w.target) <= witness_tol;
  return w;
}

Witness upper_norm_witness(int n) {
  const Vpm x = Vpm::scaled_identity(n, 0.5);
  Matrix<double> e = Matrix<double>::Zero(n, n);
  e(0, 0) = 1.0;
  const Sym v(e);
  Witness w;
  w.description = "X = I/2, V = e1 e1^T";
  w.parameter = 0.5;
  w.ratio = finsler_norm(x, v) / barrier_norm(x, v);
  w.target = std::sqrt(2.0);
  w.pass = std::abs(w.ratio - w.target) <= witness_tol;
  return w;
}

Witness lower_norm_witness(int n, double eps) {
  const Vpm x = Vpm::scaled_identity(n, eps);
  const auto v = Sym::identity(n);
  Witness w;
  w.description = "X = eps I, V = I";
  w.parameter = eps;
  w.ratio = barrier_norm(x, v) / finsler_norm(x, v);
  w.target = std::sqrt(double(n));
  w.pass = std::abs(w.ratio - w.target) <= witness_tol;
  return w;
}

namespace {

void require_sequence_args(double t, int n, const char* what) {
  if (n < 2) throw Error(ErrorKind::Dimension, std::string(what) + " requires n >= 2");
  if (!(t >= 3.0)) throw Error(ErrorKind::Domain, std::string(what) + ": t = " + detail::fmt(t) + " must be >= 3");
}

}  // namespace

SequencePoint no_upper_bound_sequence(double t, int n) {
  require_sequence_args(t, n, "no_upper_bound_sequence");
  Vector<double> x = Vector<double>::Constant(n, 0.5), cx = x, y = x, cy = x;
  x(0) = 1.0 - 2.0 / t;
  cx(0) = 2.0 / t;
  y(0) = 1.0 - 1.0 / t;
  cy(0) = 1.0 / t;
  const Vpm xt = Vpm::from_parts(Sym::diagonal(x), Sym::diagonal(cx));
  const Vpm yt = Vpm::from_parts(Sym::diagonal(y), Sym::diagonal(cy));
  return {t, n, airm_restricted(xt, yt), hilbert_distance(xt, yt)};
}

SequencePoint no_lower_bound_sequence(double t, int n) {
  require_sequence_args(t, n, "no_lower_bound_sequence");
  const double theta = 1.0 / t;
  Matrix<double> u(2, 2);
  u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  const Matrix<double> p = Vector<double>{{t, 1.0 / t}}.asDiagonal();
  const Matrix<double> q = u * p * u.transpose();
  const Vpm xp = james_forward(SpdMatrix<double>(p));
  const Vpm xq = james_forward(SpdMatrix<double>(q));
  const Vpm x = padded(xp.matrix(), xp.complement_spd().matrix(), n);
  const Vpm y = padded(xq.matrix(), xq.complement_spd().matrix(), n);
  return {t, n, airm_pushed(x, y), hilbert_distance(x, y)};
}

namespace {

InequalityRecord margin_row(std::string name, std::string distance, std::string side, std::string relation,
                            double constant) {
  InequalityRecord r;
  r.name = std::move(name);
  r.distance = std::move(distance);
  r.side = std::move(side);
  r.relation = std::move(relation);
  r.constant = constant;
  r.worst_margin = 1.0;
  return r;
}

void add_dim(InequalityRecord& row, const MarginResult& m) {
  row.per_n.push_back(m);
  if (m.skipped) return;
  row.trials += m.trials;
  row.worst_margin = std::min(row.worst_margin, m.worst_margin);
  row.pass = row.pass && m.pass;
}

void finish_row(InequalityRecord& row) {
  for (const auto& w : row.witnesses) row.pass = row.pass && w.pass;
}

// Ratio along a geometric ladder must increase strictly; the record's
// margin is the smallest relative increase between consecutive rungs.
MarginResult ladder_result(int n, const std::vector<double>& ts, SequencePoint (*seq)(double, int), bool hilbert_over_airm,
                           double& top_ratio) {
  MarginResult m;
  m.n = n;
  m.worst_margin = 1.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    try {
      const auto p = seq(ts[k], n);
      const double ratio = hilbert_over_airm ? p.d_hilbert / p.d_airm : p.d_airm / p.d_hilbert;
      if (k > 0) m.worst_margin = std::min(m.worst_margin, (ratio - prev) / prev);
      prev = ratio;
    } catch (const Error&) {
      ++m.errors;
    }
    ++m.trials;
  }
  top_ratio = std::max(top_ratio, prev);
  m.pass = m.errors == 0 && m.worst_margin > 0.0 && std::isfinite(prev);
  return m;
}

std::vector<double> ladder(int top_exponent) {
  std::vector<double> ts;
  for (int k = 1; k <= top_exponent; ++k) ts.push_back(std::pow(10.0, k));
  return ts;
}

constexpr int no_upper_ladder_top = 6;
constexpr int no_lower_ladder_top = 5;

}  // namespace

std::vector<InequalityRecord> inequality_rows(const VerifyConfig& config) {
  const int trials = detail::capped(config, 1000);
  std::vector<InequalityRecord> rows;

  auto no_upper = margin_row("d_airm_restricted_upper", "d_airm_restricted", "upper",
                             "no c with d_H <= c d_airm_restricted", 0.0);
  no_upper.bounded = false;
  auto lower_r = margin_row("d_airm_restricted_lower", "d_airm_restricted", "lower",
                            "(1/sqrt(n)) d_airm_restricted <= d_H", 0.0);
  auto upper_p = margin_row("d_airm_pushed_upper", "d_airm_pushed", "upper", "d_H <= sqrt(2) d_airm_pushed",
                            std::sqrt(2.0));
  auto no_lower = margin_row("d_airm_pushed_lower", "d_airm_pushed", "lower",
                             "no c > 0 with c d_airm_pushed <= d_H", 0.0);
  no_lower.bounded = false;
  auto upper_n = margin_row("barrier_norm_upper", "barrier_norm", "upper",
                            "finsler_norm <= sqrt(2) barrier_norm", std::sqrt(2.0));
  auto lower_n = margin_row("barrier_norm_lower", "barrier_norm", "lower",
                            "(1/sqrt(n)) barrier_norm <= finsler_norm", 0.0);

  double top_upper = 0.0, top_lower = 0.0;
  for (int n : config.dims) {
    if (n < 2) {
      MarginResult skipped;
      skipped.n = n;
      skipped.skipped = true;
      add_dim(no_upper, skipped);
      add_dim(no_lower, skipped);
    } else {
      add_dim(no_upper, ladder_result(n, ladder(no_upper_ladder_top), &no_upper_bound_sequence, true, top_upper));
      add_dim(no_lower, ladder_result(n, ladder(no_lower_ladder_top), &no_lower_bound_sequence, false, top_lower));
    }
    add_dim(lower_r, check_lower_airm_restricted(trials, n, config.seed));
    add_dim(upper_p, check_upper_airm_pushed(trials, n, config.seed));
    const auto norms = check_norm_bounds(trials, n, config.seed);
    add_dim(upper_n, norms.upper);
    add_dim(lower_n, norms.lower);
    lower_r.witnesses.push_back(lower_airm_restricted_witness(n));
    upper_n.witnesses.push_back(upper_norm_witness(n));
    lower_n.witnesses.push_back(lower_norm_witness(n));
  }
  no_upper.constant = top_upper;
  no_lower.constant = top_lower;

  // The lower constants depend on n; the row reports the smallest tested.
  const int n_max = config.dims.empty() ? 1 : *std::max_element(config.dims.begin(), config.dims.end());
  lower_r.constant = 1.0 / std::sqrt(double(n_max));
  lower_n.constant = 1.0 / std::sqrt(double(n_max));

  for (auto* row : {&no_upper, &lower_r, &upper_p, &no_lower, &upper_n, &lower_n}) {
    finish_row(*row);
    rows.push_back(std::move(*row));
  }
  return rows;
}

std::vector<SequenceRecord> sequence_records(const VerifyConfig& config) {
  const auto dims = detail::dims_at_least(config.dims, 2);
  SequenceRecord up;
  up.name = "no_upper_bound_sequence";
  up.airm_limit = 0.0;
  up.hilbert_limit = no_upper_limit_hilbert();
  up.t = 1e6;
  SequenceRecord lo;
  lo.name = "no_lower_bound_sequence";
  lo.airm_limit = no_lower_limit_airm();
  lo.hilbert_limit = 0.0;
  lo.t = 1e4;
  if (dims.empty()) {
    up.skipped = lo.skipped = true;
    return {up, lo};
  }
  const int n = dims.front();
  up.n = lo.n = n;
  const auto p_up = no_upper_bound_sequence(up.t, n);
  up.d_airm = p_up.d_airm;
  up.d_hilbert = p_up.d_hilbert;
  for (double t : ladder(no_upper_ladder_top)) up.ladder.push_back(no_upper_bound_sequence(t, n));
  const auto p_lo = no_lower_bound_sequence(lo.t, n);
  lo.d_airm = p_lo.d_airm;
  lo.d_hilbert = p_lo.d_hilbert;
  for (double t : ladder(no_lower_ladder_top)) lo.ladder.push_back(no_lower_bound_sequence(t, n));
  return {up, lo};
}

}  // namespace spdgeo
