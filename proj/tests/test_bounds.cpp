#include <json.hpp>

#include "spdgeo/bounds.hpp"
#include "support.hpp"

using namespace spdgeo;
using namespace spdgeo::test;

TEST_CASE("bounded inequalities hold on random samples") {
  for (int n : dims) {
    const auto lower = check_lower_airm_restricted(200, n, 7);
    CHECK(lower.pass);
    CHECK(lower.errors == 0);
    CHECK(lower.worst_margin >= -inequality_tol);
    const auto upper = check_upper_airm_pushed(200, n, 7);
    CHECK(upper.pass);
    CHECK(upper.errors == 0);
    const auto norms = check_norm_bounds(200, n, 7);
    CHECK(norms.upper.pass);
    CHECK(norms.lower.pass);
  }
}

TEST_CASE("witnesses approach the constants") {
  for (int n : dims) {
    const auto a = lower_airm_restricted_witness(n);
    CHECK(a.target == doctest::Approx(std::sqrt(double(n))));
    CHECK(std::abs(a.ratio / a.target - 1) <= witness_tol);
    CHECK(a.pass);
    // X = eps I, Y = 2 eps I: d_H = log(2 (1 - eps) / (1 - 2 eps)).
    const double eps = 1e-6;
    CHECK(a.ratio == doctest::Approx(std::sqrt(double(n)) * std::log(2.0) / std::log(2 * (1 - eps) / (1 - 2 * eps))).epsilon(1e-10));

    const auto u = upper_norm_witness(n);
    CHECK(u.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(u.pass);

    const auto l = lower_norm_witness(n);
    CHECK(std::abs(l.ratio / std::sqrt(double(n)) - 1) <= witness_tol);
    CHECK(l.pass);
  }
}

TEST_CASE("sequence without an upper bound") {
  const auto s3 = no_upper_bound_sequence(3.0, 2);
  CHECK(s3.d_hilbert == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(s3.d_airm == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  for (double t : {10.0, 1e3, 1e6}) {
    const auto s = no_upper_bound_sequence(t, 2);
    CHECK(s.d_hilbert == doctest::Approx(std::log(2 * (t - 1) / (t - 2))).epsilon(1e-9));
    CHECK(s.d_airm == doctest::Approx(std::log((t - 1) / (t - 2))).epsilon(1e-6));
    const auto padded = no_upper_bound_sequence(t, 5);
    CHECK(padded.d_hilbert == doctest::Approx(s.d_hilbert).epsilon(1e-12));
    CHECK(padded.d_airm == doctest::Approx(s.d_airm).epsilon(1e-9));
  }
  const auto far = no_upper_bound_sequence(1e6, 2);
  CHECK(far.d_airm < 1e-5);
  CHECK(std::abs(far.d_hilbert - no_upper_limit_hilbert()) < 1e-5);
  CHECK(kind_of([] { no_upper_bound_sequence(2.0, 2); }) == ErrorKind::Domain);
  CHECK(kind_of([] { no_upper_bound_sequence(10.0, 1); }) == ErrorKind::Dimension);
}

TEST_CASE("sequence without a lower bound") {
  CHECK(no_lower_limit_airm() == doctest::Approx(1.361072578747201).epsilon(1e-15));
  for (double t : {3.0, 10.0, 1e2, 1e4}) {
    const double th = 1 / t;
    const double c2 = std::cos(th) * std::cos(th), s2 = std::sin(th) * std::sin(th);
    const double want_h = 2 * std::acosh(c2 + s2 * (t + 1 / t) / 2);
    const double want_a = std::sqrt(2.0) * std::acosh(c2 + s2 * (t * t + 1 / (t * t)) / 2);
    const auto s = no_lower_bound_sequence(t, 2);
    CHECK(s.d_hilbert == doctest::Approx(want_h).epsilon(1e-6));
    CHECK(s.d_airm == doctest::Approx(want_a).epsilon(1e-7));
    CHECK(no_lower_bound_sequence(t, 4).d_hilbert == doctest::Approx(s.d_hilbert).epsilon(1e-9));
  }
  // d_H decays like 1/sqrt(t) along the sequence.
  const auto s = no_lower_bound_sequence(1e4, 2);
  CHECK(s.d_hilbert == doctest::Approx(0.02).epsilon(1e-3));
  CHECK(std::abs(s.d_airm - no_lower_limit_airm()) < 1e-6);
}

TEST_CASE("report shape and determinism") {
  VerifyConfig cfg;
  cfg.suite = "bounds";
  cfg.dims = {1, 2, 3};
  cfg.trials = 50;
  const auto report = bounds_report(cfg);
  REQUIRE(report.inequalities.size() == 6);
  CHECK(report.sequences.size() == 2);
  CHECK(report.checks.empty());
  CHECK(report.all_pass);
  int unbounded = 0;
  for (const auto& row : report.inequalities) {
    CHECK(row.pass);
    if (!row.bounded) {
      ++unbounded;
      CHECK(row.per_n.front().skipped);
    }
  }
  CHECK(unbounded == 2);

  const std::string a = report_json(report);
  CHECK(a == report_json(bounds_report(cfg)));
  cfg.seed = 43;
  CHECK(a != report_json(bounds_report(cfg)));

  const auto j = nlohmann::json::parse(a);
  for (const char* key : {"inequalities", "sequences", "checks", "config", "all_pass"}) CHECK(j.contains(key));
  CHECK(j["config"]["trials"] == 50);
  CHECK(j["sequences"][0].contains("limit_target"));
}

TEST_CASE("report configuration errors") {
  VerifyConfig cfg;
  cfg.suite = "nope";
  CHECK(kind_of([&] { bounds_report(cfg); }) == ErrorKind::Parse);
  cfg.suite = "all";
  cfg.dims = {};
  CHECK(kind_of([&] { bounds_report(cfg); }) == ErrorKind::Parse);
  cfg.dims = {0};
  CHECK(kind_of([&] { bounds_report(cfg); }) == ErrorKind::Parse);
  cfg.dims = {2};
  cfg.trials = 0;
  CHECK(kind_of([&] { bounds_report(cfg); }) == ErrorKind::Parse);
}

TEST_CASE("suites pass at reduced size") {
  VerifyConfig cfg;
  cfg.dims = {1, 2, 4};
  cfg.trials = 100;
  for (const auto& c : hilbert_checks(cfg)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : barrier_checks(cfg)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : lemma_checks(cfg)) CHECK_MESSAGE(c.pass, c.name);
}
