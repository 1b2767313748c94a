#pragma once

// Executable bounds between the Hilbert distance, the restricted and pushed
// AIRM distances and the barrier norm, the counterexample sequences for the
// two missing bounds, and the property suites behind `spdgeo verify`.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace spdgeo {

/// Slack on every universal inequality, relative to max(1, |rhs|).
constexpr double inequality_tol = 1e-10;
/// Closeness of a tightness witness ratio to its constant.
constexpr double witness_tol = 1e-3;

struct VerifyConfig {
  std::string suite = "all";
  std::vector<int> dims{1, 2, 3, 4, 8};
  int trials = 1000;
  std::uint64_t seed = 42;
};

/// Worst relative margin of one inequality at one dimension.
struct MarginResult {
  int n = 0;
  int trials = 0;
  double worst_margin = 0.0;
  int errors = 0;
  bool skipped = false;
  bool pass = true;
};

struct NormBoundsResult {
  MarginResult upper;  // ||V||^H <= sqrt(2) ||V||^Psi
  MarginResult lower;  // ||V||^Psi <= sqrt(n) ||V||^H
};

/// (1/sqrt(n)) d_AIRM^|| <= d_H.
MarginResult check_lower_airm_restricted(int trials, int n, std::uint64_t seed);
/// d_H <= sqrt(2) d_AIRM^->.
MarginResult check_upper_airm_pushed(int trials, int n, std::uint64_t seed);
NormBoundsResult check_norm_bounds(int trials, int n, std::uint64_t seed);

struct Witness {
  std::string description;
  double parameter = 0.0;
  double ratio = 0.0;
  double target = 0.0;
  bool pass = false;
};

/// X = eps I, Y = c eps I: d_AIRM^|| / d_H -> sqrt(n).
Witness lower_airm_restricted_witness(int n, double eps = 1e-6, double c = 2.0);
/// X = I/2, V = e1 e1^T: ||V||^H / ||V||^Psi = sqrt(2).
Witness upper_norm_witness(int n);
/// X = eps I, V = I: ||V||^Psi / ||V||^H -> sqrt(n).
Witness lower_norm_witness(int n, double eps = 1e-6);

struct SequencePoint {
  double t = 0.0;
  int n = 0;
  double d_airm = 0.0;
  double d_hilbert = 0.0;
};

/// X_t = diag(1 - 2/t, 1/2, ...), Y_t = diag(1 - 1/t, 1/2, ...); d_AIRM^|| -> 0,
/// d_H -> log 2.
SequencePoint no_upper_bound_sequence(double t, int n);
/// P_t = diag(t, 1/t), Q_t = U_t P_t U_t^T with angle 1/t, padded by I/2 after
/// the James map; d_AIRM^-> -> sqrt(2) arccosh(3/2), d_H -> 0.
SequencePoint no_lower_bound_sequence(double t, int n);

/// log 2.
inline double no_upper_limit_hilbert() { return std::log(2.0); }
/// sqrt(2) arccosh(3/2).
inline double no_lower_limit_airm() { return std::sqrt(2.0) * std::acosh(1.5); }

struct CheckRecord {
  std::string suite;
  std::string name;
  std::string measure;  // "max_error" (worst <= tolerance) or "min_margin" (worst >= -tolerance)
  std::vector<int> dims;
  int trials = 0;
  int errors = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool skipped = false;
  bool pass = true;
};

struct InequalityRecord {
  std::string name;
  std::string distance;
  std::string side;      // "upper" or "lower"
  std::string relation;
  bool bounded = true;   // false for the two rows with no constant
  double constant = 0.0; // for unbounded rows: largest ratio observed on the ladder
  std::vector<MarginResult> per_n;
  int trials = 0;
  double worst_margin = 0.0;
  double tolerance = inequality_tol;
  std::vector<Witness> witnesses;
  bool pass = true;
};

struct SequenceRecord {
  std::string name;
  int n = 0;
  double t = 0.0;
  double d_airm = 0.0;
  double d_hilbert = 0.0;
  double airm_limit = 0.0;
  double hilbert_limit = 0.0;
  std::vector<SequencePoint> ladder;
  bool skipped = false;
};

struct BoundsReport {
  std::vector<InequalityRecord> inequalities;
  std::vector<SequenceRecord> sequences;
  std::vector<CheckRecord> checks;
  VerifyConfig config;
  bool all_pass = true;
};

std::vector<CheckRecord> hilbert_checks(const VerifyConfig& config);
std::vector<CheckRecord> barrier_checks(const VerifyConfig& config);
std::vector<CheckRecord> lemma_checks(const VerifyConfig& config);
std::vector<InequalityRecord> inequality_rows(const VerifyConfig& config);
std::vector<SequenceRecord> sequence_records(const VerifyConfig& config);

/// Runs the suites selected by config.suite ("all", "hilbert", "barrier",
/// "bounds", "lemmas").
BoundsReport bounds_report(const VerifyConfig& config);

/// Deterministic JSON text of a report (2-space indent, trailing newline).
std::string report_json(const BoundsReport& report);

namespace detail {

std::uint64_t stream_id(const std::string& name);

/// Runs `trial(index)` for `count` trials; a library error fails the trial and
/// is counted in record.errors.
void run_trials(CheckRecord& record, int count, const std::function<void(int)>& trial);

}  // namespace detail

}  // namespace spdgeo
