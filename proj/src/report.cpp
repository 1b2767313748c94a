#include <json.hpp>

#include "spdgeo/bounds.hpp"
#include "spdgeo/errors.hpp"

namespace spdgeo {

using nlohmann::ordered_json;

BoundsReport bounds_report(const VerifyConfig& config) {
  const std::string& s = config.suite;
  if (s != "all" && s != "hilbert" && s != "barrier" && s != "bounds" && s != "lemmas") {
    throw Error(ErrorKind::Parse, "unknown suite '" + s + "'");
  }
  if (config.dims.empty()) throw Error(ErrorKind::Parse, "dimension list is empty");
  for (int n : config.dims) {
    if (n < 1) throw Error(ErrorKind::Parse, "dimension " + std::to_string(n) + " must be >= 1");
  }
  if (config.trials < 1) throw Error(ErrorKind::Parse, "trials must be >= 1");

  BoundsReport report;
  report.config = config;
  const bool all = s == "all";
  if (all || s == "bounds") {
    report.inequalities = inequality_rows(config);
    report.sequences = sequence_records(config);
  }
  auto append = [&](std::vector<CheckRecord> checks) {
    for (auto& c : checks) report.checks.push_back(std::move(c));
  };
  if (all || s == "hilbert") append(hilbert_checks(config));
  if (all || s == "barrier") append(barrier_checks(config));
  if (all || s == "lemmas") append(lemma_checks(config));

  for (const auto& row : report.inequalities) report.all_pass = report.all_pass && row.pass;
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

namespace {

ordered_json to_json(const MarginResult& m) {
  ordered_json j;
  j["n"] = m.n;
  if (m.skipped) {
    j["skipped"] = true;
    return j;
  }
  j["trials"] = m.trials;
  j["worst_margin"] = m.worst_margin;
  j["errors"] = m.errors;
  j["pass"] = m.pass;
  return j;
}

ordered_json to_json(const Witness& w) {
  return {{"description", w.description}, {"parameter", w.parameter}, {"ratio", w.ratio},
          {"target", w.target},           {"tolerance", witness_tol}, {"pass", w.pass}};
}

ordered_json to_json(const InequalityRecord& r) {
  ordered_json j;
  j["name"] = r.name;
  j["distance"] = r.distance;
  j["side"] = r.side;
  j["relation"] = r.relation;
  j["bound"] = r.bounded ? "constant" : "none";
  j["constant"] = r.constant;
  std::vector<int> dims;
  for (const auto& m : r.per_n) dims.push_back(m.n);
  j["dims"] = dims;
  j["trials"] = r.trials;
  j["worst_margin"] = r.worst_margin;
  j["tolerance"] = r.bounded ? r.tolerance : 0.0;
  ordered_json per = ordered_json::array();
  for (const auto& m : r.per_n) per.push_back(to_json(m));
  j["per_n"] = per;
  ordered_json wit = ordered_json::array();
  for (const auto& w : r.witnesses) wit.push_back(to_json(w));
  j["witnesses"] = wit;
  j["pass"] = r.pass;
  return j;
}

ordered_json to_json(const SequencePoint& p) {
  return {{"t", p.t}, {"d_airm", p.d_airm}, {"d_hilbert", p.d_hilbert}};
}

ordered_json to_json(const SequenceRecord& r) {
  ordered_json j;
  j["name"] = r.name;
  if (r.skipped) {
    j["skipped"] = true;
    return j;
  }
  j["n"] = r.n;
  j["t"] = r.t;
  j["d_airm_value"] = r.d_airm;
  j["d_hilbert_value"] = r.d_hilbert;
  j["limit_target"] = {{"d_airm", r.airm_limit}, {"d_hilbert", r.hilbert_limit}};
  ordered_json lad = ordered_json::array();
  for (const auto& p : r.ladder) lad.push_back(to_json(p));
  j["ladder"] = lad;
  return j;
}

ordered_json to_json(const CheckRecord& c) {
  ordered_json j;
  j["suite"] = c.suite;
  j["name"] = c.name;
  if (c.skipped) {
    j["skipped"] = true;
    j["pass"] = true;
    return j;
  }
  j["dims"] = c.dims;
  j["trials"] = c.trials;
  j["measure"] = c.measure;
  j["worst"] = c.worst;
  j["tolerance"] = c.tolerance;
  j["errors"] = c.errors;
  j["pass"] = c.pass;
  return j;
}

}  // namespace

std::string report_json(const BoundsReport& report) {
  ordered_json j;
  ordered_json ineq = ordered_json::array();
  for (const auto& r : report.inequalities) ineq.push_back(to_json(r));
  ordered_json seq = ordered_json::array();
  for (const auto& r : report.sequences) seq.push_back(to_json(r));
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  j["inequalities"] = ineq;
  j["sequences"] = seq;
  j["checks"] = checks;
  j["config"] = {{"suite", report.config.suite},
                 {"n", report.config.dims},
                 {"trials", report.config.trials},
                 {"seed", report.config.seed}};
  j["all_pass"] = report.all_pass;
  return j.dump(2) + "\n";
}

}  // namespace spdgeo
