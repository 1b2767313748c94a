#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spdgeo/bounds.hpp"
#include "spdgeo/random.hpp"

namespace spdgeo::detail {

inline double rel_margin(double lhs, double rhs) {
  return (rhs - lhs) / std::max(1.0, std::abs(rhs));
}

inline double rel_error(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double rel_matrix_error(const Matrix<double>& got, const Matrix<double>& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

inline CheckRecord make_check(const std::string& suite, const std::string& name, const std::string& measure,
                              double tolerance, std::vector<int> dims) {
  CheckRecord r;
  r.suite = suite;
  r.name = name;
  r.measure = measure;
  r.tolerance = tolerance;
  r.dims = std::move(dims);
  r.worst = measure == "min_margin" ? 1.0 : 0.0;
  return r;
}

inline void record_error(CheckRecord& r, double e) { r.worst = std::max(r.worst, e); }
inline void record_margin(CheckRecord& r, double m) { r.worst = std::min(r.worst, m); }

inline void finish(CheckRecord& r) {
  if (r.skipped) {
    r.pass = true;
    return;
  }
  const bool ok = r.measure == "min_margin" ? r.worst >= -r.tolerance : r.worst <= r.tolerance;
  r.pass = ok && r.errors == 0 && std::isfinite(r.worst);
}

inline std::vector<int> dims_at_least(const std::vector<int>& dims, int lo) {
  std::vector<int> out;
  for (int n : dims)
    if (n >= lo) out.push_back(n);
  return out;
}

inline int cycle(const std::vector<int>& dims, int i) { return dims[static_cast<std::size_t>(i) % dims.size()]; }

inline int capped(const VerifyConfig& c, int natural) { return std::max(1, std::min(c.trials, natural)); }

inline Rng trial_rng(const VerifyConfig& c, const std::string& name, int i) {
  return make_rng(c.seed, stream_id(name), static_cast<std::uint64_t>(i));
}

}  // namespace spdgeo::detail
