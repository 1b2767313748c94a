#pragma once

#include <stdexcept>
#include <string>

namespace spdgeo {

enum class ErrorKind {
  NonFinite,
  NoConvergence,
  Domain,
  Dimension,
  DegenerateDirection,
  DegenerateGeodesic,
  IllConditioned,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::DegenerateGeodesic: return "DegenerateGeodesic";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

/// Single exception type for the library; `kind()` carries the category the
/// CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spdgeo
