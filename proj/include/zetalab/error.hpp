#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zetalab {

enum class ErrorKind {
  pole,
  budget_infeasible,
  near_zero_denominator,
  domain,
  certification_mismatch,
  ordinate_collision,
  newton_escape,
  winding_instability,
  insufficient_coverage,
  not_simple,
  degenerate_beta,
  empty_population,
  nonpositive_parameter,
  config,
  io,
  version_mismatch,
  fingerprint_mismatch,
  corruption,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zetalab
