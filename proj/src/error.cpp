#include "zetalab/error.hpp"

namespace zetalab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::pole: return "pole";
    case ErrorKind::budget_infeasible: return "budget-infeasible";
    case ErrorKind::near_zero_denominator: return "near-zero-denominator";
    case ErrorKind::domain: return "domain";
    case ErrorKind::certification_mismatch: return "certification-mismatch";
    case ErrorKind::ordinate_collision: return "ordinate-collision";
    case ErrorKind::newton_escape: return "newton-escape";
    case ErrorKind::winding_instability: return "winding-instability";
    case ErrorKind::insufficient_coverage: return "insufficient-coverage";
    case ErrorKind::not_simple: return "not-simple";
    case ErrorKind::degenerate_beta: return "degenerate-beta";
    case ErrorKind::empty_population: return "empty-population";
    case ErrorKind::nonpositive_parameter: return "nonpositive-parameter";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    case ErrorKind::version_mismatch: return "version-mismatch";
    case ErrorKind::fingerprint_mismatch: return "fingerprint-mismatch";
    case ErrorKind::corruption: return "corruption";
  }
  return "unknown";
}

}  // namespace zetalab
