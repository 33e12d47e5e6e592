// Run configuration: key=value text with defaults, validation and a
// fingerprint over the fields that determine the cached populations.

#pragma once

#include <cstdint>
#include <string>

#include "zetalab/numerics.hpp"

namespace zetalab {

/// Largest height the pipeline accepts.
inline constexpr double kMaxHeight = 1e4;

struct RunConfig {
  double t_max = 100.0;
  int mantissa_bits = 128;
  double target_abs_error = 1e-30;
  double rect_sigma_max = 3.0;
  double lemma1_half_width = 50.0;
  int workers = 1;
  std::string cache_path = "zetalab.cache";
  std::string report_dir = "report";
  unsigned long long seed = 1;

  /// Throws budget_infeasible for t_max above the desk-scale cap or an
  /// unreachable target, config for anything else out of range.
  void validate() const;
  PrecisionBudget budget() const { return PrecisionBudget{mantissa_bits, target_abs_error, 32}; }

  std::string to_text() const;
  /// Missing keys keep their defaults. Unknown keys and malformed values throw config.
  static RunConfig from_text(const std::string& text);
  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;

  /// FNV-1a over t_max, bits, target, sigma_max, half_width and seed.
  std::uint64_t fingerprint() const;
};

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t hash = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace zetalab
