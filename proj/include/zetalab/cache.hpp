// Persistent zero cache. Text format, one record per line:
//
//   zetalab-cache 1
//   fingerprint <hex>
//   precision <bits> <target>
//   zeros <lo> <hi> | zeros none
//   dzeros <lo> <hi> | dzeros none
//   Z <index> <ordinate> <residual> <certified> <suspect_multiple>
//   D <beta> <gamma> <residual> <rect_id>
//   footer zeros=<n> dzeros=<n> certified=<n>
//   baseline <check_name> <value>
//   checksum <fnv1a of every preceding byte>
//
// Reals are written as p<bits>:<decimal> and restored exactly.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/verify.hpp"

namespace zetalab {

inline constexpr int kCacheVersion = 1;

struct ZeroCache {
  std::uint64_t fingerprint = 0;
  int mantissa_bits = 128;
  double target_abs_error = 1e-30;
  std::optional<Coverage> zero_cov;
  std::vector<ZetaZero> zeros;
  std::optional<Coverage> dzero_cov;
  std::vector<DerivZero> dzeros;
  Baselines baselines;
};

std::string encode_cache(const ZeroCache& cache);
/// Throws version_mismatch, corruption (checksum, truncation, malformed rows)
/// or, when `expected` is given and differs, fingerprint_mismatch.
ZeroCache decode_cache(const std::string& text, std::optional<std::uint64_t> expected = std::nullopt);

/// Writes through a temporary file and renames it into place.
void save_cache(const ZeroCache& cache, const std::string& path);
ZeroCache load_cache(const std::string& path, std::optional<std::uint64_t> expected = std::nullopt);

std::string encode_real(const Real& x);
Real decode_real(const std::string& text);

}  // namespace zetalab
