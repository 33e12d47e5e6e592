// Orchestration: scan, census, pairing, checks and report emission.
//
// Report files (UTF-8, LF, header row first):
//   zeros.csv     index,ordinate,residual,certified
//   dzeros.csv    beta,gamma,residual,rect_id
//   pairings.csv  gamma_prime,beta_offset,gamma_c,gap,straddle_gap
//   checks.csv    check_name,subject,lhs,rhs,statistic,bound_status
//   checks.json   config, records, population summary, baselines
//   plotdata/*.tsv
// Decimals are rounded to nearest at 30 significant digits.

#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "zetalab/cache.hpp"
#include "zetalab/config.hpp"

namespace zetalab {

enum class Stage { scan, dzeros, verify, report, all };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int certification = 2;
inline constexpr int regression = 3;
inline constexpr int infeasible = 4;
inline constexpr int io = 5;
}  // namespace exit_code

int exit_code_for(ErrorKind kind);

std::string decimal30(double v);
std::string decimal30(const Real& v);

void write_zeros_csv(const std::string& path, const std::vector<ZetaZero>& zeros);
void write_dzeros_csv(const std::string& path, const std::vector<DerivZero>& dzeros);
void write_pairings_csv(const std::string& path, const std::vector<ZeroPairing>& pairings);
void write_checks_csv(const std::string& path, const std::vector<CheckRecord>& records);
void write_checks_json(const std::string& path, const RunConfig& config, const std::vector<CheckRecord>& records,
                       const PopulationSummary& summary, const Baselines& baselines,
                       const std::vector<std::string>& failures);
void write_plotdata(const std::string& dir, const Population& pop, const PopulationSummary& summary);

/// Runs `stage` and returns the process exit status. Progress and errors go
/// to `log`. Reports computed before a failure are still written.
int run_pipeline(const RunConfig& config, Stage stage, const std::set<CheckName>& checks, std::ostream& log);

}  // namespace zetalab
