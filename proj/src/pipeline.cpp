#include "zetalab/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace zetalab {

namespace fs = std::filesystem;

namespace {

using Json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class ReportFile {
 public:
  ReportFile(const std::string& path, const std::string& header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorKind::io, "cannot write " + path);
    out_ << header << '\n';
  }
  template <class... Fields>
  void row(char sep, const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : std::string(1, sep)) << fields, first = false), ...);
    out_ << '\n';
  }
  ~ReportFile() noexcept(false) {
    out_.flush();
    if (!out_ && std::uncaught_exceptions() == 0) throw Error(ErrorKind::io, "write failed: " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
};

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

bool writes(Stage stage, std::initializer_list<Stage> set) {
  for (Stage s : set) {
    if (s == stage) return true;
  }
  return false;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::certification_mismatch:
    case ErrorKind::winding_instability:
    case ErrorKind::newton_escape:
    case ErrorKind::ordinate_collision:
    case ErrorKind::not_simple:
    case ErrorKind::insufficient_coverage:
    case ErrorKind::near_zero_denominator:
      return exit_code::certification;
    case ErrorKind::budget_infeasible:
      return exit_code::infeasible;
    case ErrorKind::io:
    case ErrorKind::version_mismatch:
    case ErrorKind::fingerprint_mismatch:
    case ErrorKind::corruption:
      return exit_code::io;
    default:
      return exit_code::failure;
  }
}

std::string decimal30(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.29e", v);
  return buf;
}

std::string decimal30(const Real& v) { return v.to_string(30); }

void write_zeros_csv(const std::string& path, const std::vector<ZetaZero>& zeros) {
  ReportFile f(path, "index,ordinate,residual,certified");
  for (const auto& z : zeros) f.row(',', z.index, decimal30(z.ordinate), decimal30(z.residual), z.certified ? "true" : "false");
}

void write_dzeros_csv(const std::string& path, const std::vector<DerivZero>& dzeros) {
  ReportFile f(path, "beta,gamma,residual,rect_id");
  for (const auto& d : dzeros) {
    f.row(',', decimal30(d.beta), decimal30(d.gamma), decimal30(d.residual), csv_field(d.rect_id));
  }
}

void write_pairings_csv(const std::string& path, const std::vector<ZeroPairing>& pairings) {
  ReportFile f(path, "gamma_prime,beta_offset,gamma_c,gap,straddle_gap");
  for (const auto& p : pairings) {
    f.row(',', decimal30(p.dzero.gamma), decimal30(p.beta_offset), decimal30(p.gamma_c), decimal30(p.gap),
          p.straddle_gap ? decimal30(*p.straddle_gap) : std::string("inf"));
  }
}

void write_checks_csv(const std::string& path, const std::vector<CheckRecord>& records) {
  ReportFile f(path, "check_name,subject,lhs,rhs,statistic,bound_status");
  for (const auto& r : records) {
    f.row(',', to_string(r.name), csv_field(r.subject), decimal30(r.lhs), decimal30(r.rhs), decimal30(r.statistic),
          to_string(r.status));
  }
}

void write_checks_json(const std::string& path, const RunConfig& config, const std::vector<CheckRecord>& records,
                       const PopulationSummary& s, const Baselines& baselines,
                       const std::vector<std::string>& failures) {
  Json doc;
  doc["config"] = {{"t_max", config.t_max},
                   {"mantissa_bits", config.mantissa_bits},
                   {"target_abs_error", config.target_abs_error},
                   {"rect_sigma_max", config.rect_sigma_max},
                   {"lemma1_half_width", config.lemma1_half_width},
                   {"seed", config.seed},
                   {"fingerprint", hex64(config.fingerprint())}};
  Json recs = Json::array();
  for (const auto& r : records) {
    Json j = {{"check_name", to_string(r.name)},
              {"subject", r.subject},
              {"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"statistic", number(r.statistic)},
              {"bound_status", to_string(r.status)}};
    if (r.tail_estimate) j["tail_estimate"] = number(*r.tail_estimate);
    if (!r.note.empty()) j["note"] = r.note;
    recs.push_back(std::move(j));
  }
  doc["records"] = std::move(recs);

  Json sum;
  sum["pairings"] = s.pairings.size();
  sum["min_gap_log_gamma"] = s.min_gap_log_gamma ? number(*s.min_gap_log_gamma) : Json(nullptr);
  sum["min_offset_loglog"] = s.min_offset_loglog ? number(*s.min_offset_loglog) : Json(nullptr);
  sum["all_beta_prime_right_of_half"] = s.all_right_of_half;
  sum["suspect_multiple_zeros"] = s.suspect_multiple;
  Json res = Json::array();
  for (const auto& [t, v] : s.log_deriv_residuals) res.push_back({{"t", t}, {"sigma", 0.5}, {"residual", number(v)}});
  sum["log_deriv_zero_sum_residual"] = std::move(res);
  Json dens = Json::array();
  for (const auto& [T, d] : s.density) dens.push_back({{"T", T}, {"near_count", d.near_count}, {"far_sum", number(d.far_sum)}});
  sum["zero_density"] = std::move(dens);
  sum["nearest_ordinate"] = {
      {"samples", 20},
      {"max_distance", s.nearest_distance_max ? number(*s.nearest_distance_max) : Json(nullptr)},
      {"max_distance_times_logloglog_T", s.nearest_distance_scaled ? number(*s.nearest_distance_scaled) : Json(nullptr)},
      {"all_within_1", s.nearest_distance_max ? Json(*s.nearest_distance_max <= 1.0) : Json(nullptr)}};
  Json win = Json::array();
  for (const auto& [T, n] : s.short_windows) win.push_back({{"T", T}, {"h", 0.5}, {"count", n}});
  sum["short_windows"] = std::move(win);
  Json mnu = Json::array();
  for (const auto& m : s.m_nu) mnu.push_back({{"nu", m.nu}, {"T", m.T}, {"fraction", m.fraction}});
  sum["m_nu"] = std::move(mnu);
  doc["summary"] = std::move(sum);

  Json base = Json::object();
  for (const auto& [name, value] : baselines.values()) base[std::string(to_string(name))] = number(value);
  base["lagrange_bound"] = 1.0;
  doc["baselines"] = std::move(base);
  doc["failures"] = failures;

  std::ofstream out(path, std::ios::binary);
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::io, "cannot write " + path);
}

void write_plotdata(const std::string& dir, const Population& pop, const PopulationSummary& s) {
  fs::create_directories(dir);
  {
    ReportFile t1(dir + "/thm1_stat.tsv", "gamma_prime\tstatistic");
    ReportFile t2(dir + "/thm2_ratio.tsv", "gamma_prime\tratio");
    ReportFile bo(dir + "/beta_offset.tsv", "gamma_prime\tbeta_offset\tgap");
    for (const auto& p : s.pairings) {
      const std::string g = decimal30(p.dzero.gamma);
      t1.row('\t', g, decimal30(gap_straddle_ratio(p).statistic));
      if (p.beta_offset != 0.0) t2.row('\t', g, decimal30(gap_offset_ratio(p).statistic));
      bo.row('\t', g, decimal30(p.beta_offset), decimal30(p.gap));
    }
  }
  {
    ReportFile lm(dir + "/lm_cumsum.tsv", "T\tsum_beta_offset\tmain_term");
    ReportFile bc(dir + "/berndt_count.tsv", "T\tcount\tmain_term");
    for (double T = 20.0; T <= pop.dzero_cov.hi; T += 10.0) {
      const auto r = lm_cumsum(T, pop.dzeros, pop.dzero_cov);
      lm.row('\t', T, decimal30(r.lhs), decimal30(r.rhs));
      const auto b = berndt_count_check(T, pop.dzeros, pop.dzero_cov);
      bc.row('\t', T, static_cast<int>(b.lhs), decimal30(b.rhs));
    }
  }
  {
    ReportFile mn(dir + "/m_nu.tsv", "nu\tT\tfraction");
    for (const auto& m : s.m_nu) mn.row('\t', decimal30(m.nu), decimal30(m.T), decimal30(m.fraction));
    const double half = 0.5 * pop.dzero_cov.hi;
    if (half >= 50.0) {
      for (int k = -4; k <= 20; ++k) {
        try {
          const auto m = empirical_m_nu(0.5 * k, half, pop.dzeros, pop.dzero_cov);
          mn.row('\t', decimal30(m.nu), decimal30(m.T), decimal30(m.fraction));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::empty_population) throw;
        }
      }
    }
  }
}

int run_pipeline(const RunConfig& config, Stage stage, const std::set<CheckName>& checks, std::ostream& log) {
  int status = exit_code::ok;
  auto fail = [&](const std::exception& e, int code) {
    log << "error: " << e.what() << '\n';
    if (status == exit_code::ok || status == exit_code::regression) status = code;
  };
  try {
    config.validate();
  } catch (const Error& e) {
    fail(e, exit_code_for(e.kind()));
    return status;
  }

  const std::string out = config.report_dir;
  const auto fp = config.fingerprint();
  const auto budget = config.budget();
  ZeroCache cache;
  try {
    fs::create_directories(out);
    config.save(out + "/config.txt");
    if (fs::exists(config.cache_path)) {
      try {
        cache = load_cache(config.cache_path, fp);
        log << "cache: loaded " << cache.zeros.size() << " zeros, " << cache.dzeros.size() << " zeros of zeta'\n";
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::fingerprint_mismatch && e.kind() != ErrorKind::version_mismatch) throw;
        log << "cache: " << e.what() << "; recomputing\n";
        cache = ZeroCache{};
      }
    }
  } catch (const Error& e) {
    fail(e, exit_code_for(e.kind()));
    return status;
  } catch (const fs::filesystem_error& e) {
    fail(e, exit_code::io);
    return status;
  }
  cache.fingerprint = fp;
  cache.mantissa_bits = config.mantissa_bits;
  cache.target_abs_error = config.target_abs_error;

  try {
    if (stage != Stage::dzeros) {
      if (!cache.zero_cov) {
        log << "scan: zeros of zeta on the critical line in (2, " << config.t_max << "]\n";
        cache.zeros = scan_critical_zeros(2.0, config.t_max, budget, config.workers);
        cache.zero_cov = Coverage{2.0, config.t_max};
        save_cache(cache, config.cache_path);
      }
      if (writes(stage, {Stage::scan, Stage::report, Stage::all})) write_zeros_csv(out + "/zeros.csv", cache.zeros);
    }
    if (stage != Stage::scan) {
      if (!cache.dzero_cov) {
        log << "dzeros: zeros of zeta' in [0, " << config.rect_sigma_max << "] x [2, " << config.t_max << "]\n";
        cache.dzeros = census_zeta_prime_zeros(config.rect_sigma_max, config.t_max, budget, config.workers);
        cache.dzero_cov = Coverage{2.0, config.t_max};
        save_cache(cache, config.cache_path);
      }
      if (writes(stage, {Stage::dzeros, Stage::report, Stage::all})) write_dzeros_csv(out + "/dzeros.csv", cache.dzeros);
    }
  } catch (const Error& e) {
    fail(e, exit_code_for(e.kind()));
    return status;
  } catch (const std::exception& e) {
    fail(e, exit_code::io);
    return status;
  }
  if (!writes(stage, {Stage::verify, Stage::report, Stage::all})) return status;

  const Population pop{cache.zeros, *cache.zero_cov, cache.dzeros, *cache.dzero_cov};
  VerifyOptions opt;
  opt.budget = budget;
  opt.half_width = config.lemma1_half_width;
  opt.seed = config.seed;
  opt.workers = config.workers;

  std::vector<CheckRecord> records;
  std::vector<std::string> failures;
  for (CheckName name : all_check_names()) {
    if (!checks.empty() && checks.count(name) == 0) continue;
    opt.selected = {name};
    try {
      auto part = run_checks(pop, opt, nullptr);
      records.insert(records.end(), part.begin(), part.end());
    } catch (const Error& e) {
      failures.push_back(std::string(to_string(name)) + ": " + e.what());
      fail(e, exit_code_for(e.kind()));
    }
  }
  PopulationSummary summary;
  try {
    summary = summarize(pop, opt);
  } catch (const Error& e) {
    failures.push_back(std::string("summary: ") + e.what());
    fail(e, exit_code_for(e.kind()));
  }

  // report compares against the stored baselines without establishing new ones.
  Baselines scratch = cache.baselines;
  Baselines& baselines = stage == Stage::report ? scratch : cache.baselines;
  const bool regression = baselines.apply(records);

  try {
    if (stage != Stage::report) save_cache(cache, config.cache_path);
    write_checks_csv(out + "/checks.csv", records);
    write_checks_json(out + "/checks.json", config, records, summary, baselines, failures);
    if (stage != Stage::verify) {
      write_pairings_csv(out + "/pairings.csv", summary.pairings);
      write_plotdata(out + "/plotdata", pop, summary);
    }
  } catch (const Error& e) {
    fail(e, exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    fail(e, exit_code::io);
  }

  int extremes = 0;
  for (const auto& r : records) extremes += r.status == BoundStatus::new_extreme ? 1 : 0;
  log << "verify: " << records.size() << " records, " << extremes << " new extremes, " << failures.size()
      << " failed checks\n";
  if (regression && status == exit_code::ok) status = exit_code::regression;
  return status;
}

}  // namespace zetalab
