#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "zetalab/pipeline.hpp"

using namespace zetalab;

int main(int argc, char** argv) {
  CLI::App app{"zetalab: zeros of zeta and zeta' and checks over them"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string config_file;
  app.add_option("--config", config_file, "key=value file; command-line flags override it")->check(CLI::ExistingFile);
  auto* t_max = app.add_option("--t-max", "largest height");
  auto* sigma = app.add_option("--sigma-max", "right edge of the zeta' search strip");
  auto* bits = app.add_option("--bits", "mantissa bits");
  auto* eps = app.add_option("--eps", "absolute error target");
  auto* workers = app.add_option("--workers", "worker threads");
  auto* cache = app.add_option("--cache", "zero cache path");
  auto* out = app.add_option("--out", "report directory");
  auto* seed = app.add_option("--seed", "seed for randomized checks");
  auto* half_width = app.add_option("--half-width", "window half-width for the zeta' sums");

  std::string check_list = "all";
  std::map<CLI::App*, Stage> stages;
  stages[app.add_subcommand("scan", "zeros of zeta on the critical line")] = Stage::scan;
  stages[app.add_subcommand("dzeros", "zeros of zeta' in the strip")] = Stage::dzeros;
  auto* verify = app.add_subcommand("verify", "run checks and update baselines");
  verify->add_option("--checks", check_list, "comma-separated check names or 'all'");
  stages[verify] = Stage::verify;
  stages[app.add_subcommand("report", "write every report against stored baselines")] = Stage::report;
  stages[app.add_subcommand("all", "scan, dzeros, verify and report")] = Stage::all;

  CLI11_PARSE(app, argc, argv);

  std::set<CheckName> checks;
  try {
    if (!config_file.empty()) config = RunConfig::load(config_file);
    if (*t_max) config.t_max = t_max->as<double>();
    if (*sigma) config.rect_sigma_max = sigma->as<double>();
    if (*bits) config.mantissa_bits = bits->as<int>();
    if (*eps) config.target_abs_error = eps->as<double>();
    if (*workers) config.workers = workers->as<int>();
    if (*cache) config.cache_path = cache->as<std::string>();
    if (*out) config.report_dir = out->as<std::string>();
    if (*seed) config.seed = seed->as<unsigned long long>();
    if (*half_width) config.lemma1_half_width = half_width->as<double>();
    if (check_list != "all") {
      std::stringstream ss(check_list);
      std::string name;
      while (std::getline(ss, name, ',')) {
        if (!name.empty()) checks.insert(parse_check_name(name));
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const CLI::ConversionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::failure;
  }

  for (const auto& [sub, stage] : stages) {
    if (sub->parsed()) return run_pipeline(config, stage, checks, std::cerr);
  }
  return exit_code::failure;
}
