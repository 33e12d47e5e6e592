#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "zetalab/pipeline.hpp"

using namespace zetalab;
namespace fs = std::filesystem;

namespace {

const PrecisionBudget kBudget{128, 1e-30, 32};

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("zetalab_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int lines(const std::string& path) {
  const std::string s = slurp(path);
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

template <class F>
ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::config;
}

const ZeroCache& sample_cache() {
  static const ZeroCache cache = [] {
    ZeroCache c;
    c.fingerprint = 0x1234;
    c.zeros = scan_critical_zeros(2.0, 100.0, kBudget);
    c.zero_cov = Coverage{2.0, 100.0};
    c.dzeros = census_zeta_prime_zeros(3.0, 100.0, kBudget);
    c.dzero_cov = Coverage{2.0, 100.0};
    c.baselines.set(CheckName::thm2_ratio, 1.25);
    return c;
  }();
  return cache;
}

RunConfig config_in(const TempDir& dir, double t_max) {
  RunConfig c;
  c.t_max = t_max;
  c.cache_path = dir / "zeros.cache";
  c.report_dir = dir / "report";
  return c;
}

}  // namespace

TEST_CASE("config text round-trip and validation") {
  RunConfig c;
  c.t_max = 123.5;
  c.mantissa_bits = 168;
  c.target_abs_error = 1e-45;
  c.workers = 3;
  c.cache_path = "/tmp/a b.cache";
  c.seed = 99;
  const RunConfig back = RunConfig::from_text(c.to_text());
  CHECK(back.to_text() == c.to_text());
  CHECK(back.fingerprint() == c.fingerprint());
  CHECK(back.target_abs_error == c.target_abs_error);

  CHECK(RunConfig::from_text("# only a comment\n\nt_max = 50\n").t_max == 50.0);
  CHECK(RunConfig::from_text("").to_text() == RunConfig{}.to_text());
  CHECK(kind_of([] { RunConfig::from_text("colour=blue\n"); }) == ErrorKind::config);
  CHECK(kind_of([] { RunConfig::from_text("t_max=ten\n"); }) == ErrorKind::config);
  CHECK(kind_of([] { RunConfig::from_text("t_max\n"); }) == ErrorKind::config);

  RunConfig big;
  big.t_max = 1e5;
  CHECK(kind_of([&] { big.validate(); }) == ErrorKind::budget_infeasible);
  RunConfig tight;
  tight.target_abs_error = 1e-60;
  CHECK(kind_of([&] { tight.validate(); }) == ErrorKind::budget_infeasible);
  RunConfig idle;
  idle.workers = 0;
  CHECK(kind_of([&] { idle.validate(); }) == ErrorKind::config);
  RunConfig wide;
  wide.rect_sigma_max = 4.0;
  CHECK(kind_of([&] { wide.validate(); }) == ErrorKind::config);
  CHECK_NOTHROW(RunConfig{}.validate());
}

TEST_CASE("fingerprint covers the population-defining fields only") {
  const RunConfig base;
  RunConfig other = base;
  other.workers = 4;
  other.report_dir = "elsewhere";
  CHECK(other.fingerprint() == base.fingerprint());
  other.t_max = 101.0;
  CHECK(other.fingerprint() != base.fingerprint());
  RunConfig seeded = base;
  seeded.seed = 2;
  CHECK(seeded.fingerprint() != base.fingerprint());
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("cache round-trip") {
  ZeroCache empty;
  const ZeroCache back = decode_cache(encode_cache(empty));
  CHECK(back.zeros.empty());
  CHECK(back.dzeros.empty());
  CHECK_FALSE(back.zero_cov.has_value());
  CHECK(encode_cache(back) == encode_cache(empty));

  const ZeroCache& c = sample_cache();
  REQUIRE(c.zeros.size() == 29);
  const ZeroCache loaded = decode_cache(encode_cache(c), 0x1234);
  REQUIRE(loaded.zeros.size() == c.zeros.size());
  REQUIRE(loaded.dzeros.size() == c.dzeros.size());
  for (size_t i = 0; i < c.zeros.size(); ++i) {
    CHECK(loaded.zeros[i].index == c.zeros[i].index);
    CHECK(loaded.zeros[i].ordinate.precision() == c.zeros[i].ordinate.precision());
    CHECK(loaded.zeros[i].ordinate == c.zeros[i].ordinate);
    CHECK(loaded.zeros[i].residual == c.zeros[i].residual);
    CHECK(loaded.zeros[i].certified == c.zeros[i].certified);
  }
  for (size_t i = 0; i < c.dzeros.size(); ++i) {
    CHECK(loaded.dzeros[i].beta == c.dzeros[i].beta);
    CHECK(loaded.dzeros[i].gamma == c.dzeros[i].gamma);
    CHECK(loaded.dzeros[i].rect_id == c.dzeros[i].rect_id);
  }
  CHECK(loaded.baselines.get(CheckName::thm2_ratio).value() == 1.25);
  CHECK(loaded.zero_cov->hi == 100.0);

  TempDir dir("cache");
  save_cache(c, dir / "z.cache");
  CHECK(encode_cache(load_cache(dir / "z.cache")) == encode_cache(c));
  CHECK_FALSE(fs::exists(dir / "z.cache.tmp"));
}

TEST_CASE("cache damage is detected") {
  const std::string text = encode_cache(sample_cache());
  CHECK(kind_of([&] { decode_cache(text.substr(0, text.size() / 2)); }) == ErrorKind::corruption);
  CHECK(kind_of([&] { decode_cache(text.substr(0, text.size() - 1)); }) == ErrorKind::corruption);
  std::string flipped = text;
  flipped[text.find("Z 3") + 9] ^= 1;
  CHECK(kind_of([&] { decode_cache(flipped); }) == ErrorKind::corruption);
  CHECK(kind_of([] { decode_cache("hello\n"); }) == ErrorKind::corruption);

  std::string future = text;
  future.replace(0, text.find('\n'), "zetalab-cache 2");
  CHECK(kind_of([&] { decode_cache(future); }) == ErrorKind::version_mismatch);
  CHECK(kind_of([&] { decode_cache(text, 0x9999); }) == ErrorKind::fingerprint_mismatch);

  TempDir dir("damage");
  {
    std::ofstream out(dir / "cut.cache", std::ios::binary);
    out << text.substr(0, 700);
  }
  CHECK(kind_of([&] { load_cache(dir / "cut.cache"); }) == ErrorKind::corruption);
  CHECK(kind_of([&] { load_cache(dir / "missing.cache"); }) == ErrorKind::io);
}

TEST_CASE("decimal output at 30 significant digits") {
  CHECK(decimal30(0.5) == "5.00000000000000000000000000000e-01");
  PrecisionScope scope(128);
  CHECK(decimal30(Real::parse("14.134725141734693790457251983562470270784")) == "1.41347251417346937904572519836e+01");
}

TEST_CASE("pipeline at t_max = 100") {
  TempDir dir("pipeline");
  const RunConfig config = config_in(dir, 100.0);
  std::ostringstream log;
  CHECK(run_pipeline(config, Stage::all, {}, log) == exit_code::ok);
  const std::string rep = config.report_dir;
  for (const char* f : {"zeros.csv", "dzeros.csv", "pairings.csv", "checks.csv", "checks.json", "config.txt"}) {
    CHECK(fs::exists(rep + "/" + f));
  }
  for (const char* f : {"thm2_ratio.tsv", "lm_cumsum.tsv", "m_nu.tsv"}) CHECK(fs::exists(rep + "/plotdata/" + f));
  CHECK(lines(rep + "/zeros.csv") == 1 + 29);
  CHECK(lines(rep + "/dzeros.csv") == 1 + 19);
  CHECK(slurp(rep + "/zeros.csv").rfind("index,ordinate,residual,certified\n", 0) == 0);
  CHECK(slurp(rep + "/checks.csv").rfind("check_name,subject,lhs,rhs,statistic,bound_status\n", 0) == 0);
  CHECK(slurp(rep + "/checks.csv").find("new_extreme") == std::string::npos);
  CHECK(RunConfig::load(rep + "/config.txt").fingerprint() == config.fingerprint());

  std::map<std::string, std::string> first;
  for (const auto& e : fs::recursive_directory_iterator(rep)) {
    if (e.is_regular_file()) first[e.path().string()] = slurp(e.path().string());
  }
  std::ostringstream warm;
  CHECK(run_pipeline(config, Stage::all, {}, warm) == exit_code::ok);
  CHECK(warm.str().find("cache: loaded 29 zeros") != std::string::npos);
  for (const auto& [path, bytes] : first) CHECK(slurp(path) == bytes);

  // A lowered baseline turns the same records into a regression.
  ZeroCache c = load_cache(config.cache_path, config.fingerprint());
  c.baselines.set(CheckName::thm2_ratio, 0.01);
  save_cache(c, config.cache_path);
  std::ostringstream reg;
  CHECK(run_pipeline(config, Stage::verify, {CheckName::thm2_ratio}, reg) == exit_code::regression);
  CHECK(slurp(rep + "/checks.csv").find("thm2_ratio") != std::string::npos);
  CHECK(slurp(rep + "/checks.csv").find("new_extreme") != std::string::npos);
  CHECK(slurp(rep + "/checks.csv").find("lemma1_sum") == std::string::npos);
  CHECK(load_cache(config.cache_path).baselines.get(CheckName::thm2_ratio).value() == 0.01);
}

TEST_CASE("pipeline rejects heights above the cap before computing") {
  TempDir dir("cap");
  const RunConfig config = config_in(dir, 1e5);
  std::ostringstream log;
  CHECK(run_pipeline(config, Stage::all, {}, log) == exit_code::infeasible);
  CHECK_FALSE(fs::exists(config.report_dir));
  CHECK_FALSE(fs::exists(config.cache_path));
}

TEST_CASE("pipeline refuses a damaged cache and recomputes a foreign one") {
  TempDir dir("foreign");
  RunConfig config = config_in(dir, 30.0);
  std::ostringstream log;
  REQUIRE(run_pipeline(config, Stage::scan, {}, log) == exit_code::ok);
  CHECK(lines(config.report_dir + "/zeros.csv") == 1 + 3);
  CHECK_FALSE(fs::exists(config.report_dir + "/checks.csv"));

  config.t_max = 40.0;
  std::ostringstream foreign;
  CHECK(run_pipeline(config, Stage::scan, {}, foreign) == exit_code::ok);
  CHECK(foreign.str().find("recomputing") != std::string::npos);
  CHECK(lines(config.report_dir + "/zeros.csv") == 1 + 6);

  const std::string text = slurp(config.cache_path);
  {
    std::ofstream out(config.cache_path, std::ios::binary);
    out << text.substr(0, text.size() - 10);
  }
  std::ostringstream damaged;
  CHECK(run_pipeline(config, Stage::scan, {}, damaged) == exit_code::io);
  CHECK(damaged.str().find("corruption") != std::string::npos);
}
