#include "zetalab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace zetalab {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw Error(ErrorKind::config, "bad value for " + key + ": '" + value + "'");
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(ErrorKind::config, "t_max must be positive");
  if (t_max > kMaxHeight) {
    throw Error(ErrorKind::budget_infeasible, "t_max " + num(t_max) + " exceeds the desk-scale cap " + num(kMaxHeight));
  }
  if (t_max < 10.0) throw Error(ErrorKind::config, "t_max must be at least 10");
  if (mantissa_bits <= 0 || !(target_abs_error > 0.0)) {
    throw Error(ErrorKind::config, "bits and eps must be positive");
  }
  try {
    budget().validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::budget_infeasible, e.what());
  }
  if (!(rect_sigma_max > 1.0 && rect_sigma_max <= 3.0)) throw Error(ErrorKind::config, "sigma_max must lie in (1, 3]");
  if (!(lemma1_half_width >= 50.0)) throw Error(ErrorKind::config, "lemma1_half_width must be at least 50");
  if (workers <= 0) throw Error(ErrorKind::config, "workers must be positive");
  if (seed == 0) throw Error(ErrorKind::config, "seed must be positive");
  if (cache_path.empty() || report_dir.empty()) throw Error(ErrorKind::config, "paths must be non-empty");
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  out << "t_max=" << num(t_max) << '\n'
      << "mantissa_bits=" << mantissa_bits << '\n'
      << "target_abs_error=" << num(target_abs_error) << '\n'
      << "rect_sigma_max=" << num(rect_sigma_max) << '\n'
      << "lemma1_half_width=" << num(lemma1_half_width) << '\n'
      << "workers=" << workers << '\n'
      << "cache_path=" << cache_path << '\n'
      << "report_dir=" << report_dir << '\n'
      << "seed=" << seed << '\n';
  return out.str();
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::config, "line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "t_max") c.t_max = parse_number<double>(key, value);
    else if (key == "mantissa_bits") c.mantissa_bits = parse_number<int>(key, value);
    else if (key == "target_abs_error") c.target_abs_error = parse_number<double>(key, value);
    else if (key == "rect_sigma_max") c.rect_sigma_max = parse_number<double>(key, value);
    else if (key == "lemma1_half_width") c.lemma1_half_width = parse_number<double>(key, value);
    else if (key == "workers") c.workers = parse_number<int>(key, value);
    else if (key == "cache_path") c.cache_path = value;
    else if (key == "report_dir") c.report_dir = value;
    else if (key == "seed") c.seed = parse_number<unsigned long long>(key, value);
    else throw Error(ErrorKind::config, "unknown key '" + key + "'");
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  out << to_text();
  if (!out) throw Error(ErrorKind::io, "cannot write " + path);
}

std::uint64_t RunConfig::fingerprint() const {
  const std::string key = "t_max=" + num(t_max) + ";bits=" + std::to_string(mantissa_bits) +
                          ";eps=" + num(target_abs_error) + ";sigma_max=" + num(rect_sigma_max) +
                          ";half_width=" + num(lemma1_half_width) + ";seed=" + std::to_string(seed);
  return fnv1a(key);
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t hash) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace zetalab
