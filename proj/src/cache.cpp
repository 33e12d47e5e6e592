#include "zetalab/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zetalab/config.hpp"

namespace zetalab {

namespace {

const std::string kMagic = "zetalab-cache";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorKind::corruption, what); }

double to_double(const std::string& s) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) corrupt("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    corrupt("bad number '" + s + "'");
  }
}

int to_int(const std::string& s) {
  try {
    size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) corrupt("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    corrupt("bad integer '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string coverage_line(const char* key, const std::optional<Coverage>& c) {
  return std::string(key) + (c ? " " + num(c->lo) + " " + num(c->hi) : std::string(" none")) + "\n";
}

std::optional<Coverage> parse_coverage(const std::vector<std::string>& w, const char* key) {
  if (w.empty() || w[0] != key) corrupt(std::string("expected ") + key + " line");
  if (w.size() == 2 && w[1] == "none") return std::nullopt;
  if (w.size() != 3) corrupt(std::string("malformed ") + key + " line");
  return Coverage{to_double(w[1]), to_double(w[2])};
}

}  // namespace

std::string encode_real(const Real& x) { return "p" + std::to_string(x.precision()) + ":" + x.to_exact_string(); }

Real decode_real(const std::string& text) {
  const auto colon = text.find(':');
  if (text.size() < 4 || text[0] != 'p' || colon == std::string::npos) corrupt("bad real '" + text + "'");
  const int bits = to_int(text.substr(1, colon - 1));
  if (bits < 2 || bits > (1 << 20)) corrupt("bad precision in '" + text + "'");
  PrecisionScope scope(bits);
  try {
    return Real::parse(text.substr(colon + 1));
  } catch (const std::invalid_argument&) {
    corrupt("bad real '" + text + "'");
  }
}

std::string encode_cache(const ZeroCache& c) {
  std::ostringstream out;
  out << kMagic << ' ' << kCacheVersion << '\n'
      << "fingerprint " << hex64(c.fingerprint) << '\n'
      << "precision " << c.mantissa_bits << ' ' << num(c.target_abs_error) << '\n'
      << coverage_line("zeros", c.zero_cov) << coverage_line("dzeros", c.dzero_cov);
  int certified = 0;
  for (const auto& z : c.zeros) {
    out << "Z " << z.index << ' ' << encode_real(z.ordinate) << ' ' << num(z.residual) << ' ' << (z.certified ? 1 : 0)
        << ' ' << (z.suspect_multiple ? 1 : 0) << '\n';
    certified += z.certified ? 1 : 0;
  }
  for (const auto& d : c.dzeros) {
    out << "D " << encode_real(d.beta) << ' ' << encode_real(d.gamma) << ' ' << num(d.residual) << ' '
        << (d.rect_id.empty() ? "-" : d.rect_id) << '\n';
  }
  out << "footer zeros=" << c.zeros.size() << " dzeros=" << c.dzeros.size() << " certified=" << certified << '\n';
  for (const auto& [name, value] : c.baselines.values()) out << "baseline " << to_string(name) << ' ' << num(value) << '\n';
  std::string body = out.str();
  return body + "checksum " + hex64(fnv1a(body)) + "\n";
}

ZeroCache decode_cache(const std::string& text, std::optional<std::uint64_t> expected) {
  const auto first_nl = text.find('\n');
  const std::string first = text.substr(0, first_nl);
  if (first.rfind(kMagic + " ", 0) != 0) corrupt("not a zero cache");
  if (first != kMagic + " " + std::to_string(kCacheVersion)) {
    throw Error(ErrorKind::version_mismatch, "cache format '" + first + "', expected version " +
                                                 std::to_string(kCacheVersion));
  }
  if (text.empty() || text.back() != '\n') corrupt("truncated cache");
  const auto last_start = text.rfind('\n', text.size() - 2);
  if (last_start == std::string::npos) corrupt("truncated cache");
  const std::string body = text.substr(0, last_start + 1);
  const std::string last = text.substr(last_start + 1, text.size() - last_start - 2);
  if (last != "checksum " + hex64(fnv1a(body))) corrupt("checksum mismatch");

  std::istringstream in(body);
  std::string line;
  std::getline(in, line);
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) corrupt(std::string("missing ") + what);
    return split(line);
  };

  ZeroCache c;
  auto w = next("fingerprint");
  if (w.size() != 2 || w[0] != "fingerprint") corrupt("malformed fingerprint line");
  try {
    c.fingerprint = std::stoull(w[1], nullptr, 16);
  } catch (const std::logic_error&) {
    corrupt("malformed fingerprint");
  }
  w = next("precision");
  if (w.size() != 3 || w[0] != "precision") corrupt("malformed precision line");
  c.mantissa_bits = to_int(w[1]);
  c.target_abs_error = to_double(w[2]);
  c.zero_cov = parse_coverage(next("zeros"), "zeros");
  c.dzero_cov = parse_coverage(next("dzeros"), "dzeros");

  bool footer = false;
  while (std::getline(in, line)) {
    w = split(line);
    if (w.empty()) corrupt("blank line");
    if (w[0] == "Z" && !footer) {
      if (w.size() != 6) corrupt("malformed Z row");
      c.zeros.push_back(ZetaZero{to_int(w[1]), decode_real(w[2]), to_double(w[3]), w[4] == "1", w[5] == "1"});
    } else if (w[0] == "D" && !footer) {
      if (w.size() != 5) corrupt("malformed D row");
      c.dzeros.push_back(DerivZero{decode_real(w[1]), decode_real(w[2]), to_double(w[3]), w[4] == "-" ? "" : w[4]});
    } else if (w[0] == "footer" && !footer) {
      footer = true;
      int certified = 0;
      for (const auto& z : c.zeros) certified += z.certified ? 1 : 0;
      const std::string want = "footer zeros=" + std::to_string(c.zeros.size()) +
                               " dzeros=" + std::to_string(c.dzeros.size()) + " certified=" + std::to_string(certified);
      if (line != want) corrupt("footer does not match the rows");
    } else if (w[0] == "baseline" && footer) {
      if (w.size() != 3) corrupt("malformed baseline row");
      try {
        c.baselines.set(parse_check_name(w[1]), to_double(w[2]));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::config) corrupt(e.what());
        throw;
      }
    } else {
      corrupt("unexpected line '" + line + "'");
    }
  }
  if (!footer) corrupt("missing footer");
  if (expected && *expected != c.fingerprint) {
    throw Error(ErrorKind::fingerprint_mismatch,
                "cache was built for fingerprint " + hex64(c.fingerprint) + ", config has " + hex64(*expected));
  }
  return c;
}

void save_cache(const ZeroCache& cache, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << encode_cache(cache);
    if (!out) throw Error(ErrorKind::io, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::io, "cannot replace " + path + ": " + ec.message());
}

ZeroCache load_cache(const std::string& path, std::optional<std::uint64_t> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_cache(buf.str(), expected);
}

}  // namespace zetalab
