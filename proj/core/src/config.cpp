#include "symdecomp/config.hpp"

#include "symdecomp/error.hpp"
#include "symdecomp/group_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace symdecomp {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(ErrorCode::ConfigError, line > 0 ? "line " + std::to_string(line) + ": " + message : message);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

int to_int(const std::string& v, int line, const std::string& key) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) fail(line, key + ": expected an integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& v, int line, const std::string& key) {
  std::istringstream in(v);
  double out = 0.0;
  std::string rest;
  if (!(in >> out) || (in >> rest)) fail(line, key + ": expected a number, got '" + v + "'");
  return out;
}

std::vector<int> to_ints(const std::string& v, int line, const std::string& key) {
  std::istringstream in(v);
  std::vector<int> out;
  std::string tok;
  while (in >> tok) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (!tok.empty()) out.push_back(to_int(tok, line, key));
  }
  if (out.empty()) fail(line, key + ": expected a list of integers");
  return out;
}

int line_of(const RunConfig& c, const std::string& key) {
  const auto it = c.lines.find(key);
  return it == c.lines.end() ? 0 : it->second;
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Decomposed: return "decomposed";
    case RunMode::Direct: return "direct";
    case RunMode::Both: return "both";
  }
  return "?";
}

namespace {

// line 0 marks a command-line override; messages then omit the line.
void set_key(RunConfig& c, const std::string& key, const std::string& value, int line) {
  if (key == "problem") {
    c.problem = lower(value);
    if (c.problem != "laplacian" && c.problem != "oscillator" && c.problem != "anharmonic") {
      fail(line, "problem: expected laplacian, oscillator or anharmonic");
    }
  } else if (key == "quartic") {
    c.quartic = to_double(value, line, key);
  } else if (key == "dim") {
    c.dim = to_int(value, line, key);
  } else if (key == "half_width") {
    c.half_width = to_double(value, line, key);
  } else if (key == "partitions") {
    c.partitions = to_ints(value, line, key);
  } else if (key == "scheme") {
    const std::string s = lower(value);
    if (s == "fd2") c.scheme = Scheme::FD2;
    else if (s == "q1fe") c.scheme = Scheme::Q1FE;
    else fail(line, "scheme: expected FD2 or Q1FE");
  } else if (key == "group") {
    c.group = value;
  } else if (key == "n_e") {
    c.n_e = to_int(value, line, key);
  } else if (key == "n_a") {
    c.n_a = to_int(value, line, key);
  } else if (key == "tol") {
    c.tol = to_double(value, line, key);
  } else if (key == "mode") {
    const std::string m = lower(value);
    if (m == "decomposed") c.mode = RunMode::Decomposed;
    else if (m == "direct") c.mode = RunMode::Direct;
    else if (m == "both") c.mode = RunMode::Both;
    else fail(line, "mode: expected decomposed, direct or both");
  } else if (key == "threads") {
    c.threads = to_int(value, line, key);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "levels") {
    c.levels = to_ints(value, line, key);
  } else if (key == "indices") {
    c.indices = to_ints(value, line, key);
  } else if (key == "validate_tol") {
    c.validate_tol = to_double(value, line, key);
  } else {
    fail(line, "unknown key '" + key + "'");
  }
}

// A single partition count applies to every axis.
void finalize(RunConfig& c) {
  if (c.partitions.size() == 1 && c.dim > 1) c.partitions.assign(static_cast<std::size_t>(c.dim), c.partitions[0]);
  if (!c.lines.count("partitions") && static_cast<int>(c.partitions.size()) != c.dim && c.dim > 0) {
    c.partitions.assign(static_cast<std::size_t>(c.dim), 21);
  }
  validate_config(c);
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = lower(trim(text.substr(0, eq)));
    const std::string value = trim(text.substr(eq + 1));
    if (value.empty()) fail(line, key + ": missing value");
    if (c.lines.count(key)) fail(line, key + ": duplicate key (first set on line " + std::to_string(c.lines[key]) + ")");
    set_key(c, key, value, line);
    c.lines[key] = line;
  }
  finalize(c);
  return c;
}

void apply_overrides(RunConfig& config, const std::vector<std::pair<std::string, std::string>>& overrides) {
  for (const auto& [k, v] : overrides) {
    const std::string key = lower(trim(k));
    try {
      set_key(config, key, trim(v), 0);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, "option --" + key + ": " + std::string(e.what()).substr(13));
    }
    config.lines[key] = 0;
  }
  finalize(config);
}

RunConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file " + path.string());
  return parse_config(in);
}

void validate_config(const RunConfig& c) {
  if (c.dim != 2 && c.dim != 3) fail(line_of(c, "dim"), "dim: must be 2 or 3");
  if (!(c.half_width > 0.0)) fail(line_of(c, "half_width"), "half_width: must be positive");
  if (static_cast<int>(c.partitions.size()) != c.dim) {
    fail(line_of(c, "partitions"), "partitions: expected " + std::to_string(c.dim) + " values");
  }
  for (int n : c.partitions) {
    if (n < 3) fail(line_of(c, "partitions"), "partitions: every count must be at least 3");
    if (n % 2 == 0) fail(line_of(c, "partitions"), "partitions: " + std::to_string(n) + " is even; counts must be odd");
  }
  for (int n : c.levels) {
    if (n < 3 || n % 2 == 0) fail(line_of(c, "levels"), "levels: counts must be odd and at least 3");
  }
  for (int i : c.indices) {
    if (i < 1 || i > c.n_e) fail(line_of(c, "indices"), "indices: must lie in 1..n_e");
  }
  if (c.n_e < 1) fail(line_of(c, "n_e"), "n_e: must be at least 1");
  if (!(c.tol > 0.0 && c.tol <= 1e-2)) fail(line_of(c, "tol"), "tol: must lie in (0, 1e-2]");
  if (c.threads < 1) fail(line_of(c, "threads"), "threads: must be at least 1");
  if (!(c.validate_tol > 0.0)) fail(line_of(c, "validate_tol"), "validate_tol: must be positive");
  if (c.problem == "laplacian" && c.lines.count("quartic")) fail(line_of(c, "quartic"), "quartic: only used by anharmonic");
}

Problem make_problem(const RunConfig& c) {
  if (c.problem == "laplacian") return laplacian_problem(c.dim, c.half_width);
  if (c.problem == "anharmonic") return anharmonic_problem(c.dim, c.half_width, c.quartic);
  return oscillator_problem(c.dim, c.half_width);
}

PointGroup resolve_group(const std::string& name) {
  for (const auto& b : builtin_group_names()) {
    if (lower(b) == lower(name)) return builtin_group(b);
  }
  if (std::filesystem::exists(name)) return read_group_file(name);
  return builtin_group(name);  // raises UnknownGroup
}

}  // namespace symdecomp
