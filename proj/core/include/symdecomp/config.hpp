#pragma once

#include "symdecomp/assembly.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace symdecomp {

enum class RunMode { Decomposed, Direct, Both };

struct RunConfig {
  std::string problem = "oscillator";  // laplacian | oscillator | anharmonic
  double quartic = 0.1;                // anharmonic coefficient
  int dim = 3;
  double half_width = 5.0;
  std::vector<int> partitions{21, 21, 21};
  Scheme scheme = Scheme::FD2;
  std::string group = "D2H";           // built-in name, group file path, or NONE
  int n_e = 10;
  int n_a = -1;                        // < 0: default redundancy
  double tol = 1e-10;
  RunMode mode = RunMode::Decomposed;
  int threads = 1;
  std::filesystem::path output_dir = ".";
  std::vector<int> levels;             // partition counts for convergence studies
  std::vector<int> indices;            // 1-based eigenvalue indices reported by convergence
  double validate_tol = 1e-8;

  /// Line on which each key was set (0 for defaults), used in messages.
  std::map<std::string, int> lines;

  bool decomposed() const { return group != "NONE" && group != "none"; }
};

/// Flat `key = value` text; `#` starts a comment. Unknown keys, malformed
/// values and failed validation raise ConfigError naming the line.
RunConfig parse_config(std::istream& in);
RunConfig read_config(const std::filesystem::path& path);

/// Applies command-line `key = value` pairs on top of a parsed config and
/// re-validates; messages name the option instead of a line.
void apply_overrides(RunConfig& config, const std::vector<std::pair<std::string, std::string>>& overrides);

/// Checks invariants (odd partitions, N_e ≥ 1, 0 < tol ≤ 1e-2, ...).
void validate_config(const RunConfig& config);

std::string_view to_string(RunMode mode);

/// Problem described by the config.
Problem make_problem(const RunConfig& config);

/// Built-in group or a group definition file.
PointGroup resolve_group(const std::string& name);

}  // namespace symdecomp
