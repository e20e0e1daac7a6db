#include "symdecomp/app.hpp"
#include "symdecomp/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace symdecomp;

namespace {

// Flags shared by every subcommand that builds a problem. Each one is a
// shortcut for the config key of the same meaning.
struct ConfigFlags {
  std::string file;
  std::vector<std::string> set;
  std::map<std::string, std::string> shortcuts;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", file, "key = value config file");
    cmd->add_option("-s,--set", set, "override, e.g. --set n_e=20 (repeatable)");
    const auto add = [&](const std::string& flag, const std::string& key, const std::string& help) {
      cmd->add_option(flag, shortcuts[key], help);
    };
    add("--problem", "problem", "laplacian | oscillator | anharmonic (default oscillator)");
    add("--dim", "dim", "2 or 3 (default 3)");
    add("--half-width", "half_width", "domain (-a, a)^dim (default 5)");
    add("--partitions", "partitions", "odd partition counts, one or one per axis (default 21)");
    add("--scheme", "scheme", "FD2 | Q1FE (default FD2)");
    add("--group", "group", "point group name, group file, or NONE (default D2H)");
    add("--ne", "n_e", "number of wanted eigenvalues (default 10)");
    add("--na", "n_a", "redundant eigenvalues per subproblem (default max(5, 0.2 N_e/n_sub))");
    add("--tol", "tol", "residual tolerance in (0, 1e-2] (default 1e-10)");
    add("--mode", "mode", "decomposed | direct | both (default decomposed)");
    add("--threads", "threads", "thread budget (default 1)");
    add("-o,--output", "output_dir", "output directory (default .)");
  }

  RunConfig build() const {
    RunConfig c;
    if (!file.empty()) {
      c = read_config(file);
    } else {
      std::istringstream empty;
      c = parse_config(empty);
    }
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& [key, value] : shortcuts) {
      if (!value.empty()) overrides.emplace_back(key, value);
    }
    for (const auto& kv : set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "--set expects key=value, got '" + kv + "'");
      overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    // Grid shape keys first, so a new dim sees its partitions.
    std::stable_partition(overrides.begin(), overrides.end(), [](const auto& p) { return p.first == "dim"; });
    if (!overrides.empty()) apply_overrides(c, overrides);
    return c;
  }
};

int solve_cmd(const ConfigFlags& flags) {
  const RunConfig c = flags.build();
  const SolveReport r = run_solve(c);
  std::ostringstream spectrum;
  if (r.decomposed) write_spectrum_csv(r.decomposed->merged, spectrum);
  else write_spectrum_csv(*r.direct, c.n_e, spectrum);
  std::cout << spectrum.str();
  if (r.decomposed && r.direct) std::cout << "max relative discrepancy vs direct: " << r.discrepancy << '\n';
  for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
  if (!r.converged) {
    std::cerr << "spectrum incomplete or not converged\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int validate_cmd(const ConfigFlags& flags) {
  const ValidateReport r = run_validate(flags.build());
  print_validate(r, std::cout);
  return r.passed ? kExitOk : kExitValidation;
}

int convergence_cmd(const ConfigFlags& flags, const std::vector<int>& levels) {
  RunConfig c = flags.build();
  if (!levels.empty()) c.levels = levels;
  const ConvergenceReport r = run_convergence(c);
  std::ostringstream csv;
  write_convergence_csv(r, csv);
  std::filesystem::create_directories(c.output_dir);
  const auto path = c.output_dir / "convergence.csv";
  std::ofstream(path) << csv.str();
  std::cout << csv.str() << "wrote " << path.string() << '\n';
  return kExitOk;
}

struct StatsLine {
  std::string problem;
  int nev = 0;
  SolveStats stats;
};

std::vector<StatsLine> read_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<StatsLine> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> f;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 7) throw Error(ErrorCode::IoError, "malformed stats row: " + line);
    StatsLine s;
    s.problem = f[0];
    s.nev = std::stoi(f[2]);
    s.stats.iterations = std::stol(f[3]);
    s.stats.opx_count = std::stol(f[4]);
    s.stats.time_mv = std::stod(f[5]);
    s.stats.time_total = std::stod(f[6]);
    rows.push_back(s);
  }
  return rows;
}

int predict_cmd(int g, int nsub, double theta1, double omega, double theta2, const std::string& group,
                const std::string& stats_path) {
  if (!group.empty()) {
    const PointGroup pg = resolve_group(group);
    g = pg.order();
    nsub = pg.num_subproblems();
  }
  std::vector<SolveStats> subs;
  const StatsLine* original = nullptr;
  std::vector<StatsLine> rows;
  if (!stats_path.empty()) {
    rows = read_stats(stats_path);
    int nev = 0;
    for (const auto& r : rows) {
      if (r.problem == "original") {
        original = &r;
      } else {
        subs.push_back(r.stats);
        nev = std::max(nev, r.nev);
      }
    }
    if (original && omega < 0) omega = measure_omega(original->stats);
    if (original && theta1 < 0 && nev > 0) theta1 = theta1_from_counts(original->nev, nev);
  }
  if (g < 1 || nsub < 1 || theta1 <= 0 || omega < 0) {
    throw Error(ErrorCode::ConfigError, "predict needs --g, --nsub (or --group), --theta1 and --omega, or a stats file");
  }
  const PredictReport r = run_predict(g, nsub, theta1, omega, theta2 > 0 ? std::optional<double>(theta2) : std::nullopt);
  print_predict(r, std::cout);
  if (original && !subs.empty()) {
    const double measured = average_iteration_time(original->stats) / accumulated_iteration_time(subs);
    std::cout << "measured   " << measured << "  (single-iteration time ratio)\n";
  }
  return kExitOk;
}

int groups_cmd() {
  const auto groups = run_groups();
  print_groups(groups, std::cout);
  for (const auto& g : groups) {
    if (!g.verified) return kExitValidation;
  }
  return kExitOk;
}

int export_cmd(const ConfigFlags& flags, int nu) {
  for (const auto& p : export_matrices(flags.build(), nu)) std::cout << "wrote " << p.string() << '\n';
  return kExitOk;
}

int comm_cmd(const ConfigFlags& flags, bool solve) {
  const RunConfig c = flags.build();
  std::optional<SolveReport> solved;
  if (solve) {
    RunConfig both = c;
    both.mode = RunMode::Both;
    solved = run_solve(both, false);
  }
  const CommReport r = communication_accounting(c, solved ? &*solved : nullptr);
  print_comm(r, std::cout);
  return r.cross_group_bytes_total == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-decomposed grid eigenvalue solver"};
  app.require_subcommand(1);

  ConfigFlags solve_flags, validate_flags, conv_flags, export_flags, comm_flags;
  auto* solve = app.add_subcommand("solve", "solve and write spectrum.csv / stats.csv");
  solve_flags.attach(solve);
  auto* validate = app.add_subcommand("validate", "compare decomposed and reference spectra");
  validate_flags.attach(validate);
  auto* conv = app.add_subcommand("convergence", "error table over several grid levels");
  conv_flags.attach(conv);
  std::vector<int> levels;
  conv->add_option("--levels", levels, "odd partition counts, at least three")->delimiter(',');

  auto* predict = app.add_subcommand("predict", "evaluate the speedup model");
  int g = 0, nsub = 0;
  double theta1 = -1, omega = -1, theta2 = -1;
  std::string group, stats;
  predict->add_option("--g", g, "group order");
  predict->add_option("--nsub", nsub, "number of subproblems");
  predict->add_option("--theta1", theta1, "Krylov dimension ratio");
  predict->add_option("--theta2", theta2, "restart-count ratio (default theta1)");
  predict->add_option("--omega", omega, "matrix-vector fraction of solve time");
  predict->add_option("--group", group, "take g and n_sub from a group");
  predict->add_option("--stats", stats, "stats.csv of a both-mode solve");

  auto* groups = app.add_subcommand("groups", "list built-in groups with verification status");

  auto* exp = app.add_subcommand("export-matrix", "write A and B in Matrix Market format");
  export_flags.attach(exp);
  int nu = 0;
  exp->add_option("--nu", nu, "subproblem (0 = full system)");

  auto* comm = app.add_subcommand("comm", "communication bookkeeping of the row partition");
  comm_flags.attach(comm);
  bool comm_solve = false;
  comm->add_flag("--solve", comm_solve, "run both solves and scale by product counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) return solve_cmd(solve_flags);
    if (*validate) return validate_cmd(validate_flags);
    if (*conv) return convergence_cmd(conv_flags, levels);
    if (*predict) return predict_cmd(g, nsub, theta1, omega, theta2, group, stats);
    if (*groups) return groups_cmd();
    if (*exp) return export_cmd(export_flags, nu);
    if (*comm) return comm_cmd(comm_flags, comm_solve);
  } catch (const MaxIterationsError& e) {
    std::cerr << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    if (e.code() == ErrorCode::IncompleteSpectrum) return kExitNonConvergence;
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
