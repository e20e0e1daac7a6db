#pragma once

#include "symdecomp/config.hpp"
#include "symdecomp/decompose.hpp"
#include "symdecomp/perfmodel.hpp"
#include "symdecomp/sabasis.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace symdecomp {

/// Process exit codes of the command-line front-end.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitValidation = 2, kExitNonConvergence = 3 };

struct StatsRow {
  std::string problem;  // "original" or "nu=K"
  int order = 0;
  int nev = 0;
  SolveStats stats;
};

struct SolveReport {
  std::optional<DecomposedResult> decomposed;
  std::optional<SubproblemSpectrum> direct;
  std::vector<StatsRow> stats;
  double discrepancy = 0.0;  // both mode: max relative difference of the first N_e values
  bool converged = true;
  std::vector<std::filesystem::path> files;
};

/// index,lambda,nu,l,residual,subproblem_index. Direct spectra leave nu, l
/// and subproblem_index empty. No timing data, so output is reproducible.
void write_spectrum_csv(const MergedSpectrum& merged, std::ostream& out);
void write_spectrum_csv(const SubproblemSpectrum& direct, int n_e, std::ostream& out);
/// problem,order,nev,iterations,opx,time_mv,time_total
void write_stats_csv(const std::vector<StatsRow>& rows, std::ostream& out);

/// Solves as configured and writes spectrum.csv, stats.csv and, in both
/// mode, spectrum_direct.csv and comparison.csv into the output directory.
/// With write_files = false nothing touches the filesystem.
SolveReport run_solve(const RunConfig& config, bool write_files = true);

struct ValidateReport {
  int order = 0;
  bool dense_reference = false;
  double discrepancy = 0.0;
  double orthogonality = 0.0;
  std::vector<EquivalenceReport> equivalence;  // per ν; empty when skipped
  double equivalence_max = 0.0;
  bool passed = false;
};

/// Dense reference up to kDenseGuard unknowns, Lanczos reference beyond that
/// in both mode; otherwise SizeGuard.
inline constexpr int kDenseGuard = 4000;
ValidateReport run_validate(const RunConfig& config);
void print_validate(const ValidateReport& report, std::ostream& out);

struct ConvergenceReport {
  std::vector<int> levels;
  std::vector<double> h;
  std::vector<int> indices;               // 1-based
  std::vector<double> reference;          // per index
  std::vector<std::vector<double>> lambda; // [level][index]
  std::vector<std::vector<double>> error;  // [level][index]
  std::vector<double> slope;               // per index
  bool richardson = false;
};

/// First n eigenvalues of the continuous problem (oscillator or Laplacian),
/// with multiplicity; empty for problems without a closed form.
std::vector<double> exact_eigenvalues(const RunConfig& config, int n);

/// Least-squares slope of log e against log h.
double loglog_slope(const std::vector<double>& h, const std::vector<double>& e);

/// Uses config.levels (at least three) with equal partitions on every axis.
ConvergenceReport run_convergence(const RunConfig& config);
void write_convergence_csv(const ConvergenceReport& report, std::ostream& out);

struct PredictReport {
  PerfInputs inputs;
  double speedup = 0.0;
  double flops_ratio = 0.0;
};
PredictReport run_predict(int g, int n_sub, double theta1, double omega, std::optional<double> theta2 = std::nullopt);
void print_predict(const PredictReport& report, std::ostream& out);

struct GroupStatus {
  std::string name;
  int order = 0;
  int classes = 0;
  int subproblems = 0;
  std::vector<int> dims;
  double orthogonality_deviation = 0.0;
  bool verified = false;
};
std::vector<GroupStatus> run_groups();
void print_groups(const std::vector<GroupStatus>& groups, std::ostream& out);

struct WorkerGroup {
  int nu = 0;  // 0 for the undecomposed operator
  int order = 0;
  int workers = 1;
  long cross_group_exchanges = 0;  // per matrix-vector product
  long cross_group_bytes = 0;
  long halo_bytes = 0;             // within-group shared entries × 8, per product
  long opx = 0;                    // products performed (0 when no solve was run)
};

struct CommReport {
  int budget = 1;
  std::vector<WorkerGroup> decomposed;
  WorkerGroup direct;
  long cross_group_bytes_total = 0;
  long halo_bytes_total_decomposed = 0;
  long halo_bytes_total_direct = 0;
};

/// Worker counts proportional to d_ν·N0, each at least one. A budget
/// below the number of groups gives every group one worker.
std::vector<int> allocate_workers(const std::vector<int>& sizes, int budget);

/// Distinct off-block column entries of a contiguous row partition into
/// `workers` blocks, times 8 bytes.
long halo_bytes(const SparseSym& a, int workers);

/// Row-partition bookkeeping of one matrix-vector product per worker group;
/// totals are scaled by the product counts of `solved` when given.
CommReport communication_accounting(const RunConfig& config, const SolveReport* solved = nullptr);
void print_comm(const CommReport& report, std::ostream& out);

/// Writes A and B of the full system (nu = 0) or of subproblem ν as
/// Matrix Market files; returns the paths.
std::vector<std::filesystem::path> export_matrices(const RunConfig& config, int nu);

}  // namespace symdecomp
