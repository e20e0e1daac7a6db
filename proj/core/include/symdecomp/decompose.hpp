#pragma once

#include "symdecomp/assembly.hpp"
#include "symdecomp/eigensolve.hpp"

#include <vector>

namespace symdecomp {

struct DecomposeOptions {
  int extra = -1;        // n_a, redundant eigenvalues per subproblem; < 0 selects the default
  int max_resolves = 3;  // doubling rounds for a subproblem with no leftover eigenvalue
  int threads = 1;       // total budget shared by subproblems and row-parallel products
  SolveOptions solver;   // mode is forced to shift-invert for Q1FE
};

/// max(5, ⌈0.2·N_e / n_sub⌉).
int default_extra(int n_e, int n_sub);

/// ⌈N_e / n_sub⌉ + n_a.
int eigenvalues_per_subproblem(int n_e, int n_sub, int extra);

/// Solver options matching the discretization: FD2 → standard, Q1FE → shift-invert.
SolveOptions solver_options_for(Scheme scheme, const SolveOptions& base);

struct MergedEntry {
  double lambda = 0.0;
  int nu = 0;
  int l = 1;
  int local = 0;   // 0-based index inside the subproblem spectrum
  int slot = 0;    // position of the subproblem in the result list
  double residual = 0.0;
};

struct MergedSpectrum {
  std::vector<MergedEntry> entries;  // ascending, ties broken by (ν, l, local)
  int requested = 0;
  std::vector<int> leftover;         // per subproblem slot: entries beyond the cut
  bool incomplete = false;
};

/// Replicates each eigenvalue of subproblem s `dims[s]` times (l = 1..d),
/// sorts, and keeps the first n_e.
MergedSpectrum merge_spectra(const std::vector<SubproblemSpectrum>& subs, const std::vector<int>& dims, int n_e);

struct DecomposedResult {
  MergedSpectrum merged;
  std::vector<SubproblemSpectrum> subproblems;  // slot ν − 1
  std::vector<int> requested_nev;               // final nev per subproblem
  int resolve_rounds = 0;
  double assembly_seconds = 0.0;
};

/// Assembles and solves every reduced system (concurrently when the thread
/// budget allows), then merges. Subproblems whose spectrum is used up by the
/// cut are re-solved with twice the eigenvalue count, at most max_resolves
/// times; when that is not enough the result is flagged incomplete.
DecomposedResult solve_decomposed(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc,
                                  const PointGroup& group, int n_e, const DecomposeOptions& options = {});

/// The undecomposed reference: n_e smallest eigenpairs of the full system.
SubproblemSpectrum solve_direct(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc, int n_e,
                                const DecomposeOptions& options = {});

/// Lifts every merged entry to the full grid and returns the largest
/// |⟨u_a, u_b⟩| / (‖u_a‖‖u_b‖) over pairs with different (ν, l).
double lifted_orthogonality(const DecomposedResult& result, const OrbitMap& orbits, const PointGroup& group);

}  // namespace symdecomp
