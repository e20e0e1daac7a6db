#pragma once

#include "symdecomp/eigensolve.hpp"

#include <vector>

namespace symdecomp {

struct FlopsEstimate {
  double f1 = 0.0;          // 4 l m n, re-orthogonalization and basis update
  double f2_order = 0.0;    // l n: matrix-vector products, constant not modelled
  double small_terms = 0.0; // 6 m² + 4 l (m − 1)(2m + n + 1), shifted QR and Q accumulation
  double total_order = 0.0; // f1 + f2_order
};

/// Costs of one IRLM iteration with l restart steps, Krylov dimension m and order n.
FlopsEstimate flops_per_iteration(long l, long m, long n);

struct PerfInputs {
  int g = 1;
  std::vector<int> dims;  // d_ν
  double theta1 = 1.0;
  double theta2 = 1.0;
  double omega = 0.5;

  int n_sub() const;
};

/// Decomposed-to-original flops ratio per iteration, with the two parts
/// weighted by ω: (n_sub/g)·((1 − ω)/(θ1θ2) + ω/θ2).
double decomposed_flops_ratio(const PerfInputs& in);

/// g θ1² / (n_sub (1 + (θ1 − 1) ω)), taking θ2 = θ1.
double predict_speedup(int g, int n_sub, double theta1, double omega);

/// Same model with an independent θ2: (g/n_sub) θ1θ2 / (1 + (θ1 − 1) ω).
double predict_speedup(int g, int n_sub, double theta1, double theta2, double omega);

/// ω = time_mv / time_total. Throws DegenerateStats when time_total ≤ 0.
double measure_omega(const SolveStats& stats);

/// (2 N_e + 5) / (2 nev + 5).
double theta1_from_counts(int n_e, int nev);

/// Σ_s time_total_s / iterations_s over subproblems.
double accumulated_iteration_time(const std::vector<SolveStats>& stats);

/// time_total / iterations for a single solve.
double average_iteration_time(const SolveStats& stats);

}  // namespace symdecomp
