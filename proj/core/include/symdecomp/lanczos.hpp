#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

namespace symdecomp {

/// Operator that is self-adjoint in the B inner product ⟨x, y⟩ = xᵀ B y.
/// `apply` receives x together with B x so shift-invert operators avoid a
/// second mass product. An empty `mass` means B = I.
struct LanczosOperator {
  int n = 0;
  std::function<void(const Eigen::VectorXd& x, const Eigen::VectorXd& bx, Eigen::VectorXd& y)> apply;
  std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)> mass;
};

struct LanczosCounters {
  long opx = 0;          // operator applications
  double time_mv = 0.0;  // seconds inside apply and mass
};

/// k-step (or m-step) factorization  op V_k = V_k H_k + f_k e_kᵀ,
/// Vᵀ B V = I. Storage holds up to `capacity` columns.
struct LanczosState {
  Eigen::MatrixXd V;   // n × capacity, first k columns valid
  Eigen::MatrixXd BV;  // B V
  Eigen::MatrixXd H;   // capacity × capacity, leading k × k valid
  Eigen::VectorXd f;
  Eigen::VectorXd Bf;
  int k = 0;
  std::uint64_t fresh_seed = 0x9e3779b97f4a7c15ULL;  // advanced on every breakdown

  /// Basis vectors that every new Lanczos vector is kept B-orthogonal to
  /// (an already converged invariant subspace); may be empty.
  Eigen::MatrixXd locked;
  Eigen::MatrixXd locked_b;

  int capacity() const { return static_cast<int>(V.cols()); }
};

/// Deterministic pseudo-random vector with entries in [−1, 1].
Eigen::VectorXd pseudo_random_vector(int n, std::uint64_t seed);

/// Starts a factorization from `start` (B-orthogonalized against `locked`,
/// then normalized): V has one column and f = 0, k = 0 until extended.
LanczosState lanczos_start(const LanczosOperator& op, int capacity, const Eigen::VectorXd& start,
                           const Eigen::MatrixXd& locked = {}, const Eigen::MatrixXd& locked_b = {});

/// Extends the factorization by `steps` Lanczos steps with full
/// re-orthogonalization (classical Gram-Schmidt applied twice). A residual
/// smaller than 1e-14 relative to ‖op v‖ is treated as breakdown and replaced
/// by a fresh pseudo-random direction orthogonal to V.
void lanczos_extend(const LanczosOperator& op, LanczosState& state, int steps, LanczosCounters& counters);

/// Applies the given shifts as implicit shifted-QR sweeps on H (each sweep a
/// product of m − 1 Givens rotations) and truncates the factorization to
/// k = m − shifts.size() columns.
void implicit_restart(LanczosState& state, const std::vector<double>& shifts);

/// One explicit shifted QR step H − μI = QR, H ← RQ + μI done with Givens
/// rotations. Returns Q.
Eigen::MatrixXd shifted_qr_step(Eigen::MatrixXd& H, double mu);

/// ‖op V_k − V_k H_k − f_k e_kᵀ‖_max, an explicit check of the factorization.
double factorization_residual(const LanczosOperator& op, const LanczosState& state);

}  // namespace symdecomp
