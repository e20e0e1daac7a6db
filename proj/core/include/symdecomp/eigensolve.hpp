#pragma once

#include "symdecomp/error.hpp"
#include "symdecomp/lanczos.hpp"
#include "symdecomp/sparse.hpp"

#include <vector>

namespace symdecomp {

struct SolveStats {
  long iterations = 0;  // restart cycles over all deflation rounds
  long opx_count = 0;
  double time_mv = 0.0;
  double time_total = 0.0;
};

struct SubproblemSpectrum {
  int nu = 0;  // 0 for an undecomposed solve
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // B-orthonormal columns
  std::vector<double> residuals;  // ‖A v − λ B v‖ / ‖B v‖
  SolveStats stats;
  bool converged = true;
};

enum class SolveMode { Standard, ShiftInvert };

struct SolveOptions {
  SolveMode mode = SolveMode::Standard;
  double sigma = 0.0;
  double tol = 1e-10;
  int max_restarts = 5000;     // per deflation round
  int max_rounds = 12;         // deflation rounds for degenerate eigenvalues
  int threads = 1;             // row partition of the matrix-vector product
  std::uint64_t seed = 0x5eed5eed5eedULL;
  int dense_threshold = 64;    // orders up to this are solved densely
  bool throw_on_max_iterations = true;
};

/// Thrown when the restart budget runs out; carries what converged.
class MaxIterationsError : public Error {
 public:
  MaxIterationsError(const std::string& what, SubproblemSpectrum partial)
      : Error(ErrorCode::MaxIterations, what), partial_(std::move(partial)) {}
  const SubproblemSpectrum& partial() const { return partial_; }

 private:
  SubproblemSpectrum partial_;
};

/// Krylov dimension used for nev wanted pairs.
inline int krylov_dimension(int nev) { return 2 * nev + 5; }

/// Smallest nev eigenpairs of A x = λ B x (B = identity when `b` is null).
/// Standard mode runs the restarted Lanczos on A (B⁻¹A if B is given);
/// shift-invert runs it on (A − σB)⁻¹B and returns the eigenvalues nearest σ.
/// Every degenerate copy is recovered by re-running on the B-orthogonal
/// complement of the converged vectors until no new eigenvalue appears below
/// the current nev-th one.
SubproblemSpectrum solve_symmetric(const SparseSym& a, const SparseSym* b, int nev, const SolveOptions& options = {});

/// Dense reference solve (all eigenpairs, ascending).
SubproblemSpectrum solve_dense(const SparseSym& a, const SparseSym* b);

/// ‖A v − λ B v‖ / ‖B v‖.
double residual_norm(const SparseSym& a, const SparseSym* b, double lambda, const Eigen::VectorXd& v);

}  // namespace symdecomp
