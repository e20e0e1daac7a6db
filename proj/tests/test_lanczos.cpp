#include <doctest.h>

#include "symdecomp/assembly.hpp"
#include "symdecomp/eigensolve.hpp"
#include "symdecomp/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>

using namespace symdecomp;

namespace {

LanczosOperator dense_operator(const Eigen::MatrixXd& a) {
  LanczosOperator op;
  op.n = static_cast<int>(a.rows());
  op.apply = [a](const Eigen::VectorXd& x, const Eigen::VectorXd&, Eigen::VectorXd& y) { y = a * x; };
  return op;
}

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = d(rng);
  return a;
}

Eigen::VectorXd ritz_values(const LanczosState& s) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s.H.topLeftCorner(s.k, s.k), Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("full Krylov space of diag(1..10) reproduces its spectrum") {
  Eigen::MatrixXd a = Eigen::VectorXd::LinSpaced(10, 1.0, 10.0).asDiagonal();
  const LanczosOperator op = dense_operator(a);
  LanczosCounters c;
  LanczosState s = lanczos_start(op, 10, Eigen::VectorXd::Ones(10));
  lanczos_extend(op, s, 10, c);
  CHECK(c.opx == 10);
  const Eigen::VectorXd ritz = ritz_values(s);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(ritz(i) - (i + 1)) <= 1e-10);
}

TEST_CASE("identity operator: one step, Ritz value 1, breakdown handled") {
  const LanczosOperator op = dense_operator(Eigen::MatrixXd::Identity(6, 6));
  LanczosCounters c;
  LanczosState s = lanczos_start(op, 4, Eigen::VectorXd::Ones(6));
  lanczos_extend(op, s, 1, c);
  CHECK(s.H(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.f.norm() == 0.0);
  lanczos_extend(op, s, 3, c);  // continues through fresh directions
  const Eigen::MatrixXd vtv = s.V.leftCols(4).transpose() * s.V.leftCols(4);
  CHECK((vtv - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ritz_values(s)(i) - 1.0) <= 1e-12);
}

TEST_CASE("Ritz values of the 3x3-partition Laplacian match the dense solve") {
  const SymmetricGrid grid = build_grid(2, 1.0, {3, 3});
  const FullSystem sys = assemble_full(laplacian_problem(2, 1.0), grid, {Scheme::FD2});
  const Eigen::MatrixXd a(sys.A);
  const LanczosOperator op = dense_operator(a);
  LanczosCounters c;
  LanczosState s = lanczos_start(op, 4, pseudo_random_vector(4, 1));
  lanczos_extend(op, s, 4, c);
  const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
  // ±1 eigenvalues 9 ± 4.5 plus the double 9: a 4-step Krylov space breaks
  // down after three steps and continues in a fresh direction.
  const Eigen::VectorXd ritz = ritz_values(s);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ritz(i) - ref(i)) <= 1e-10);
}

TEST_CASE("factorization invariants hold on a random matrix") {
  const Eigen::MatrixXd a = random_symmetric(60, 9);
  const LanczosOperator op = dense_operator(a);
  LanczosCounters c;
  LanczosState s = lanczos_start(op, 25, pseudo_random_vector(60, 2));
  lanczos_extend(op, s, 25, c);
  const Eigen::MatrixXd vtv = s.V.transpose() * s.V;
  CHECK((vtv - Eigen::MatrixXd::Identity(25, 25)).cwiseAbs().maxCoeff() <= 1e-10);
  const double anorm = a.cwiseAbs().maxCoeff();
  CHECK(factorization_residual(op, s) <= 1e-8 * anorm);
  implicit_restart(s, {0.1, -0.3, 0.7});
  CHECK(s.k == 22);
  CHECK(factorization_residual(op, s) <= 1e-8 * anorm);
  CHECK((s.V.leftCols(22).transpose() * s.V.leftCols(22) - Eigen::MatrixXd::Identity(22, 22)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("exact shifts keep the wanted Ritz values") {
  const Eigen::MatrixXd a = random_symmetric(20, 4);
  const LanczosOperator op = dense_operator(a);
  LanczosCounters c;
  LanczosState s = lanczos_start(op, 12, pseudo_random_vector(20, 3));
  lanczos_extend(op, s, 12, c);
  const Eigen::VectorXd before = ritz_values(s);
  // keep the 5 largest, shift away the 7 smallest
  std::vector<double> shifts(before.data(), before.data() + 7);
  implicit_restart(s, shifts);
  REQUIRE(s.k == 5);
  const Eigen::VectorXd after = ritz_values(s);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(after(i) - before(7 + i)) <= 1e-10);
}

TEST_CASE("no shifts leaves the state unchanged") {
  const Eigen::MatrixXd a = random_symmetric(15, 5);
  const LanczosOperator op = dense_operator(a);
  LanczosCounters c;
  LanczosState s = lanczos_start(op, 6, pseudo_random_vector(15, 5));
  lanczos_extend(op, s, 6, c);
  const LanczosState copy = s;
  implicit_restart(s, {});
  CHECK(s.k == copy.k);
  CHECK((s.V - copy.V).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s.H - copy.H).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s.f - copy.f).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("one Givens QR sweep equals an explicit shifted QR step") {
  Eigen::MatrixXd h(3, 3);
  h << 2.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 4.0;
  const double mu = 1.3;
  Eigen::MatrixXd givens = h;
  const Eigen::MatrixXd q = shifted_qr_step(givens, mu);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(h - mu * Eigen::MatrixXd::Identity(3, 3));
  Eigen::MatrixXd qe = qr.householderQ();
  Eigen::MatrixXd re = qr.matrixQR().triangularView<Eigen::Upper>();
  // normalise signs so that diag(R) ≥ 0 as with the Givens factorization
  for (int i = 0; i < 2; ++i) {
    if (re(i, i) < 0) {
      re.row(i) *= -1.0;
      qe.col(i) *= -1.0;
    }
  }
  if (re(2, 2) * (q.transpose() * (h - mu * Eigen::MatrixXd::Identity(3, 3)))(2, 2) < 0) {
    re.row(2) *= -1.0;
    qe.col(2) *= -1.0;
  }
  const Eigen::MatrixXd explicit_step = re * qe + mu * Eigen::MatrixXd::Identity(3, 3);
  CHECK((givens - explicit_step).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((q - qe).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("solve_symmetric: identity has eigenvalues 1") {
  SparseSym eye(200, 200);
  eye.setIdentity();
  eye.makeCompressed();
  const SubproblemSpectrum s = solve_symmetric(eye, nullptr, 3);
  REQUIRE(s.eigenvalues.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(s.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_symmetric: 2D Laplacian recovers the double eigenvalue") {
  const SymmetricGrid grid = build_grid(2, 1.0, {41, 41});
  const FullSystem sys = assemble_full(laplacian_problem(2, 1.0), grid, {Scheme::FD2});
  const SubproblemSpectrum s = solve_symmetric(sys.A, nullptr, 4);
  REQUIRE(s.eigenvalues.size() == 4);
  const double q = M_PI * M_PI / 4.0;
  const double expect[4] = {2 * q, 5 * q, 5 * q, 8 * q};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(s.eigenvalues(i) - expect[i]) / expect[i] <= 5e-3);
    CHECK(s.residuals[static_cast<std::size_t>(i)] <= 1e-10);
  }
  CHECK(std::abs(s.eigenvalues(1) - s.eigenvalues(2)) <= 1e-9);
  CHECK(s.stats.opx_count >= s.stats.iterations);
  CHECK(s.stats.time_mv <= s.stats.time_total);
}

TEST_CASE("solve_symmetric agrees with dense solves, standard and shift-invert") {
  const Problem p = oscillator_problem(3, 4.0);
  const SymmetricGrid grid = build_grid(3, 4.0, {9, 9, 9});
  for (Scheme scheme : {Scheme::FD2, Scheme::Q1FE}) {
    const FullSystem sys = assemble_full(p, grid, {scheme});
    const SubproblemSpectrum dense = solve_dense(sys.A, &sys.B);
    SolveOptions opt;
    opt.mode = scheme == Scheme::FD2 ? SolveMode::Standard : SolveMode::ShiftInvert;
    const SubproblemSpectrum s = solve_symmetric(sys.A, &sys.B, 10, opt);
    for (int i = 0; i < 10; ++i) {
      CHECK(std::abs(s.eigenvalues(i) - dense.eigenvalues(i)) <= 1e-8 * dense.eigenvalues(i));
      CHECK(s.residuals[static_cast<std::size_t>(i)] <= 1e-10);
    }
    const Eigen::MatrixXd gram = s.eigenvectors.transpose() * (sys.B * s.eigenvectors);
    CHECK((gram - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("repeated solves are bitwise identical") {
  const SymmetricGrid grid = build_grid(2, 1.0, {31, 31});
  const FullSystem sys = assemble_full(laplacian_problem(2, 1.0), grid, {Scheme::FD2});
  const SubproblemSpectrum a = solve_symmetric(sys.A, nullptr, 6);
  const SubproblemSpectrum b = solve_symmetric(sys.A, nullptr, 6);
  for (int i = 0; i < 6; ++i) CHECK(a.eigenvalues(i) == b.eigenvalues(i));
}

TEST_CASE("restart budget exhaustion reports partial results") {
  const SymmetricGrid grid = build_grid(2, 1.0, {41, 41});
  const FullSystem sys = assemble_full(laplacian_problem(2, 1.0), grid, {Scheme::FD2});
  SolveOptions opt;
  opt.max_restarts = 1;
  try {
    (void)solve_symmetric(sys.A, nullptr, 4, opt);
    FAIL("expected MaxIterations");
  } catch (const MaxIterationsError& e) {
    CHECK(e.code() == ErrorCode::MaxIterations);
    CHECK_FALSE(e.partial().converged);
  }
  opt.throw_on_max_iterations = false;
  CHECK_FALSE(solve_symmetric(sys.A, nullptr, 4, opt).converged);
}

TEST_CASE("an indefinite mass matrix is rejected") {
  const SymmetricGrid grid = build_grid(2, 1.0, {11, 11});
  FullSystem sys = assemble_full(laplacian_problem(2, 1.0), grid, {Scheme::Q1FE});
  sys.B.coeffRef(3, 3) = -1.0;
  SolveOptions opt;
  opt.mode = SolveMode::ShiftInvert;
  try {
    (void)solve_symmetric(sys.A, &sys.B, 3, opt);
    FAIL("expected IndefiniteMass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndefiniteMass);
  }
}
