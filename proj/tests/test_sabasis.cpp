#include <doctest.h>

#include "symdecomp/error.hpp"
#include "symdecomp/projector.hpp"
#include "symdecomp/sabasis.hpp"

#include <Eigen/Eigenvalues>

using namespace symdecomp;

namespace {

SymmetricGrid grid_for(const PointGroup& g, int n) {
  return g.dim() == 2 ? build_grid(2, 1.0, {n, n}) : build_grid(3, 2.0, {n, n, n});
}

Problem problem_for(const PointGroup& g) {
  return g.dim() == 2 ? laplacian_problem(2, 1.0) : oscillator_problem(3, 2.0);
}

}  // namespace

TEST_CASE("trivial SAB on the 3x3 partition is the orbit average") {
  const PointGroup g = builtin_group("EXAMPLE2D");
  const SymmetricGrid grid = build_grid(2, 1.0, {3, 3});
  const OrbitMap orbits(grid, g);
  const SabSet sab = construct_sab(grid, orbits, g, 1);
  REQUIRE(sab.size() == 1);
  for (int k = 0; k < 4; ++k) CHECK(sab.basis(0, k) == doctest::Approx(0.25));
}

TEST_CASE("SAB counts and ranks equal dν N0 on a 5^3 grid") {
  for (const auto& name : builtin_group_names()) {
    CAPTURE(name);
    const PointGroup g = builtin_group(name);
    const SymmetricGrid grid = grid_for(g, 5);
    const OrbitMap orbits(grid, g);
    for (int nu = 1; nu <= g.num_irreps(); ++nu) {
      const int expect = g.irrep(nu).dim * orbits.num_orbits();
      const SabSet sab = construct_sab(grid, orbits, g, nu);
      CHECK(sab.size() == expect);
      CHECK(numerical_rank(sab.basis) == expect);
      CHECK(rank_of_projected_set(grid, orbits, g, nu) == expect);
    }
  }
}

TEST_CASE("dropping the partner family halves the rank") {
  const PointGroup g = builtin_group("D4");
  const SymmetricGrid grid = grid_for(g, 5);
  const OrbitMap orbits(grid, g);
  const SabSet sab = construct_sab(grid, orbits, g, 5);
  const int n0 = orbits.num_orbits();
  CHECK(numerical_rank(sab.basis.topRows(n0)) == n0);
  CHECK(numerical_rank(sab.basis) == 2 * n0);
}

TEST_CASE("single-orbit grid: the two-dimensional irrep gives rank 2") {
  const PointGroup g = builtin_group("D4");
  const SymmetricGrid grid = build_grid(3, 1.0, {3, 3, 3});
  const OrbitMap orbits(grid, g);
  REQUIRE(orbits.num_orbits() == 1);
  CHECK(rank_of_projected_set(grid, orbits, g, 5) == 2);
  CHECK(rank_of_projected_set(grid, orbits, g, 5, 2) == 2);
  CHECK(rank_of_projected_set(grid, orbits, g, 1) == 1);
}

TEST_CASE("SAB functions are fixed by their projector and transform as partners") {
  for (const char* name : {"D4", "D2D", "D2H"}) {
    CAPTURE(name);
    const PointGroup g = builtin_group(name);
    const SymmetricGrid grid = grid_for(g, 5);
    const OrbitMap orbits(grid, g);
    for (int nu = 1; nu <= g.num_irreps(); ++nu) {
      const SabSet sab = construct_sab(grid, orbits, g, nu);
      const int d = sab.irrep_dim;
      const auto pkk = projector_coefficients(g, nu, 1, 1);
      for (int row = 0; row < sab.size(); row += 3) {
        const GridFunction psi = sab.basis.row(row).transpose();
        CHECK((apply_projector(pkk, psi, orbits) - psi).cwiseAbs().maxCoeff() <= 1e-10);
        // partners f_l = 𝒫_l1 ψ satisfy P_R f_l = Σ_m Γ(R)_ml f_m
        std::vector<GridFunction> f;
        for (int l = 1; l <= d; ++l) f.push_back(apply_projector(projector_coefficients(g, nu, l, 1), psi, orbits));
        for (int r = 0; r < g.order(); ++r) {
          for (int l = 0; l < d; ++l) {
            GridFunction rhs = GridFunction::Zero(grid.size());
            for (int m = 0; m < d; ++m) rhs += g.irrep(nu).entry(r, m, l) * f[static_cast<std::size_t>(m)];
            CHECK((apply_operation(r, f[static_cast<std::size_t>(l)], orbits) - rhs).cwiseAbs().maxCoeff() <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("both reduction routes agree for every irrep") {
  struct Case {
    const char* group;
    int n;
    double tol;
  };
  for (const Case c : {Case{"EXAMPLE2D", 3, 1e-12}, Case{"EXAMPLE2D", 5, 1e-12}, Case{"D2H", 5, 1e-12},
                       Case{"D4", 5, 1e-10}, Case{"D2D", 5, 1e-10}}) {
    for (Scheme scheme : {Scheme::FD2, Scheme::Q1FE}) {
      CAPTURE(c.group);
      CAPTURE(c.n);
      const PointGroup g = builtin_group(c.group);
      const SymmetricGrid grid = grid_for(g, c.n);
      const OrbitMap orbits(grid, g);
      const Problem p = problem_for(g);
      const FullSystem full = assemble_full(p, grid, {scheme});
      for (int nu = 1; nu <= g.num_irreps(); ++nu) {
        const ReducedSystem red = assemble_reduced(p, grid, {scheme}, orbits, g, nu);
        const SabSet sab = construct_sab(grid, orbits, g, nu);
        const EquivalenceReport rep = verify_equivalence(red, sab, full, g);
        CHECK(rep.a_deviation <= c.tol);
        CHECK(rep.b_deviation <= c.tol);
        CHECK(rep.spectra_match);
      }
    }
  }
}

TEST_CASE("SAB eigenvectors map onto reduced-system eigenvectors") {
  const PointGroup g = builtin_group("D4");
  const SymmetricGrid grid = grid_for(g, 5);
  const OrbitMap orbits(grid, g);
  const Problem p = problem_for(g);
  const FullSystem full = assemble_full(p, grid, {Scheme::FD2});
  const ReducedSystem red = assemble_reduced(p, grid, {Scheme::FD2}, orbits, g, 5);
  const SabSet sab = construct_sab(grid, orbits, g, 5);
  Eigen::MatrixXd a_sab, b_sab;
  sab_matrices(sab, full, a_sab, b_sab);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a_sab, b_sab);
  const Eigen::MatrixXd a(red.A);
  for (int i = 0; i < 4; ++i) {
    const Eigen::VectorXd u = sab_to_reduced(sab, g, es.eigenvectors().col(i));
    CHECK((a * u - es.eigenvalues()(i) * u).norm() <= 1e-10 * u.norm());
  }
}

TEST_CASE("mismatched inputs are rejected") {
  const PointGroup g = builtin_group("D4");
  const SymmetricGrid grid = grid_for(g, 5);
  const OrbitMap orbits(grid, g);
  const Problem p = problem_for(g);
  const ReducedSystem red = assemble_reduced(p, grid, {Scheme::FD2}, orbits, g, 5);
  const SabSet sab = construct_sab(grid, orbits, g, 1);
  try {
    (void)verify_equivalence(red, sab, p, grid, {Scheme::FD2}, g);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
  // one-dimensional irreps have no independent second column
  CHECK_THROWS_AS(select_partner_element(g, 1, 1), Error);
}
