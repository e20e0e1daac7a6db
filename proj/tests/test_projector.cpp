#include <doctest.h>

#include "symdecomp/error.hpp"
#include "symdecomp/projector.hpp"

#include <random>

using namespace symdecomp;

namespace {

GridFunction random_function(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  GridFunction f(n);
  for (int i = 0; i < n; ++i) f(i) = dist(rng);
  return f;
}

SymmetricGrid grid_for(const PointGroup& g) {
  return g.dim() == 2 ? build_grid(2, 1.0, {7, 7}) : build_grid(3, 1.0, {5, 5, 5});
}

}  // namespace

TEST_CASE("trivial projector averages over the orbit") {
  const PointGroup g = builtin_group("EXAMPLE2D");
  const SymmetricGrid grid = build_grid(2, 1.0, {3, 3});
  const OrbitMap orbits(grid, g);
  GridFunction delta = GridFunction::Zero(4);
  delta(0) = 1.0;
  const GridFunction p = apply_projector(projector_coefficients(g, 1, 1, 1), delta, orbits);
  for (int k = 0; k < 4; ++k) CHECK(p(k) == doctest::Approx(0.25));
}

TEST_CASE("f = x belongs to the irrep odd under sigma_y and I") {
  const PointGroup g = builtin_group("EXAMPLE2D");
  const SymmetricGrid grid = build_grid(2, 1.0, {7, 7});
  const OrbitMap orbits(grid, g);
  const GridFunction f = sample(grid, [](const Eigen::VectorXd& x) { return x(0); });
  for (int nu = 1; nu <= 4; ++nu) {
    const GridFunction p = apply_projector(projector_coefficients(g, nu, 1, 1), f, orbits);
    const double expect = nu == 2 ? 1.0 : 0.0;
    CHECK((p - expect * f).norm() <= 1e-13);
  }
}

TEST_CASE("projector algebra holds on random functions for every group") {
  std::mt19937_64 rng(7);
  for (const auto& name : builtin_group_names()) {
    CAPTURE(name);
    const PointGroup g = builtin_group(name);
    const SymmetricGrid grid = grid_for(g);
    const OrbitMap orbits(grid, g);
    for (int trial = 0; trial < 5; ++trial) {
      const GridFunction f = random_function(grid.size(), rng);
      const GridFunction h = random_function(grid.size(), rng);
      GridFunction sum = GridFunction::Zero(grid.size());
      for (int nu = 1; nu <= g.num_irreps(); ++nu) {
        const int d = g.irrep(nu).dim;
        for (int m = 1; m <= d; ++m) {
          for (int l = 1; l <= d; ++l) {
            const auto pml = projector_coefficients(g, nu, m, l);
            const auto plm = projector_coefficients(g, nu, l, m);
            // adjoint
            CHECK(std::abs(inner(apply_projector(pml, f, orbits), h) - inner(f, apply_projector(plm, h, orbits))) <= 1e-10);
            // products
            const GridFunction pf = apply_projector(pml, f, orbits);
            for (int nu2 = 1; nu2 <= g.num_irreps(); ++nu2) {
              const int d2 = g.irrep(nu2).dim;
              for (int m2 = 1; m2 <= d2; ++m2)
                for (int l2 = 1; l2 <= d2; ++l2) {
                  const GridFunction lhs = apply_projector(projector_coefficients(g, nu2, m2, l2), pf, orbits);
                  GridFunction rhs = GridFunction::Zero(grid.size());
                  if (nu2 == nu && l2 == m) rhs = apply_projector(projector_coefficients(g, nu, m2, l), f, orbits);
                  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
                }
            }
          }
          sum += apply_projector(projector_coefficients(g, nu, m, m), f, orbits);
        }
      }
      CHECK((sum - f).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("operations compose like group elements") {
  std::mt19937_64 rng(3);
  const PointGroup g = builtin_group("D2D");
  const SymmetricGrid grid = grid_for(g);
  const OrbitMap orbits(grid, g);
  const GridFunction f = random_function(grid.size(), rng);
  for (int r = 0; r < g.order(); ++r)
    for (int s = 0; s < g.order(); ++s) {
      const GridFunction lhs = apply_operation(r, apply_operation(s, f, orbits), orbits);
      const GridFunction rhs = apply_operation(g.product(r, s), f, orbits);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("size mismatch is rejected") {
  const PointGroup g = builtin_group("EXAMPLE2D");
  const OrbitMap orbits(build_grid(2, 1.0, {3, 3}), g);
  CHECK_THROWS_AS(apply_operation(1, GridFunction::Zero(5), orbits), Error);
}
