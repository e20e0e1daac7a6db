#include <doctest.h>

#include "symdecomp/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>

using namespace symdecomp;

namespace {

SubproblemSpectrum fake_spectrum(int nu, std::vector<double> values) {
  SubproblemSpectrum s;
  s.nu = nu;
  s.eigenvalues = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  s.eigenvectors = Eigen::MatrixXd::Zero(1, static_cast<Eigen::Index>(values.size()));
  s.residuals.assign(values.size(), 0.0);
  return s;
}

}  // namespace

TEST_CASE("default redundancy and per-subproblem counts") {
  CHECK(default_extra(10, 8) == 5);
  CHECK(default_extra(1000, 8) == 25);
  CHECK(eigenvalues_per_subproblem(10, 8, 5) == 7);
  CHECK(eigenvalues_per_subproblem(110, 8, 8) == 22);
}

TEST_CASE("merging a single subproblem is the identity") {
  const auto m = merge_spectra({fake_spectrum(1, {1.0, 2.0, 3.0})}, {1}, 3);
  REQUIRE(m.entries.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(m.entries[static_cast<std::size_t>(i)].lambda == i + 1.0);
    CHECK(m.entries[static_cast<std::size_t>(i)].nu == 1);
  }
  CHECK(m.leftover[0] == 0);
  CHECK_FALSE(m.incomplete);
}

TEST_CASE("two-dimensional subproblems are replicated with l = 1, 2") {
  const auto m = merge_spectra({fake_spectrum(1, {1.0, 4.0}), fake_spectrum(5, {2.0, 3.0})}, {1, 2}, 5);
  REQUIRE(m.entries.size() == 5);
  CHECK(m.entries[1].nu == 5);
  CHECK(m.entries[1].l == 1);
  CHECK(m.entries[2].nu == 5);
  CHECK(m.entries[2].l == 2);
  CHECK(m.entries[2].lambda == 2.0);
  CHECK(m.leftover[0] == 1);
  CHECK(m.leftover[1] == 0);
}

TEST_CASE("ties are broken by irrep then column") {
  const auto m = merge_spectra({fake_spectrum(3, {1.0}), fake_spectrum(2, {1.0})}, {1, 1}, 2);
  CHECK(m.entries[0].nu == 2);
  CHECK(m.entries[1].nu == 3);
}

TEST_CASE("asking for more than is available flags the merge incomplete") {
  const auto m = merge_spectra({fake_spectrum(1, {1.0})}, {1}, 2);
  CHECK(m.incomplete);
}

TEST_CASE("decomposed FD spectrum equals the dense full spectrum") {
  const Problem p = oscillator_problem(3, 5.0);
  const SymmetricGrid grid = build_grid(3, 5.0, {9, 9, 9});
  const FullSystem full = assemble_full(p, grid, {Scheme::FD2});
  const SubproblemSpectrum dense = solve_dense(full.A, &full.B);
  for (const char* name : {"D2H", "D4", "D2D", "D2"}) {
    CAPTURE(name);
    const PointGroup g = builtin_group(name);
    const DecomposedResult r = solve_decomposed(p, grid, {Scheme::FD2}, g, 20);
    REQUIRE(r.merged.entries.size() == 20);
    CHECK_FALSE(r.merged.incomplete);
    for (int i = 0; i < 20; ++i) {
      CHECK(std::abs(r.merged.entries[static_cast<std::size_t>(i)].lambda - dense.eigenvalues(i)) <= 1e-8 * dense.eigenvalues(i));
    }
    const OrbitMap orbits(grid, g);
    CHECK(lifted_orthogonality(r, orbits, g) <= 1e-8);
  }
}

TEST_CASE("decomposed Q1FE spectrum equals the direct Lanczos spectrum") {
  const Problem p = oscillator_problem(3, 5.0);
  const SymmetricGrid grid = build_grid(3, 5.0, {11, 11, 11});
  const PointGroup g = builtin_group("D4");
  const DecomposedResult r = solve_decomposed(p, grid, {Scheme::Q1FE}, g, 10);
  const SubproblemSpectrum direct = solve_direct(p, grid, {Scheme::Q1FE}, 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(r.merged.entries[static_cast<std::size_t>(i)].lambda - direct.eigenvalues(i)) <= 1e-8 * direct.eigenvalues(i));
  }
}

TEST_CASE("ground state of the oscillator is totally symmetric") {
  const Problem p = oscillator_problem(3, 5.0);
  const SymmetricGrid grid = build_grid(3, 5.0, {9, 9, 9});
  const DecomposedResult r = solve_decomposed(p, grid, {Scheme::FD2}, builtin_group("D2H"), 1);
  REQUIRE(r.merged.entries.size() == 1);
  CHECK(r.merged.entries[0].nu == 1);
  CHECK(r.merged.entries[0].l == 1);
}

TEST_CASE("results do not depend on the thread budget") {
  const Problem p = oscillator_problem(3, 5.0);
  const SymmetricGrid grid = build_grid(3, 5.0, {11, 11, 11});
  const PointGroup g = builtin_group("D2D");
  DecomposeOptions one, many;
  many.threads = 6;
  const auto a = solve_decomposed(p, grid, {Scheme::FD2}, g, 10, one);
  const auto b = solve_decomposed(p, grid, {Scheme::FD2}, g, 10, many);
  for (int i = 0; i < 10; ++i) {
    CHECK(a.merged.entries[static_cast<std::size_t>(i)].lambda == b.merged.entries[static_cast<std::size_t>(i)].lambda);
    CHECK(a.merged.entries[static_cast<std::size_t>(i)].nu == b.merged.entries[static_cast<std::size_t>(i)].nu);
  }
}

TEST_CASE("the re-solve policy runs when a subproblem has no leftover eigenvalue") {
  // With n_a = 0 and 8 subproblems each asked for ⌈16/8⌉ = 2 values, the
  // trivial subproblem's two values are both inside the cut.
  const Problem p = oscillator_problem(3, 5.0);
  const SymmetricGrid grid = build_grid(3, 5.0, {9, 9, 9});
  DecomposeOptions opt;
  opt.extra = 0;
  const auto r = solve_decomposed(p, grid, {Scheme::FD2}, builtin_group("D2H"), 16, opt);
  CHECK(r.resolve_rounds >= 1);
  const FullSystem full = assemble_full(p, grid, {Scheme::FD2});
  const SubproblemSpectrum dense = solve_dense(full.A, nullptr);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(r.merged.entries[static_cast<std::size_t>(i)].lambda - dense.eigenvalues(i)) <= 1e-8 * dense.eigenvalues(i));
}

TEST_CASE("spectral separation of the 2D Laplacian under EXAMPLE2D") {
  const Problem p = laplacian_problem(2, 1.0);
  const SymmetricGrid grid = build_grid(2, 1.0, {31, 31});
  const PointGroup g = builtin_group("EXAMPLE2D");
  const OrbitMap orbits(grid, g);
  const DecomposedResult r = solve_decomposed(p, grid, {Scheme::FD2}, g, 4);
  // the double pair lands in two different subproblems, neither trivial
  REQUIRE(r.merged.entries.size() == 4);
  CHECK(r.merged.entries[1].nu != r.merged.entries[2].nu);
  CHECK(r.merged.entries[1].nu != 1);
  CHECK(r.merged.entries[2].nu != 1);
  const double pair = r.merged.entries[1].lambda;
  const ReducedSystem trivial = assemble_reduced(p, grid, {Scheme::FD2}, orbits, g, 1);
  const SubproblemSpectrum all = solve_dense(trivial.A, nullptr);
  for (int i = 0; i < all.eigenvalues.size(); ++i) CHECK(std::abs(all.eigenvalues(i) - pair) > 0.1 * pair);
}
