#include <doctest.h>

#include "symdecomp/error.hpp"
#include "symdecomp/grid.hpp"

#include <cmath>
#include <set>
#include <sstream>

using namespace symdecomp;

TEST_CASE("grid geometry") {
  const SymmetricGrid g = build_grid(2, 1.0, {3, 3});
  CHECK(g.size() == 4);
  CHECK(g.spacing(0) == doctest::Approx(2.0 / 3.0));
  CHECK(g.coordinate(0, 0) == doctest::Approx(-1.0 / 3.0));
  CHECK(g.coordinate(0, 1) == doctest::Approx(1.0 / 3.0));
  // first axis slowest
  CHECK(g.node(1)(0) == doctest::Approx(-1.0 / 3.0));
  CHECK(g.node(1)(1) == doctest::Approx(1.0 / 3.0));
  for (int k = 0; k < g.size(); ++k) CHECK(g.locate(g.node(k)) == k);
  Eigen::VectorXd off(2);
  off << 0.0, 1.0 / 3.0;
  CHECK(g.locate(off) == -1);
}

TEST_CASE("even partitions are rejected") {
  try {
    (void)build_grid(3, 5.0, {21, 20, 21});
    FAIL("expected EvenPartitionRejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenPartitionRejected);
  }
}

TEST_CASE("orbits partition the grid with N0 = N/g") {
  for (const auto& name : builtin_group_names()) {
    CAPTURE(name);
    const PointGroup group = builtin_group(name);
    const SymmetricGrid grid = group.dim() == 2 ? build_grid(2, 1.0, {7, 7}) : build_grid(3, 1.0, {5, 5, 5});
    const OrbitMap orbits = orbit_decomposition(grid, group);
    CHECK(orbits.num_orbits() * group.order() == grid.size());
    std::set<int> seen;
    for (int j = 0; j < orbits.num_orbits(); ++j) {
      if (j > 0) CHECK(orbits.rep(j) > orbits.rep(j - 1));
      for (int r = 0; r < group.order(); ++r) {
        const int node = orbits.action(r, j);
        CHECK(node >= orbits.rep(j));  // representative is the smallest index
        CHECK(orbits.orbit_of(node) == j);
        CHECK(orbits.element_of(node) == r);
        seen.insert(node);
      }
    }
    CHECK(static_cast<int>(seen.size()) == grid.size());
  }
}

TEST_CASE("image table follows the group product") {
  const PointGroup group = builtin_group("D4");
  const SymmetricGrid grid = build_grid(3, 1.0, {5, 5, 5});
  const OrbitMap orbits(grid, group);
  for (int r = 0; r < group.order(); ++r)
    for (int s = 0; s < group.order(); ++s)
      for (int k = 0; k < grid.size(); k += 7) CHECK(orbits.image(r, orbits.image(s, k)) == orbits.image(group.product(r, s), k));
}

TEST_CASE("a grid that is not invariant under the group is rejected") {
  const PointGroup d4 = builtin_group("D4");
  const SymmetricGrid grid = build_grid(3, 1.0, {5, 7, 7});  // C4y swaps x and z
  try {
    (void)orbit_decomposition(grid, d4);
    FAIL("expected GridNotInvariant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridNotInvariant);
  }
}

TEST_CASE("a node on a symmetry element is rejected") {
  // Diagonal mirror x <-> y fixes the nodes with x = y.
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  std::vector<SymmetryOperation> ops = {{"E", Eigen::MatrixXd::Identity(2, 2)}, {"sd", swap}};
  Irrep a1{1, 1, {Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)}};
  Irrep a2{2, 1, {Eigen::MatrixXd::Ones(1, 1), -Eigen::MatrixXd::Ones(1, 1)}};
  const PointGroup group("CS_DIAG", ops, {a1, a2});
  REQUIRE(verify_group_axioms(group).ok());
  try {
    (void)orbit_decomposition(build_grid(2, 1.0, {5, 5}), group);
    FAIL("expected SymmetryElementNode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SymmetryElementNode);
  }
}

TEST_CASE("the discrete Fourier transform of a symmetric function is symmetric") {
  const PointGroup group = builtin_group("D4");
  const SymmetricGrid grid = build_grid(3, 2.0, {5, 5, 5});
  const GridFunction sym = sample(grid, [](const Eigen::VectorXd& x) { return std::exp(-x.squaredNorm()); });
  const GridFunction skew = sample(grid, [](const Eigen::VectorXd& x) { return x(0) + 0.3 * x(1) * x(1); });
  for (const auto& op : group.elements()) {
    CHECK(fourier_invariance_check(grid, sym, op) <= 1e-12);
  }
  CHECK(fourier_invariance_check(grid, skew, group.element(group.find("C4y"))) > 1e-3);
}

TEST_CASE("node list output") {
  const SymmetricGrid g = build_grid(2, 1.0, {3, 3});
  std::ostringstream out;
  write_node_list(g, out);
  const std::string s = out.str();
  CHECK(s.rfind("# index x y\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);
}
