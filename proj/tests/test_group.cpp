#include <doctest.h>

#include "symdecomp/error.hpp"
#include "symdecomp/group.hpp"

#include <algorithm>
#include <cmath>

using namespace symdecomp;

TEST_CASE("all built-in groups satisfy the axioms exactly") {
  for (const auto& name : builtin_group_names()) {
    CAPTURE(name);
    const PointGroup g = builtin_group(name);
    const AxiomReport r = verify_group_axioms(g);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
    CHECK(r.dimension_square_sum == g.order());
    CHECK(r.max_homomorphism_deviation <= 1e-12);
    CHECK(r.max_orthogonality_deviation <= 1e-12);
  }
}

TEST_CASE("group orders and subproblem counts") {
  CHECK(builtin_group("EXAMPLE2D").order() == 4);
  CHECK(builtin_group("EXAMPLE2D").num_subproblems() == 4);
  CHECK(builtin_group("D2").order() == 4);
  CHECK(builtin_group("D2H").num_subproblems() == 8);
  CHECK(builtin_group("D4").num_irreps() == 5);
  CHECK(builtin_group("D4").num_subproblems() == 6);
  CHECK(builtin_group("D2D").num_subproblems() == 6);
  CHECK(builtin_group("D4").irrep(5).dim == 2);
}

TEST_CASE("group names are case insensitive and unknown names rejected") {
  CHECK(builtin_group("d2h").name() == "D2H");
  try {
    (void)builtin_group("C3V");
    FAIL("expected UnknownGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownGroup);
  }
}

TEST_CASE("multiplication table: identity row and inverses") {
  for (const auto& name : builtin_group_names()) {
    const PointGroup g = builtin_group(name);
    CHECK(g.identity() == 0);
    for (int i = 0; i < g.order(); ++i) {
      CHECK(g.product(0, i) == i);
      CHECK(g.product(i, g.inverse(i)) == 0);
    }
  }
}

TEST_CASE("D4 table: C4y squares to C2y and C2c C2d compose to C2y") {
  const PointGroup g = builtin_group("D4");
  const int c4 = g.find("C4y");
  REQUIRE(c4 >= 0);
  CHECK(g.product(c4, c4) == g.find("C2y"));
  CHECK(g.product(g.find("C2c"), g.find("C2d")) == g.find("C2y"));
}

TEST_CASE("great orthogonality on a hand-picked tuple") {
  const PointGroup g = builtin_group("D4");
  // Σ_R Γ5(R)_11 Γ5(R)_11 = g / d = 4
  CHECK(orthogonality_sum(g, 5, 1, 1, 5, 1, 1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(std::abs(orthogonality_sum(g, 5, 1, 1, 5, 1, 2)) <= 1e-14);
  CHECK(std::abs(orthogonality_sum(g, 1, 1, 1, 3, 1, 1)) <= 1e-14);
  CHECK(orthogonality_sum(g, 2, 1, 1, 2, 1, 1) == doctest::Approx(8.0));
}

TEST_CASE("great orthogonality as a property over every tuple") {
  for (const auto& name : builtin_group_names()) {
    const PointGroup g = builtin_group(name);
    for (int a = 1; a <= g.num_irreps(); ++a) {
      for (int b = 1; b <= g.num_irreps(); ++b) {
        const int da = g.irrep(a).dim, db = g.irrep(b).dim;
        for (int m = 1; m <= da; ++m)
          for (int l = 1; l <= da; ++l)
            for (int m2 = 1; m2 <= db; ++m2)
              for (int l2 = 1; l2 <= db; ++l2) {
                const double expect = (a == b && m == m2 && l == l2) ? double(g.order()) / da : 0.0;
                CHECK(std::abs(orthogonality_sum(g, a, m, l, b, m2, l2) - expect) <= 1e-12);
              }
      }
    }
  }
}

TEST_CASE("a broken irrep is detected") {
  const PointGroup good = builtin_group("EXAMPLE2D");
  auto irreps = good.irreps();
  irreps[1].matrices[1](0, 0) = -irreps[1].matrices[1](0, 0);  // breaks Γ(σx)Γ(σy) = Γ(I)
  const PointGroup bad(good.name(), good.elements(), irreps);
  const AxiomReport r = verify_group_axioms(bad);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.homomorphism);
}

TEST_CASE("a set that is not closed is detected") {
  const PointGroup good = builtin_group("D2H");
  auto elements = good.elements();
  elements[1].matrix(0, 0) = 0.5;  // no longer orthogonal, products leave the set
  const PointGroup bad(good.name(), elements, good.irreps());
  const AxiomReport r = verify_group_axioms(bad);
  CHECK_FALSE(r.orthogonal);
  CHECK_FALSE(r.closure);
}

TEST_CASE("projector coefficients") {
  const PointGroup g = builtin_group("EXAMPLE2D");
  const auto p = projector_coefficients(g, 1, 1, 1);
  REQUIRE(p.coeffs.size() == 4);
  for (double c : p.coeffs) CHECK(c == doctest::Approx(0.25));
  CHECK_THROWS_AS(projector_coefficients(g, 5, 1, 1), Error);
  CHECK_THROWS_AS(projector_coefficients(g, 1, 2, 1), Error);
  CHECK_THROWS_AS(projector_coefficients(g, 0, 1, 1), Error);
}
