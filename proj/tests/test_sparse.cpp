#include <doctest.h>

#include "symdecomp/error.hpp"
#include "symdecomp/sparse.hpp"

#include <random>
#include <sstream>

using namespace symdecomp;

namespace {

SparseSym random_symmetric(int n, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.0, 1.0);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 4.0 + u(rng));
    for (int j = 0; j < i; ++j) {
      if (p(rng) < density) {
        const double v = u(rng);
        t.emplace_back(i, j, v);
        t.emplace_back(j, i, v);
      }
    }
  }
  SparseSym a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  return a;
}

}  // namespace

TEST_CASE("Matrix Market round trip is exact") {
  std::mt19937_64 rng(11);
  const SparseSym a = random_symmetric(40, 0.1, rng);
  std::stringstream ss;
  write_matrix_market(a, ss);
  const std::string text = ss.str();
  CHECK(text.rfind("%%MatrixMarket matrix coordinate real symmetric\n", 0) == 0);
  const SparseSym b = read_matrix_market(ss);
  CHECK(b.rows() == 40);
  CHECK(Eigen::MatrixXd(a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Matrix Market general files are accepted and bad headers rejected") {
  std::istringstream general("%%MatrixMarket matrix coordinate real general\n% comment\n2 2 3\n1 1 2.0\n1 2 -1\n2 1 -1\n");
  const SparseSym a = read_matrix_market(general);
  CHECK(a.coeff(0, 1) == -1.0);
  CHECK(a.coeff(1, 1) == 0.0);
  std::istringstream bad("%%MatrixMarket matrix array real general\n2 2\n");
  CHECK_THROWS_AS(read_matrix_market(bad), Error);
}

TEST_CASE("spmv matches Eigen and is thread-count independent") {
  std::mt19937_64 rng(5);
  const SparseSym a = random_symmetric(6000, 0.001, rng);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(6000, -1.0, 2.0);
  Eigen::VectorXd y1, y3;
  spmv(a, x, y1, 1);
  spmv(a, x, y3, 3);
  CHECK((y1 - y3).cwiseAbs().maxCoeff() == 0.0);
  CHECK((y1 - a * x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("symmetry deviation and identity detection") {
  SparseSym a(3, 3);
  a.setIdentity();
  a.makeCompressed();
  CHECK(is_identity(a));
  CHECK(symmetry_deviation(a) == 0.0);
  a.coeffRef(0, 2) = 0.5;
  CHECK_FALSE(is_identity(a));
  CHECK(symmetry_deviation(a) == doctest::Approx(0.5));
}
