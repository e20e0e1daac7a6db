#include "symdecomp/group.hpp"

#include "symdecomp/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace symdecomp {

namespace {

bool matrices_match(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

int match_element(const std::vector<SymmetryOperation>& elements, const Eigen::MatrixXd& m) {
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (matrices_match(elements[k].matrix, m, PointGroup::kMatchTolerance)) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

Eigen::MatrixXd mat3(std::initializer_list<double> v) {
  Eigen::MatrixXd m(3, 3);
  auto it = v.begin();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = *it++;
  }
  return m;
}

Eigen::MatrixXd diag3(double a, double b, double c) { return mat3({a, 0, 0, 0, b, 0, 0, 0, c}); }

/// Rotation by π about the unit axis n: 2nnᵀ − I.
Eigen::MatrixXd half_turn(const Eigen::Vector3d& axis) {
  const Eigen::Vector3d n = axis.normalized();
  return 2.0 * n * n.transpose() - Eigen::Matrix3d::Identity();
}

Irrep one_dimensional(int index, const std::vector<double>& characters) {
  Irrep irrep;
  irrep.index = index;
  irrep.dim = 1;
  for (double c : characters) irrep.matrices.push_back(Eigen::MatrixXd::Constant(1, 1, c));
  return irrep;
}

std::vector<Irrep> one_dimensional_table(const std::vector<std::vector<double>>& rows) {
  std::vector<Irrep> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(one_dimensional(static_cast<int>(i + 1), rows[i]));
  return out;
}

// 2×2 blocks S1..S8 of the two-dimensional D4/D2d representation.
const Eigen::MatrixXd& s_block(int k) {
  static const std::vector<Eigen::MatrixXd> blocks = {
      mat2(1, 0, 0, 1), mat2(-1, 0, 0, -1), mat2(0, -1, 1, 0), mat2(0, 1, -1, 0),
      mat2(1, 0, 0, -1), mat2(-1, 0, 0, 1), mat2(0, 1, 1, 0),  mat2(0, -1, -1, 0)};
  return blocks.at(static_cast<std::size_t>(k - 1));
}

// Rows of the four one-dimensional irreps shared by D4 and D2d.
const std::vector<std::vector<double>> kDihedral8Rows = {
    {1, 1, 1, 1, 1, 1, 1, 1},
    {1, 1, -1, -1, 1, 1, -1, -1},
    {1, 1, 1, 1, -1, -1, -1, -1},
    {1, 1, -1, -1, -1, -1, 1, 1},
};

PointGroup make_example2d() {
  std::vector<SymmetryOperation> ops = {
      {"E", mat2(1, 0, 0, 1)},
      {"sigma_x", mat2(1, 0, 0, -1)},  // reflection about the x-axis
      {"sigma_y", mat2(-1, 0, 0, 1)},  // reflection about the y-axis
      {"I", mat2(-1, 0, 0, -1)},
  };
  auto irreps = one_dimensional_table({
      {1, 1, 1, 1},
      {1, 1, -1, -1},
      {1, -1, -1, 1},
      {1, -1, 1, -1},
  });
  return PointGroup("EXAMPLE2D", std::move(ops), std::move(irreps));
}

PointGroup make_d2() {
  std::vector<SymmetryOperation> ops = {
      {"E", diag3(1, 1, 1)},
      {"C2x", diag3(1, -1, -1)},
      {"C2y", diag3(-1, 1, -1)},
      {"C2z", diag3(-1, -1, 1)},
  };
  auto irreps = one_dimensional_table({
      {1, 1, 1, 1},
      {1, 1, -1, -1},
      {1, -1, 1, -1},
      {1, -1, -1, 1},
  });
  return PointGroup("D2", std::move(ops), std::move(irreps));
}

// The second and third two-fold axes sit on coordinate axes so that every
// mirror plane is a coordinate plane.
PointGroup make_d2h() {
  const Eigen::MatrixXd c2x = diag3(1, -1, -1);
  const Eigen::MatrixXd c2y = diag3(-1, 1, -1);
  const Eigen::MatrixXd c2z = diag3(-1, -1, 1);
  const Eigen::MatrixXd inv = diag3(-1, -1, -1);
  std::vector<SymmetryOperation> ops = {
      {"E", diag3(1, 1, 1)}, {"C2x", c2x},        {"C2y", c2y},        {"C2z", c2z},
      {"I", inv},            {"IC2x", inv * c2x}, {"IC2y", inv * c2y}, {"IC2z", inv * c2z},
  };
  auto irreps = one_dimensional_table({
      {1, 1, 1, 1, 1, 1, 1, 1},
      {1, 1, -1, -1, 1, 1, -1, -1},
      {1, -1, 1, -1, 1, -1, 1, -1},
      {1, -1, -1, 1, 1, -1, -1, 1},
      {1, 1, 1, 1, -1, -1, -1, -1},
      {1, 1, -1, -1, -1, -1, 1, 1},
      {1, -1, 1, -1, -1, 1, -1, 1},
      {1, -1, -1, 1, -1, 1, 1, -1},
  });
  return PointGroup("D2H", std::move(ops), std::move(irreps));
}

// C4y acts on (x, z) as S3: (x, z) -> (-z, x).
Eigen::MatrixXd c4y() { return mat3({0, 0, -1, 0, 1, 0, 1, 0, 0}); }

PointGroup make_d4() {
  const Eigen::MatrixXd c4 = c4y();
  std::vector<SymmetryOperation> ops = {
      {"E", diag3(1, 1, 1)},
      {"C2y", diag3(-1, 1, -1)},
      {"C4y", c4},
      {"C4y^-1", c4.transpose()},
      {"C2x", diag3(1, -1, -1)},
      {"C2z", diag3(-1, -1, 1)},
      {"C2c", half_turn(Eigen::Vector3d(1, 0, 1))},
      {"C2d", half_turn(Eigen::Vector3d(-1, 0, 1))},
  };
  auto irreps = one_dimensional_table(kDihedral8Rows);
  Irrep two;
  two.index = 5;
  two.dim = 2;
  for (int k = 1; k <= 8; ++k) two.matrices.push_back(s_block(k));
  irreps.push_back(std::move(two));
  return PointGroup("D4", std::move(ops), std::move(irreps));
}

PointGroup make_d2d() {
  const Eigen::MatrixXd c4 = c4y();
  const Eigen::MatrixXd inv = diag3(-1, -1, -1);
  std::vector<SymmetryOperation> ops = {
      {"E", diag3(1, 1, 1)},
      {"C2y", diag3(-1, 1, -1)},
      {"IC4y", inv * c4},
      {"IC4y^-1", inv * c4.transpose()},
      {"IC2x", inv * diag3(1, -1, -1)},
      {"IC2z", inv * diag3(-1, -1, 1)},
      {"C2c", half_turn(Eigen::Vector3d(1, 0, 1))},
      {"C2d", half_turn(Eigen::Vector3d(-1, 0, 1))},
  };
  auto irreps = one_dimensional_table(kDihedral8Rows);
  Irrep two;
  two.index = 5;
  two.dim = 2;
  const double signs[8] = {1, 1, -1, -1, -1, -1, 1, 1};
  for (int k = 0; k < 8; ++k) two.matrices.push_back(signs[k] * s_block(k + 1));
  irreps.push_back(std::move(two));
  return PointGroup("D2D", std::move(ops), std::move(irreps));
}

}  // namespace

PointGroup::PointGroup(std::string name, std::vector<SymmetryOperation> elements, std::vector<Irrep> irreps)
    : name_(std::move(name)), elements_(std::move(elements)), irreps_(std::move(irreps)) {
  const int g = order();
  table_.assign(static_cast<std::size_t>(g * g), -1);
  inverse_.assign(static_cast<std::size_t>(g), -1);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      table_[static_cast<std::size_t>(i * g + j)] =
          match_element(elements_, elements_[i].matrix * elements_[j].matrix);
    }
  }
  if (g > 0) {
    identity_ = match_element(elements_, Eigen::MatrixXd::Identity(dim(), dim()));
  }
  if (identity_ >= 0) {
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        if (product(i, j) == identity_) {
          inverse_[static_cast<std::size_t>(i)] = j;
          break;
        }
      }
    }
  }
}

int PointGroup::num_subproblems() const {
  int total = 0;
  for (const auto& irrep : irreps_) total += irrep.dim;
  return total;
}

const Irrep& PointGroup::irrep(int nu) const {
  if (nu < 1 || nu > num_irreps()) {
    throw Error(ErrorCode::BadIrrepIndex, "irrep " + std::to_string(nu) + " not in 1.." + std::to_string(num_irreps()));
  }
  return irreps_[static_cast<std::size_t>(nu - 1)];
}

int PointGroup::find(std::string_view label) const {
  for (int i = 0; i < order(); ++i) {
    if (elements_[static_cast<std::size_t>(i)].label == label) return i;
  }
  return -1;
}

const std::vector<std::string>& builtin_group_names() {
  static const std::vector<std::string> names = {"EXAMPLE2D", "D2", "D2H", "D4", "D2D"};
  return names;
}

PointGroup builtin_group(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "EXAMPLE2D") return make_example2d();
  if (upper == "D2") return make_d2();
  if (upper == "D2H") return make_d2h();
  if (upper == "D4") return make_d4();
  if (upper == "D2D") return make_d2d();
  throw Error(ErrorCode::UnknownGroup, std::string(name));
}

AxiomReport verify_group_axioms(const PointGroup& group) {
  AxiomReport report;
  const int g = group.order();
  auto fail = [&report](bool& flag, const std::string& message) {
    flag = false;
    report.failures.push_back(message);
  };

  for (int i = 0; i < g; ++i) {
    const auto& op = group.element(i);
    const Eigen::MatrixXd& m = op.matrix;
    const double dev = (m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
    const double det = m.determinant();
    if (dev > 1e-12 || std::abs(std::abs(det) - 1.0) > 1e-12) {
      fail(report.orthogonal, "element " + op.label + " is not orthogonal");
    }
  }

  if (group.identity() < 0) fail(report.identity, "no identity element");

  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      if (group.product(i, j) < 0) {
        fail(report.closure, "product " + group.element(i).label + "*" + group.element(j).label + " not in group");
      }
    }
  }
  for (int i = 0; i < g; ++i) {
    if (group.inverse(i) < 0) fail(report.inverses, "element " + group.element(i).label + " has no inverse");
  }
  if (report.closure) {
    for (int i = 0; i < g && report.associativity; ++i) {
      for (int j = 0; j < g && report.associativity; ++j) {
        for (int k = 0; k < g; ++k) {
          if (group.product(group.product(i, j), k) != group.product(i, group.product(j, k))) {
            fail(report.associativity, "table not associative");
            break;
          }
        }
      }
    }
  }

  for (const auto& irrep : group.irreps()) report.dimension_square_sum += irrep.dim * irrep.dim;
  if (report.dimension_square_sum != g) {
    fail(report.dimension_sum, "sum of squared irrep dimensions is " + std::to_string(report.dimension_square_sum) +
                                   ", group order is " + std::to_string(g));
  }

  for (const auto& irrep : group.irreps()) {
    if (static_cast<int>(irrep.matrices.size()) != g) {
      fail(report.homomorphism, "irrep " + std::to_string(irrep.index) + " has wrong number of matrices");
      continue;
    }
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(irrep.dim, irrep.dim);
    double worst = 0.0;
    for (const auto& m : irrep.matrices) worst = std::max(worst, (m.transpose() * m - eye).cwiseAbs().maxCoeff());
    if (group.identity() >= 0) {
      worst = std::max(worst, (irrep.matrices[static_cast<std::size_t>(group.identity())] - eye).cwiseAbs().maxCoeff());
    }
    if (report.closure) {
      for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
          const Eigen::MatrixXd lhs = irrep.matrices[static_cast<std::size_t>(i)] * irrep.matrices[static_cast<std::size_t>(j)];
          const Eigen::MatrixXd& rhs = irrep.matrices[static_cast<std::size_t>(group.product(i, j))];
          worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
      }
    }
    report.max_homomorphism_deviation = std::max(report.max_homomorphism_deviation, worst);
    if (worst > 1e-12 || !report.closure) {
      fail(report.homomorphism, "irrep " + std::to_string(irrep.index) + " is not an orthogonal homomorphism");
    }
  }

  bool shapes_ok = report.homomorphism || report.closure;
  for (const auto& irrep : group.irreps()) shapes_ok = shapes_ok && static_cast<int>(irrep.matrices.size()) == g;
  if (shapes_ok) {
    report.max_orthogonality_deviation = verify_great_orthogonality(group);
    if (report.max_orthogonality_deviation > 1e-12) {
      std::ostringstream msg;
      msg << "great orthogonality deviation " << report.max_orthogonality_deviation;
      fail(report.irreps_orthogonal, msg.str());
    }
  } else {
    fail(report.irreps_orthogonal, "irrep matrices inconsistent with group order");
  }
  return report;
}

double orthogonality_sum(const PointGroup& group, int nu, int m, int l, int nu2, int m2, int l2) {
  const Irrep& a = group.irrep(nu);
  const Irrep& b = group.irrep(nu2);
  if (m < 1 || l < 1 || m > a.dim || l > a.dim || m2 < 1 || l2 < 1 || m2 > b.dim || l2 > b.dim) {
    throw Error(ErrorCode::BadIrrepIndex, "matrix index out of range");
  }
  double sum = 0.0;
  for (int r = 0; r < group.order(); ++r) sum += a.entry(r, m - 1, l - 1) * b.entry(r, m2 - 1, l2 - 1);
  return sum;
}

double verify_great_orthogonality(const PointGroup& group) {
  const int g = group.order();
  double worst = 0.0;
  for (const auto& a : group.irreps()) {
    for (const auto& b : group.irreps()) {
      for (int m = 1; m <= a.dim; ++m) {
        for (int l = 1; l <= a.dim; ++l) {
          for (int m2 = 1; m2 <= b.dim; ++m2) {
            for (int l2 = 1; l2 <= b.dim; ++l2) {
              const bool same = a.index == b.index && m == m2 && l == l2;
              const double expected = same ? static_cast<double>(g) / a.dim : 0.0;
              worst = std::max(worst, std::abs(orthogonality_sum(group, a.index, m, l, b.index, m2, l2) - expected));
            }
          }
        }
      }
    }
  }
  return worst;
}

ProjectorCoefficients projector_coefficients(const PointGroup& group, int nu, int m, int l) {
  const Irrep& irrep = group.irrep(nu);
  if (m < 1 || l < 1 || m > irrep.dim || l > irrep.dim) {
    throw Error(ErrorCode::BadIrrepIndex, "projector index (" + std::to_string(m) + "," + std::to_string(l) +
                                              ") out of range for irrep of dimension " + std::to_string(irrep.dim));
  }
  ProjectorCoefficients out;
  out.nu = nu;
  out.m = m;
  out.l = l;
  const double scale = static_cast<double>(irrep.dim) / group.order();
  out.coeffs.reserve(static_cast<std::size_t>(group.order()));
  for (int r = 0; r < group.order(); ++r) out.coeffs.push_back(scale * irrep.entry(r, m - 1, l - 1));
  return out;
}

}  // namespace symdecomp
