#include "symdecomp/sabasis.hpp"

#include "symdecomp/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace symdecomp {

namespace {

const Irrep& supported_irrep(const PointGroup& group, int nu, int k) {
  const Irrep& irrep = group.irrep(nu);
  if (irrep.dim > 2) throw Error(ErrorCode::UnsupportedIrrepDim, "SAB construction supports dν ≤ 2");
  if (k < 1 || k > irrep.dim) throw Error(ErrorCode::BadIrrepIndex, "column index out of range");
  return irrep;
}

}  // namespace

int select_partner_element(const PointGroup& group, int nu, int k) {
  const Irrep& irrep = group.irrep(nu);
  for (int s = 0; s < group.order(); ++s) {
    const int inv = group.inverse(s);
    for (int kp = 0; kp < irrep.dim; ++kp) {
      if (kp != k - 1 && std::abs(irrep.entry(inv, kp, k - 1)) > 1e-12) return s;
    }
  }
  throw Error(ErrorCode::NoIndependentColumn, "no element with an independent column for irrep " + std::to_string(nu));
}

SabSet construct_sab(const SymmetricGrid& grid, const OrbitMap& orbits, const PointGroup& group, int nu, int k) {
  const Irrep& irrep = supported_irrep(group, nu, k);
  if (orbits.grid_size() != grid.size()) throw Error(ErrorCode::IncompatibleGrid, "orbit map does not match grid");
  const int g = group.order();
  const int d = irrep.dim;
  const int n0 = orbits.num_orbits();
  const double scale = static_cast<double>(d) / g;

  SabSet sab;
  sab.nu = nu;
  sab.k = k;
  sab.irrep_dim = d;
  sab.num_orbits = n0;
  sab.basis = Eigen::MatrixXd::Zero(d * n0, grid.size());
  for (int j = 0; j < n0; ++j) {
    // 𝒫kk φ_j = (d/g) Σ_R Γ(R)_kk φ at R x_j
    for (int r = 0; r < g; ++r) sab.basis(j, orbits.action(r, j)) += scale * irrep.entry(r, k - 1, k - 1);
  }
  if (d == 2) {
    sab.partner = select_partner_element(group, nu, k);
    for (int j = 0; j < n0; ++j) {
      // 𝒫kk P_S φ_j = (d/g) Σ_R Γ(R)_kk φ at (RS) x_j
      for (int r = 0; r < g; ++r) {
        sab.basis(n0 + j, orbits.action(group.product(r, sab.partner), j)) += scale * irrep.entry(r, k - 1, k - 1);
      }
    }
  }
  return sab;
}

int numerical_rank(const Eigen::MatrixXd& rows) {
  if (rows.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(rows.transpose());
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

int rank_of_projected_set(const SymmetricGrid& grid, const OrbitMap& orbits, const PointGroup& group, int nu, int k) {
  const Irrep& irrep = group.irrep(nu);
  if (k < 1 || k > irrep.dim) throw Error(ErrorCode::BadIrrepIndex, "column index out of range");
  const int g = group.order();
  const int n0 = orbits.num_orbits();
  const double scale = static_cast<double>(irrep.dim) / g;
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(g * n0, grid.size());
  for (int s = 0; s < g; ++s) {
    for (int j = 0; j < n0; ++j) {
      for (int r = 0; r < g; ++r) rows(s * n0 + j, orbits.action(group.product(r, s), j)) += scale * irrep.entry(r, k - 1, k - 1);
    }
  }
  return numerical_rank(rows);
}

void sab_matrices(const SabSet& sab, const FullSystem& full, Eigen::MatrixXd& a_sab, Eigen::MatrixXd& b_sab) {
  if (sab.basis.cols() != full.A.rows()) throw Error(ErrorCode::ShapeMismatch, "SAB and full system sizes differ");
  const Eigen::MatrixXd phi_t = sab.basis.transpose();
  a_sab = sab.basis * (full.A * phi_t);
  b_sab = sab.basis * (full.B * phi_t);
}

Eigen::MatrixXd left_transform(const SabSet& sab, const PointGroup& group) {
  const int n0 = sab.num_orbits;
  if (sab.irrep_dim == 1) return Eigen::MatrixXd::Identity(n0, n0);
  const Irrep& irrep = group.irrep(sab.nu);
  const int kk = sab.k - 1;
  const int other = 1 - kk;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2 * n0, 2 * n0);
  q.topLeftCorner(n0, n0).setIdentity();
  q.bottomLeftCorner(n0, n0).diagonal().setConstant(irrep.entry(sab.partner, kk, kk));
  q.bottomRightCorner(n0, n0).diagonal().setConstant(irrep.entry(sab.partner, kk, other));
  return q;
}

namespace {

Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd>(a, b, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

EquivalenceReport verify_equivalence(const ReducedSystem& reduced, const SabSet& sab, const FullSystem& full,
                                     const PointGroup& group) {
  if (reduced.nu != sab.nu || reduced.size() != sab.size() || reduced.irrep_dim != sab.irrep_dim) {
    throw Error(ErrorCode::ShapeMismatch, "reduced system and SAB set describe different subproblems");
  }
  if (sab.k != 1 && sab.irrep_dim == 2) {
    throw Error(ErrorCode::ShapeMismatch, "the block relation is stated for the first column");
  }
  Eigen::MatrixXd a_sab, b_sab;
  sab_matrices(sab, full, a_sab, b_sab);
  const Eigen::MatrixXd a(reduced.A), b(reduced.B);
  const double g = group.order();

  EquivalenceReport rep;
  if (sab.irrep_dim == 1) {
    rep.a_deviation = (g * a_sab - a).cwiseAbs().maxCoeff();
    rep.b_deviation = (g * b_sab - b).cwiseAbs().maxCoeff();
  } else {
    const Eigen::MatrixXd ql = left_transform(sab, group);
    rep.a_deviation = (ql * a * ql.transpose() - 0.5 * g * a_sab).cwiseAbs().maxCoeff();
    rep.b_deviation = (ql * b * ql.transpose() - 0.5 * g * b_sab).cwiseAbs().maxCoeff();
  }
  const Eigen::VectorXd lam = generalized_eigenvalues(a, b);
  const Eigen::VectorXd lam_sab = generalized_eigenvalues(a_sab, b_sab);
  for (int i = 0; i < lam.size(); ++i) {
    rep.spectrum_deviation = std::max(rep.spectrum_deviation, std::abs(lam(i) - lam_sab(i)) / std::max(1.0, std::abs(lam(i))));
  }
  rep.spectra_match = rep.spectrum_deviation <= 1e-10;
  return rep;
}

EquivalenceReport verify_equivalence(const ReducedSystem& reduced, const SabSet& sab, const Problem& problem,
                                     const SymmetricGrid& grid, const Discretization& disc, const PointGroup& group) {
  return verify_equivalence(reduced, sab, assemble_full(problem, grid, disc), group);
}

Eigen::VectorXd sab_to_reduced(const SabSet& sab, const PointGroup& group, const Eigen::VectorXd& c) {
  if (c.size() != sab.size()) throw Error(ErrorCode::ShapeMismatch, "coefficient vector length mismatch");
  return left_transform(sab, group).transpose() * c;
}

}  // namespace symdecomp
