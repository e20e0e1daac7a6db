#pragma once

#include "symdecomp/assembly.hpp"

namespace symdecomp {

/// Symmetry-adapted functions as rows of nodal coefficients.
/// dν = 1: rows 𝒫kk φ_j. dν = 2: rows 𝒫kk φ_j followed by 𝒫kk P_S φ_j.
struct SabSet {
  int nu = 1;
  int k = 1;
  int irrep_dim = 1;
  int num_orbits = 0;
  int partner = -1;       // element S for dν = 2
  Eigen::MatrixXd basis;  // N' × N

  int size() const { return static_cast<int>(basis.rows()); }
};

/// First element (table order) with Γ(S⁻¹)_{k'k} ≠ 0 for some k' ≠ k, i.e. the
/// k-th columns of Γ(E) and Γ(S⁻¹) are independent. Throws NoIndependentColumn.
int select_partner_element(const PointGroup& group, int nu, int k);

/// Throws UnsupportedIrrepDim for dν > 2.
SabSet construct_sab(const SymmetricGrid& grid, const OrbitMap& orbits, const PointGroup& group, int nu, int k = 1);

/// Numerical rank (threshold 1e-10) of { 𝒫kk P_R φ_j : all R, j }.
int rank_of_projected_set(const SymmetricGrid& grid, const OrbitMap& orbits, const PointGroup& group, int nu, int k = 1);

/// Numerical rank of the rows of a matrix, relative threshold 1e-10.
int numerical_rank(const Eigen::MatrixXd& rows);

struct EquivalenceReport {
  double a_deviation = 0.0;         // max|g Ã − A| or max|Q_l A Q_r − (g/2) Ã|
  double b_deviation = 0.0;         // same for B
  double spectrum_deviation = 0.0;  // max relative eigenvalue difference
  bool spectra_match = false;       // spectrum_deviation ≤ 1e-10
};

/// Ã_ij = a(Φ_j, Φ_i), B̃_ij = (Φ_j, Φ_i) from the full system.
void sab_matrices(const SabSet& sab, const FullSystem& full, Eigen::MatrixXd& a_sab, Eigen::MatrixXd& b_sab);

/// Q_l = [[I, 0], [Γ11(S) I, Γ12(S) I]] (dν = 2) or I (dν = 1).
Eigen::MatrixXd left_transform(const SabSet& sab, const PointGroup& group);

/// Compares the directly reduced system with the one assembled in the SAB.
/// Throws ShapeMismatch when orders or irreps differ.
EquivalenceReport verify_equivalence(const ReducedSystem& reduced, const SabSet& sab, const FullSystem& full,
                                     const PointGroup& group);
EquivalenceReport verify_equivalence(const ReducedSystem& reduced, const SabSet& sab, const Problem& problem,
                                     const SymmetricGrid& grid, const Discretization& disc, const PointGroup& group);

/// Reduced-system coefficients from SAB coefficients: u = Q_lᵀ c, i.e.
/// u_1j = c_1j + Γ(S)_11 c_2j and u_2j = Γ(S)_12 c_2j.
Eigen::VectorXd sab_to_reduced(const SabSet& sab, const PointGroup& group, const Eigen::VectorXd& c);

}  // namespace symdecomp
