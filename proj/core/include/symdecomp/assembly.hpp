#pragma once

#include "symdecomp/grid.hpp"
#include "symdecomp/group.hpp"
#include "symdecomp/sparse.hpp"

#include <functional>
#include <string>
#include <vector>

namespace symdecomp {

enum class ProblemKind { Laplacian, Schrodinger };
enum class Scheme { FD2, Q1FE };

std::string_view to_string(ProblemKind kind);
std::string_view to_string(Scheme scheme);

using Potential = std::function<double(const Eigen::VectorXd&)>;

/// −c Δu + V u = λ u on (−a, a)^dim with homogeneous Dirichlet data.
/// c = 1 for Laplacian, c = ½ for Schrödinger.
struct Problem {
  ProblemKind kind = ProblemKind::Laplacian;
  Potential potential;  // empty means V ≡ 0
  std::string potential_name = "zero";
  int dim = 2;
  double half_width = 1.0;

  double diffusion() const { return kind == ProblemKind::Laplacian ? 1.0 : 0.5; }
  double V(const Eigen::VectorXd& x) const { return potential ? potential(x) : 0.0; }
};

/// −Δu = λu.
Problem laplacian_problem(int dim, double half_width);
/// −½Δu + ½|x|²u = λu.
Problem oscillator_problem(int dim, double half_width);
/// −½Δu + (½|x|² + c Σ x_i⁴)u = λu; no closed-form spectrum.
Problem anharmonic_problem(int dim, double half_width, double quartic);

struct Discretization {
  Scheme scheme = Scheme::FD2;
};

/// One matrix row: column node indices with their A and B coefficients.
struct StencilRow {
  std::vector<int> cols;
  std::vector<double> a;
  std::vector<double> b;
};

/// Row of the full operator at `node`, generated from the stencil (FD2) or the
/// tensor-product element coefficients (Q1FE). Both schemes couple a node only
/// to its 3^dim neighbourhood.
void stencil_row(const Problem& problem, const SymmetricGrid& grid, Scheme scheme, int node, StencilRow& row);

struct FullSystem {
  SparseSym A;
  SparseSym B;
  bool standard = true;  // B is the identity
};

/// N×N system. FD2 builds rows from the stencil; Q1FE runs an element loop
/// with lumped potential quadrature.
FullSystem assemble_full(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc);

/// Q1 mass matrix over every node of the grid including the boundary.
SparseSym q1_mass_all_nodes(const SymmetricGrid& grid);

struct ReducedSystem {
  int nu = 1;
  int irrep_dim = 1;
  int num_orbits = 0;
  SparseSym A;
  SparseSym B;
  bool standard = true;

  int size() const { return irrep_dim * num_orbits; }
};

/// max_k |V(R x_k) − V(x_k)| over all nodes and elements.
double potential_asymmetry(const Problem& problem, const SymmetricGrid& grid, const OrbitMap& orbits);

/// Block (m, l) entry (i, j) = Σ_R Γν(R)_ml a_{i,R(j)}, stored at
/// (m·N0 + i, l·N0 + j). Assembled row by row from stencil_row; the full
/// matrix is never formed. Throws UnsupportedIrrepDim for dν > 2 and
/// PotentialNotInvariant when V breaks the symmetry beyond 1e-10.
ReducedSystem assemble_reduced(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc,
                               const OrbitMap& orbits, const PointGroup& group, int nu);

/// Same entries evaluated literally from a full matrix pair.
ReducedSystem reduced_from_full(const FullSystem& full, const OrbitMap& orbits, const PointGroup& group, int nu);

/// Expands a reduced eigenvector into the full-grid function of column l
/// (1-based): u_l(R x_j) = Σ_m Γν(R)_lm w_m(j).
GridFunction lift(const Eigen::VectorXd& reduced, const OrbitMap& orbits, const PointGroup& group, int nu, int l);

}  // namespace symdecomp
