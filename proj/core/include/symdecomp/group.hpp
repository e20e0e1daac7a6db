#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace symdecomp {

/// An orthogonal coordinate transformation of R^2 or R^3.
struct SymmetryOperation {
  std::string label;
  Eigen::MatrixXd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// A real orthogonal irreducible representation. `matrices[r]` is the image
/// of group element r (same ordering as PointGroup::elements()).
struct Irrep {
  int index = 0;  // 1-based
  int dim = 1;
  std::vector<Eigen::MatrixXd> matrices;

  // 0-based m, l.
  double entry(int element, int m, int l) const { return matrices[element](m, l); }
};

/// Finite point group with explicit operation matrices, a multiplication
/// table computed by matrix matching, and its real irreducible representations.
///
/// Construction never throws on inconsistent data: unmatched products are
/// recorded as -1 in the table so that verify_group_axioms can report them.
class PointGroup {
 public:
  static constexpr double kMatchTolerance = 1e-9;

  PointGroup(std::string name, std::vector<SymmetryOperation> elements, std::vector<Irrep> irreps);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int dim() const { return elements_.empty() ? 0 : elements_.front().dim(); }
  int num_irreps() const { return static_cast<int>(irreps_.size()); }
  /// Σ_ν d_ν, the number of subproblems.
  int num_subproblems() const;

  const std::vector<SymmetryOperation>& elements() const { return elements_; }
  const SymmetryOperation& element(int r) const { return elements_.at(r); }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  /// 1-based lookup, throws BadIrrepIndex.
  const Irrep& irrep(int nu) const;

  /// Index k with R_i R_j = R_k, or -1 when the product is not in the set.
  int product(int i, int j) const { return table_[static_cast<std::size_t>(i * order() + j)]; }
  /// Index of R_i^{-1}, or -1.
  int inverse(int i) const { return inverse_[static_cast<std::size_t>(i)]; }
  int identity() const { return identity_; }
  /// Index of the element with the given label, or -1.
  int find(std::string_view label) const;

 private:
  std::string name_;
  std::vector<SymmetryOperation> elements_;
  std::vector<Irrep> irreps_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int identity_ = -1;
};

/// Names accepted by builtin_group.
const std::vector<std::string>& builtin_group_names();

/// EXAMPLE2D, D2, D2H, D4 or D2D. Throws UnknownGroup.
PointGroup builtin_group(std::string_view name);

struct AxiomReport {
  bool orthogonal = true;       // every matrix orthogonal with det ±1
  bool closure = true;          // every product found in the set
  bool identity = true;         // an identity element exists
  bool inverses = true;         // every element has an inverse
  bool associativity = true;    // table consistent with (RS)T = R(ST)
  bool dimension_sum = true;    // Σ d_ν² = g
  bool homomorphism = true;     // Γ(R)Γ(S) = Γ(RS) and Γ(E) = I for every irrep
  bool irreps_orthogonal = true;
  int dimension_square_sum = 0;
  double max_homomorphism_deviation = 0.0;
  double max_orthogonality_deviation = 0.0;
  std::vector<std::string> failures;

  bool ok() const {
    return orthogonal && closure && identity && inverses && associativity && dimension_sum &&
           homomorphism && irreps_orthogonal;
  }
};

AxiomReport verify_group_axioms(const PointGroup& group);

/// max |Σ_R Γν(R)_ml Γν'(R)_m'l' − δνν' δmm' δll' g/dν| over all index tuples.
double verify_great_orthogonality(const PointGroup& group);

/// Σ_R Γν(R)_ml Γν'(R)_m'l' for one index tuple (all indices 1-based).
double orthogonality_sum(const PointGroup& group, int nu, int m, int l, int nu2, int m2, int l2);

/// Coefficients (dν/g)·Γν(R)_ml of the projection operator 𝒫ν_ml.
struct ProjectorCoefficients {
  int nu = 1;  // all 1-based
  int m = 1;
  int l = 1;
  std::vector<double> coeffs;  // indexed by group element
};

/// 1 ≤ ν ≤ n_c, 1 ≤ m,l ≤ dν. Throws BadIrrepIndex.
ProjectorCoefficients projector_coefficients(const PointGroup& group, int nu, int m, int l);

}  // namespace symdecomp
