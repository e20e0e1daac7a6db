#pragma once

#include "symdecomp/group.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

namespace symdecomp {

/// Uniform tensor-product grid on (−a, a)^dim with zero boundary values.
/// Only interior nodes carry unknowns. Nodes are ordered lexicographically
/// by coordinate tuple (first axis slowest).
class SymmetricGrid {
 public:
  static constexpr double kRoundingTolerance = 1e-9;  // fraction of the spacing

  SymmetricGrid(int dim, double half_width, std::vector<int> partitions);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  const std::vector<int>& partitions() const { return partitions_; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  /// Interior nodes along one axis (partitions − 1).
  int interior(int axis) const { return partitions_[static_cast<std::size_t>(axis)] - 1; }
  int size() const { return size_; }

  double coordinate(int axis, int i) const { return -half_width_ + (i + 1) * spacing(axis); }
  Eigen::VectorXd node(int index) const;
  std::array<int, 3> multi_index(int index) const;
  int flat_index(const std::array<int, 3>& mi) const;

  /// Index of the interior node at position x, or -1 if x is not a node
  /// (matching uses kRoundingTolerance · spacing per axis).
  int locate(const Eigen::VectorXd& x) const;

  /// Cell volume Π h_i.
  double cell_volume() const;

 private:
  int dim_;
  double half_width_;
  std::vector<int> partitions_;
  std::vector<double> spacing_;
  std::vector<int> strides_;
  int size_ = 0;
};

/// Nodal values on the interior nodes of a grid.
using GridFunction = Eigen::VectorXd;

/// Partitions must be odd and ≥ 3. Throws EvenPartitionRejected / InvalidArgument.
SymmetricGrid build_grid(int dim, double half_width, const std::vector<int>& partitions);

/// Index of R·x for the node x. Throws GridNotInvariant.
int act_on_node(const SymmetricGrid& grid, const SymmetryOperation& op, int node);

/// Partition of the interior nodes into group orbits. Representatives are the
/// lexicographically smallest node of each orbit, listed in increasing order.
class OrbitMap {
 public:
  OrbitMap(const SymmetricGrid& grid, const PointGroup& group);

  int num_orbits() const { return num_orbits_; }
  int group_order() const { return order_; }
  int grid_size() const { return grid_size_; }

  /// Node index of the representative x_j.
  int rep(int j) const { return reps_[static_cast<std::size_t>(j)]; }
  /// Node index of R·x_j.
  int action(int r, int j) const { return action_[static_cast<std::size_t>(r * num_orbits_ + j)]; }
  /// Node index of R·x for an arbitrary node.
  int image(int r, int node) const { return image_[static_cast<std::size_t>(r * grid_size_ + node)]; }
  /// (R, j) with node = R·x_j.
  int element_of(int node) const { return element_of_[static_cast<std::size_t>(node)]; }
  int orbit_of(int node) const { return orbit_of_[static_cast<std::size_t>(node)]; }

 private:
  int num_orbits_ = 0;
  int order_ = 0;
  int grid_size_ = 0;
  std::vector<int> reps_;
  std::vector<int> action_;
  std::vector<int> image_;
  std::vector<int> element_of_;
  std::vector<int> orbit_of_;
};

/// Throws GridNotInvariant or SymmetryElementNode (a node fixed by some R ≠ E).
OrbitMap orbit_decomposition(const SymmetricGrid& grid, const PointGroup& group);

/// f sampled at the interior nodes.
GridFunction sample(const SymmetricGrid& grid, const std::function<double(const Eigen::VectorXd&)>& f);

/// max_q |f̂(Rq) − f̂(q)| for the discrete transform f̂(q) = Σ_x f(x) e^{−i q·x}
/// over the symmetric frequency set q_k = 2π (k + 1/2 − M/2) / (M h) per axis.
double fourier_invariance_check(const SymmetricGrid& grid, const GridFunction& f, const SymmetryOperation& op);

/// Plain-text node list: "index x y [z]" per line.
void write_node_list(const SymmetricGrid& grid, std::ostream& out);

}  // namespace symdecomp
