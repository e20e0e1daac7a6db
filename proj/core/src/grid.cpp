#include "symdecomp/grid.hpp"

#include "symdecomp/error.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>

namespace symdecomp {

SymmetricGrid::SymmetricGrid(int dim, double half_width, std::vector<int> partitions)
    : dim_(dim), half_width_(half_width), partitions_(std::move(partitions)) {
  if (dim_ != 2 && dim_ != 3) throw Error(ErrorCode::InvalidArgument, "grid dimension must be 2 or 3");
  if (static_cast<int>(partitions_.size()) != dim_) {
    throw Error(ErrorCode::InvalidArgument, "expected one partition count per axis");
  }
  if (!(half_width_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "half width must be positive");
  spacing_.resize(partitions_.size());
  strides_.assign(partitions_.size(), 1);
  size_ = 1;
  for (int axis = dim_ - 1; axis >= 0; --axis) {
    const int n = partitions_[static_cast<std::size_t>(axis)];
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "partition count must be at least 3");
    spacing_[static_cast<std::size_t>(axis)] = 2.0 * half_width_ / n;
    strides_[static_cast<std::size_t>(axis)] = size_;
    size_ *= n - 1;
  }
}

Eigen::VectorXd SymmetricGrid::node(int index) const {
  const auto mi = multi_index(index);
  Eigen::VectorXd x(dim_);
  for (int axis = 0; axis < dim_; ++axis) x(axis) = coordinate(axis, mi[static_cast<std::size_t>(axis)]);
  return x;
}

std::array<int, 3> SymmetricGrid::multi_index(int index) const {
  std::array<int, 3> mi{0, 0, 0};
  for (int axis = 0; axis < dim_; ++axis) {
    const int stride = strides_[static_cast<std::size_t>(axis)];
    mi[static_cast<std::size_t>(axis)] = (index / stride) % interior(axis);
  }
  return mi;
}

int SymmetricGrid::flat_index(const std::array<int, 3>& mi) const {
  int index = 0;
  for (int axis = 0; axis < dim_; ++axis) index += mi[static_cast<std::size_t>(axis)] * strides_[static_cast<std::size_t>(axis)];
  return index;
}

int SymmetricGrid::locate(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) return -1;
  std::array<int, 3> mi{0, 0, 0};
  for (int axis = 0; axis < dim_; ++axis) {
    const double h = spacing(axis);
    const double t = (x(axis) + half_width_) / h - 1.0;
    const double r = std::round(t);
    if (std::abs(t - r) > kRoundingTolerance) return -1;
    const int i = static_cast<int>(r);
    if (i < 0 || i >= interior(axis)) return -1;
    mi[static_cast<std::size_t>(axis)] = i;
  }
  return flat_index(mi);
}

double SymmetricGrid::cell_volume() const {
  double v = 1.0;
  for (double h : spacing_) v *= h;
  return v;
}

SymmetricGrid build_grid(int dim, double half_width, const std::vector<int>& partitions) {
  for (int n : partitions) {
    if (n % 2 == 0) {
      throw Error(ErrorCode::EvenPartitionRejected,
                  "partition count " + std::to_string(n) + " is even; a node would lie on a coordinate plane");
    }
  }
  return SymmetricGrid(dim, half_width, partitions);
}

int act_on_node(const SymmetricGrid& grid, const SymmetryOperation& op, int node) {
  if (op.dim() != grid.dim()) throw Error(ErrorCode::IncompatibleGrid, "operation and grid dimensions differ");
  const int k = grid.locate(op.matrix * grid.node(node));
  if (k < 0) {
    throw Error(ErrorCode::GridNotInvariant, "image of node " + std::to_string(node) + " under " + op.label +
                                                 " is not a grid node");
  }
  return k;
}

OrbitMap::OrbitMap(const SymmetricGrid& grid, const PointGroup& group)
    : order_(group.order()), grid_size_(grid.size()) {
  if (group.dim() != grid.dim()) throw Error(ErrorCode::IncompatibleGrid, "group and grid dimensions differ");
  const int g = order_;
  const int n = grid_size_;
  if (group.identity() != 0) {
    throw Error(ErrorCode::IncompatibleGrid, "group must list the identity as its first element");
  }
  image_.assign(static_cast<std::size_t>(g) * n, -1);
  for (int r = 0; r < g; ++r) {
    for (int k = 0; k < n; ++k) image_[static_cast<std::size_t>(r * n + k)] = act_on_node(grid, group.element(r), k);
  }
  if (n % g != 0) {
    throw Error(ErrorCode::SymmetryElementNode,
                "node count " + std::to_string(n) + " is not a multiple of the group order " + std::to_string(g));
  }
  element_of_.assign(static_cast<std::size_t>(n), -1);
  orbit_of_.assign(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    if (orbit_of_[static_cast<std::size_t>(k)] >= 0) continue;
    const int j = static_cast<int>(reps_.size());
    reps_.push_back(k);
    for (int r = 0; r < g; ++r) {
      const int target = image(r, k);
      if (orbit_of_[static_cast<std::size_t>(target)] >= 0) {
        throw Error(ErrorCode::SymmetryElementNode, "node " + std::to_string(k) + " lies on a symmetry element of " +
                                                        group.element(r).label);
      }
      orbit_of_[static_cast<std::size_t>(target)] = j;
      element_of_[static_cast<std::size_t>(target)] = r;
    }
  }
  num_orbits_ = static_cast<int>(reps_.size());
  action_.assign(static_cast<std::size_t>(g) * num_orbits_, -1);
  for (int r = 0; r < g; ++r) {
    for (int j = 0; j < num_orbits_; ++j) action_[static_cast<std::size_t>(r * num_orbits_ + j)] = image(r, reps_[static_cast<std::size_t>(j)]);
  }
}

OrbitMap orbit_decomposition(const SymmetricGrid& grid, const PointGroup& group) { return OrbitMap(grid, group); }

GridFunction sample(const SymmetricGrid& grid, const std::function<double(const Eigen::VectorXd&)>& f) {
  GridFunction values(grid.size());
  for (int k = 0; k < grid.size(); ++k) values(k) = f(grid.node(k));
  return values;
}

namespace {

using Complex = std::complex<double>;

// Half-integer centred frequency index for position k of an axis with m samples.
double centred_frequency(int k, int m) { return k + 0.5 - 0.5 * m; }

}  // namespace

double fourier_invariance_check(const SymmetricGrid& grid, const GridFunction& f, const SymmetryOperation& op) {
  if (f.size() != grid.size()) throw Error(ErrorCode::IncompatibleGrid, "grid function length mismatch");
  const int dim = grid.dim();
  const int n = grid.size();

  // Separable transform, one axis at a time; frequency and node multi-indices
  // share the grid's flat layout.
  std::vector<Complex> data(f.data(), f.data() + n);
  for (int axis = 0; axis < dim; ++axis) {
    const int m = grid.interior(axis);
    const double h = grid.spacing(axis);
    std::vector<Complex> kernel(static_cast<std::size_t>(m) * m);
    for (int q = 0; q < m; ++q) {
      const double omega = 2.0 * M_PI * centred_frequency(q, m) / (m * h);
      for (int i = 0; i < m; ++i) kernel[static_cast<std::size_t>(q * m + i)] = std::polar(1.0, -omega * grid.coordinate(axis, i));
    }
    std::vector<Complex> out(data.size());
    for (int idx = 0; idx < n; ++idx) {
      auto mi = grid.multi_index(idx);
      const int q = mi[static_cast<std::size_t>(axis)];
      Complex acc = 0.0;
      for (int i = 0; i < m; ++i) {
        mi[static_cast<std::size_t>(axis)] = i;
        acc += kernel[static_cast<std::size_t>(q * m + i)] * data[static_cast<std::size_t>(grid.flat_index(mi))];
      }
      out[static_cast<std::size_t>(idx)] = acc;
    }
    data.swap(out);
  }

  // The frequency lattice is the node lattice rescaled per axis, so R q is
  // located the same way R x is, once R maps equal-length axes onto each other.
  double worst = 0.0;
  for (int idx = 0; idx < n; ++idx) {
    const auto mi = grid.multi_index(idx);
    Eigen::VectorXd q(dim);
    for (int axis = 0; axis < dim; ++axis) {
      q(axis) = 2.0 * M_PI * centred_frequency(mi[static_cast<std::size_t>(axis)], grid.interior(axis)) /
                (grid.interior(axis) * grid.spacing(axis));
    }
    const Eigen::VectorXd rq = op.matrix * q;
    std::array<int, 3> target{0, 0, 0};
    for (int axis = 0; axis < dim; ++axis) {
      const int m = grid.interior(axis);
      const double t = rq(axis) * m * grid.spacing(axis) / (2.0 * M_PI) - 0.5 + 0.5 * m;
      const double r = std::round(t);
      if (std::abs(t - r) > 1e-9 || r < 0 || r >= m) {
        throw Error(ErrorCode::GridNotInvariant, "frequency lattice not invariant under " + op.label);
      }
      target[static_cast<std::size_t>(axis)] = static_cast<int>(r);
    }
    worst = std::max(worst, std::abs(data[static_cast<std::size_t>(grid.flat_index(target))] - data[static_cast<std::size_t>(idx)]));
  }
  return worst;
}

void write_node_list(const SymmetricGrid& grid, std::ostream& out) {
  out << "# index";
  for (int axis = 0; axis < grid.dim(); ++axis) out << ' ' << "xyz"[axis];
  out << '\n' << std::setprecision(17);
  for (int k = 0; k < grid.size(); ++k) {
    out << k;
    const auto x = grid.node(k);
    for (int axis = 0; axis < grid.dim(); ++axis) out << ' ' << x(axis);
    out << '\n';
  }
}

}  // namespace symdecomp
