#include "symdecomp/assembly.hpp"

#include "symdecomp/error.hpp"

#include <algorithm>
#include <cmath>

namespace symdecomp {

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::Laplacian ? "laplacian" : "schrodinger";
}

std::string_view to_string(Scheme scheme) { return scheme == Scheme::FD2 ? "FD2" : "Q1FE"; }

Problem laplacian_problem(int dim, double half_width) {
  Problem p;
  p.kind = ProblemKind::Laplacian;
  p.dim = dim;
  p.half_width = half_width;
  return p;
}

Problem oscillator_problem(int dim, double half_width) {
  Problem p;
  p.kind = ProblemKind::Schrodinger;
  p.dim = dim;
  p.half_width = half_width;
  p.potential = [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); };
  p.potential_name = "harmonic";
  return p;
}

Problem anharmonic_problem(int dim, double half_width, double quartic) {
  Problem p = oscillator_problem(dim, half_width);
  p.potential = [quartic](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm() + quartic * x.array().pow(4).sum(); };
  p.potential_name = "anharmonic";
  return p;
}

namespace {

void check_dims(const Problem& problem, const SymmetricGrid& grid) {
  if (problem.dim != grid.dim()) throw Error(ErrorCode::IncompatibleGrid, "problem and grid dimensions differ");
}

// 1D Q1 coefficients for offset δ ∈ {−1, 0, 1}.
double stiff1(int delta, double h) { return delta == 0 ? 2.0 / h : -1.0 / h; }
double mass1(int delta, double h) { return delta == 0 ? 4.0 * h / 6.0 : h / 6.0; }

}  // namespace

void stencil_row(const Problem& problem, const SymmetricGrid& grid, Scheme scheme, int node, StencilRow& row) {
  row.cols.clear();
  row.a.clear();
  row.b.clear();
  const int dim = grid.dim();
  const double c = problem.diffusion();
  const auto mi = grid.multi_index(node);
  const double v = problem.V(grid.node(node));

  if (scheme == Scheme::FD2) {
    double diag = v;
    for (int axis = 0; axis < dim; ++axis) diag += 2.0 * c / (grid.spacing(axis) * grid.spacing(axis));
    row.cols.push_back(node);
    row.a.push_back(diag);
    row.b.push_back(1.0);
    for (int axis = 0; axis < dim; ++axis) {
      const double off = -c / (grid.spacing(axis) * grid.spacing(axis));
      for (int step : {-1, 1}) {
        auto nb = mi;
        nb[static_cast<std::size_t>(axis)] += step;
        const int i = nb[static_cast<std::size_t>(axis)];
        if (i < 0 || i >= grid.interior(axis)) continue;
        row.cols.push_back(grid.flat_index(nb));
        row.a.push_back(off);
        row.b.push_back(0.0);
      }
    }
    return;
  }

  // Q1: K = Σ_axis K1 ⊗ M1 ⊗ …, M = ⊗ M1, plus lumped V·Πh on the diagonal.
  std::array<int, 3> delta{-1, -1, -1};
  const int count = dim == 2 ? 9 : 27;
  for (int t = 0; t < count; ++t) {
    int rest = t;
    std::array<int, 3> nb{0, 0, 0};
    bool inside = true;
    for (int axis = dim - 1; axis >= 0; --axis) {
      delta[static_cast<std::size_t>(axis)] = rest % 3 - 1;
      rest /= 3;
      const int i = mi[static_cast<std::size_t>(axis)] + delta[static_cast<std::size_t>(axis)];
      if (i < 0 || i >= grid.interior(axis)) inside = false;
      nb[static_cast<std::size_t>(axis)] = i;
    }
    if (!inside) continue;
    double mass = 1.0;
    for (int axis = 0; axis < dim; ++axis) mass *= mass1(delta[static_cast<std::size_t>(axis)], grid.spacing(axis));
    double stiff = 0.0;
    for (int axis = 0; axis < dim; ++axis) {
      double term = stiff1(delta[static_cast<std::size_t>(axis)], grid.spacing(axis));
      for (int other = 0; other < dim; ++other) {
        if (other != axis) term *= mass1(delta[static_cast<std::size_t>(other)], grid.spacing(other));
      }
      stiff += term;
    }
    const bool centre = nb == mi;
    row.cols.push_back(grid.flat_index(nb));
    row.a.push_back(c * stiff + (centre ? v * grid.cell_volume() : 0.0));
    row.b.push_back(mass);
  }
}

namespace {

SparseSym from_triplets(int n, std::vector<Eigen::Triplet<double>>& t) {
  SparseSym m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

SparseSym identity_matrix(int n) {
  SparseSym m(n, n);
  m.setIdentity();
  m.makeCompressed();
  return m;
}

// Element loop over all cells of a grid; `vertex_index` maps per-axis vertex
// positions 0..n to a matrix index or -1 to drop the vertex.
template <class Map>
void q1_element_loop(const SymmetricGrid& grid, double diffusion, const Map& vertex_index,
                     std::vector<Eigen::Triplet<double>>* stiff, std::vector<Eigen::Triplet<double>>& mass) {
  const int dim = grid.dim();
  const int corners = 1 << dim;
  std::array<int, 3> cells{1, 1, 1};
  for (int axis = 0; axis < dim; ++axis) cells[static_cast<std::size_t>(axis)] = grid.partitions()[static_cast<std::size_t>(axis)];
  std::array<int, 3> cell{0, 0, 0};
  int total = 1;
  for (int axis = 0; axis < dim; ++axis) total *= cells[static_cast<std::size_t>(axis)];

  for (int e = 0; e < total; ++e) {
    int rest = e;
    for (int axis = dim - 1; axis >= 0; --axis) {
      cell[static_cast<std::size_t>(axis)] = rest % cells[static_cast<std::size_t>(axis)];
      rest /= cells[static_cast<std::size_t>(axis)];
    }
    for (int p = 0; p < corners; ++p) {
      std::array<int, 3> vp{0, 0, 0};
      for (int axis = 0; axis < dim; ++axis) vp[static_cast<std::size_t>(axis)] = cell[static_cast<std::size_t>(axis)] + ((p >> axis) & 1);
      const int row = vertex_index(vp);
      if (row < 0) continue;
      for (int q = 0; q < corners; ++q) {
        std::array<int, 3> vq{0, 0, 0};
        for (int axis = 0; axis < dim; ++axis) vq[static_cast<std::size_t>(axis)] = cell[static_cast<std::size_t>(axis)] + ((q >> axis) & 1);
        const int col = vertex_index(vq);
        if (col < 0) continue;
        // Element matrices: k = (1/h)[1 −1; −1 1], m = (h/6)[2 1; 1 2].
        double m = 1.0;
        std::array<double, 3> k1{}, m1{};
        for (int axis = 0; axis < dim; ++axis) {
          const double h = grid.spacing(axis);
          const bool same = ((p >> axis) & 1) == ((q >> axis) & 1);
          k1[static_cast<std::size_t>(axis)] = (same ? 1.0 : -1.0) / h;
          m1[static_cast<std::size_t>(axis)] = (same ? 2.0 : 1.0) * h / 6.0;
          m *= m1[static_cast<std::size_t>(axis)];
        }
        mass.emplace_back(row, col, m);
        if (stiff) {
          double k = 0.0;
          for (int axis = 0; axis < dim; ++axis) {
            double term = k1[static_cast<std::size_t>(axis)];
            for (int other = 0; other < dim; ++other) {
              if (other != axis) term *= m1[static_cast<std::size_t>(other)];
            }
            k += term;
          }
          stiff->emplace_back(row, col, diffusion * k);
        }
      }
    }
  }
}

}  // namespace

FullSystem assemble_full(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc) {
  check_dims(problem, grid);
  const int n = grid.size();
  FullSystem sys;
  if (disc.scheme == Scheme::FD2) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(n) * (2 * grid.dim() + 1));
    StencilRow row;
    for (int k = 0; k < n; ++k) {
      stencil_row(problem, grid, Scheme::FD2, k, row);
      for (std::size_t e = 0; e < row.cols.size(); ++e) t.emplace_back(k, row.cols[e], row.a[e]);
    }
    sys.A = from_triplets(n, t);
    sys.B = identity_matrix(n);
    sys.standard = true;
    return sys;
  }

  std::vector<Eigen::Triplet<double>> stiff, mass;
  const auto interior_index = [&grid](const std::array<int, 3>& v) {
    std::array<int, 3> mi{0, 0, 0};
    for (int axis = 0; axis < grid.dim(); ++axis) {
      const int i = v[static_cast<std::size_t>(axis)] - 1;
      if (i < 0 || i >= grid.interior(axis)) return -1;
      mi[static_cast<std::size_t>(axis)] = i;
    }
    return grid.flat_index(mi);
  };
  q1_element_loop(grid, problem.diffusion(), interior_index, &stiff, mass);
  const double vol = grid.cell_volume();
  for (int k = 0; k < n; ++k) stiff.emplace_back(k, k, problem.V(grid.node(k)) * vol);
  sys.A = from_triplets(n, stiff);
  sys.B = from_triplets(n, mass);
  sys.standard = false;
  return sys;
}

SparseSym q1_mass_all_nodes(const SymmetricGrid& grid) {
  const int dim = grid.dim();
  std::array<int, 3> extent{1, 1, 1};
  int n = 1;
  for (int axis = 0; axis < dim; ++axis) {
    extent[static_cast<std::size_t>(axis)] = grid.partitions()[static_cast<std::size_t>(axis)] + 1;
    n *= extent[static_cast<std::size_t>(axis)];
  }
  const auto all_index = [&](const std::array<int, 3>& v) {
    int idx = 0;
    for (int axis = 0; axis < dim; ++axis) idx = idx * extent[static_cast<std::size_t>(axis)] + v[static_cast<std::size_t>(axis)];
    return idx;
  };
  std::vector<Eigen::Triplet<double>> mass;
  q1_element_loop(grid, 0.0, all_index, nullptr, mass);
  return from_triplets(n, mass);
}

double potential_asymmetry(const Problem& problem, const SymmetricGrid& grid, const OrbitMap& orbits) {
  std::vector<double> v(static_cast<std::size_t>(grid.size()));
  for (int k = 0; k < grid.size(); ++k) v[static_cast<std::size_t>(k)] = problem.V(grid.node(k));
  double worst = 0.0;
  for (int r = 0; r < orbits.group_order(); ++r) {
    for (int k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(v[static_cast<std::size_t>(orbits.image(r, k))] - v[static_cast<std::size_t>(k)]));
    }
  }
  return worst;
}

namespace {

const Irrep& checked_irrep(const PointGroup& group, int nu) {
  const Irrep& irrep = group.irrep(nu);
  if (irrep.dim > 2) {
    throw Error(ErrorCode::UnsupportedIrrepDim,
                "irrep " + std::to_string(nu) + " has dimension " + std::to_string(irrep.dim));
  }
  return irrep;
}

void check_orbits(const SymmetricGrid& grid, const OrbitMap& orbits, const PointGroup& group) {
  if (orbits.grid_size() != grid.size() || orbits.group_order() != group.order()) {
    throw Error(ErrorCode::IncompatibleGrid, "orbit map does not match grid and group");
  }
}

}  // namespace

ReducedSystem assemble_reduced(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc,
                               const OrbitMap& orbits, const PointGroup& group, int nu) {
  check_dims(problem, grid);
  check_orbits(grid, orbits, group);
  const Irrep& irrep = checked_irrep(group, nu);
  if (problem.potential) {
    const double dev = potential_asymmetry(problem, grid, orbits);
    if (dev > 1e-10) {
      throw Error(ErrorCode::PotentialNotInvariant, "potential changes by " + std::to_string(dev) + " under the group");
    }
  }

  const int d = irrep.dim;
  const int n0 = orbits.num_orbits();
  ReducedSystem red;
  red.nu = nu;
  red.irrep_dim = d;
  red.num_orbits = n0;
  red.standard = disc.scheme == Scheme::FD2;

  std::vector<Eigen::Triplet<double>> ta, tb;
  StencilRow row;
  for (int i = 0; i < n0; ++i) {
    stencil_row(problem, grid, disc.scheme, orbits.rep(i), row);
    for (std::size_t e = 0; e < row.cols.size(); ++e) {
      const int node = row.cols[e];
      const int r = orbits.element_of(node);
      const int j = orbits.orbit_of(node);
      for (int m = 0; m < d; ++m) {
        for (int l = 0; l < d; ++l) {
          const double gamma = irrep.entry(r, m, l);
          if (gamma == 0.0) continue;
          ta.emplace_back(m * n0 + i, l * n0 + j, gamma * row.a[e]);
          if (!red.standard && row.b[e] != 0.0) tb.emplace_back(m * n0 + i, l * n0 + j, gamma * row.b[e]);
        }
      }
    }
  }
  red.A = from_triplets(d * n0, ta);
  red.A.prune(0.0);
  if (red.standard) {
    red.B = identity_matrix(d * n0);
  } else {
    red.B = from_triplets(d * n0, tb);
    red.B.prune(0.0);
  }
  return red;
}

ReducedSystem reduced_from_full(const FullSystem& full, const OrbitMap& orbits, const PointGroup& group, int nu) {
  const Irrep& irrep = checked_irrep(group, nu);
  if (full.A.rows() != orbits.grid_size()) throw Error(ErrorCode::ShapeMismatch, "full system order differs from grid");
  const int d = irrep.dim;
  const int n0 = orbits.num_orbits();
  const int g = group.order();
  ReducedSystem red;
  red.nu = nu;
  red.irrep_dim = d;
  red.num_orbits = n0;
  red.standard = full.standard;

  const Eigen::MatrixXd a = Eigen::MatrixXd(full.A);
  const Eigen::MatrixXd b = Eigen::MatrixXd(full.B);
  std::vector<Eigen::Triplet<double>> ta, tb;
  for (int m = 0; m < d; ++m) {
    for (int l = 0; l < d; ++l) {
      for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n0; ++j) {
          double sa = 0.0, sb = 0.0;
          for (int r = 0; r < g; ++r) {
            const double gamma = irrep.entry(r, m, l);
            sa += gamma * a(orbits.rep(i), orbits.action(r, j));
            sb += gamma * b(orbits.rep(i), orbits.action(r, j));
          }
          if (sa != 0.0) ta.emplace_back(m * n0 + i, l * n0 + j, sa);
          if (sb != 0.0) tb.emplace_back(m * n0 + i, l * n0 + j, sb);
        }
      }
    }
  }
  red.A = from_triplets(d * n0, ta);
  red.B = from_triplets(d * n0, tb);
  return red;
}

GridFunction lift(const Eigen::VectorXd& reduced, const OrbitMap& orbits, const PointGroup& group, int nu, int l) {
  const Irrep& irrep = group.irrep(nu);
  const int n0 = orbits.num_orbits();
  if (reduced.size() != irrep.dim * n0) throw Error(ErrorCode::ShapeMismatch, "reduced vector length mismatch");
  if (l < 1 || l > irrep.dim) throw Error(ErrorCode::BadIrrepIndex, "column index out of range");
  GridFunction u = GridFunction::Zero(orbits.grid_size());
  for (int r = 0; r < group.order(); ++r) {
    for (int j = 0; j < n0; ++j) {
      double value = 0.0;
      for (int m = 0; m < irrep.dim; ++m) value += irrep.entry(r, l - 1, m) * reduced(m * n0 + j);
      u(orbits.action(r, j)) = value;
    }
  }
  return u;
}

}  // namespace symdecomp
