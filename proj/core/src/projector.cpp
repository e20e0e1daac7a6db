#include "symdecomp/projector.hpp"

#include "symdecomp/error.hpp"

namespace symdecomp {

namespace {

void check_compatible(const GridFunction& f, const OrbitMap& orbits) {
  if (f.size() != orbits.grid_size()) {
    throw Error(ErrorCode::IncompatibleGrid, "grid function has " + std::to_string(f.size()) + " values, orbit map covers " +
                                                 std::to_string(orbits.grid_size()) + " nodes");
  }
}

}  // namespace

GridFunction apply_operation(int element, const GridFunction& f, const OrbitMap& orbits) {
  check_compatible(f, orbits);
  GridFunction out(f.size());
  // (P_R f)(R x) = f(x)
  for (int k = 0; k < f.size(); ++k) out(orbits.image(element, k)) = f(k);
  return out;
}

GridFunction apply_projector(const ProjectorCoefficients& coeffs, const GridFunction& f, const OrbitMap& orbits) {
  check_compatible(f, orbits);
  if (static_cast<int>(coeffs.coeffs.size()) != orbits.group_order()) {
    throw Error(ErrorCode::IncompatibleGrid, "projector and orbit map belong to groups of different order");
  }
  GridFunction out = GridFunction::Zero(f.size());
  for (int r = 0; r < orbits.group_order(); ++r) {
    const double c = coeffs.coeffs[static_cast<std::size_t>(r)];
    if (c == 0.0) continue;
    for (int k = 0; k < f.size(); ++k) out(orbits.image(r, k)) += c * f(k);
  }
  return out;
}

double inner(const GridFunction& a, const GridFunction& b) { return a.dot(b); }

}  // namespace symdecomp
