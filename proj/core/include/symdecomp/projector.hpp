#pragma once

#include "symdecomp/grid.hpp"
#include "symdecomp/group.hpp"

namespace symdecomp {

/// (P_R f)(x) = f(R⁻¹x) evaluated through the orbit permutation.
GridFunction apply_operation(int element, const GridFunction& f, const OrbitMap& orbits);

/// 𝒫ν_ml f = Σ_R coeffs(R) P_R f. Throws IncompatibleGrid on size mismatch.
GridFunction apply_projector(const ProjectorCoefficients& coeffs, const GridFunction& f, const OrbitMap& orbits);

/// Discrete L² inner product (plain dot product of nodal values).
double inner(const GridFunction& a, const GridFunction& b);

}  // namespace symdecomp
