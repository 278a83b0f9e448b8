#pragma once

#include "nlpl/grid.hpp"
#include "nlpl/kernel.hpp"

namespace nlpl {

/// High-accuracy reference for the linear case p = 2 on Cauchy/Dirichlet
/// problems, where the interior row sum is 1 and L_2 u = J*u - u. Uses the
/// integrating-factor substitution v = e^t u, integrates v_t = J*v with
/// classical RK4 at step dt_fine, and returns e^{-T} v(T).
GridFunction linear_evolve(const GridFunction& u0, const WeightStencil& s,
                           const ProblemSpec& spec, double T, double dt_fine);

}  // namespace nlpl
