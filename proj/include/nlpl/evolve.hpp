#pragma once

#include <vector>

#include "nlpl/grid.hpp"
#include "nlpl/kernel.hpp"
#include "nlpl/pde_operator.hpp"

namespace nlpl {

enum class Scheme { explicit_euler, proximal };

struct StepperConfig {
    Scheme scheme = Scheme::explicit_euler;
    double cfl_theta = 0.5;      // in (0, 1]
    double dt_max = 1.0;
    double prox_tol = 1e-10;     // objective-gradient l2 norm
    int prox_max_iters = 10000;
    std::vector<double> snapshot_times;
    std::vector<GridFunction> evi_probes;  // per-step EVI residual when nonempty
    bool record_series = true;

    void validate(double p) const;
};

/// Stability-derived explicit step size theta / (2(p-1)(2||u||_inf)^{p-2}),
/// capped by dt_max; dt_max when u vanishes. Requires p >= 2.
double stable_dt(const GridFunction& u, const ProblemSpec& spec, double p,
                 double theta, double dt_max);

/// One forward Euler step u + dt * L_p u.
GridFunction explicit_step(const GridFunction& u, const WeightStencil& s,
                           const ProblemSpec& spec, double p, double dt);

/// One proximal (implicit gradient-flow) step: the minimizer of
///   I_p(v) + 1/(2 dt) * sum h^n (v_i - u_i)^2,   I_p(v) = E_p(v,v)/p,
/// solved by gradient descent with Armijo backtracking.
struct ProxResult {
    GridFunction v;
    int iterations = 0;
    double gradient_norm = 0.0;
};
ProxResult proximal_step(const GridFunction& u, const WeightStencil& s,
                         const ProblemSpec& spec, double p, double dt,
                         const StepperConfig& config);

/// Squared l2 norm sum h^n (a_i - b_i)^2 over the active region.
double squared_distance(const GridFunction& a, const GridFunction& b,
                        const ProblemSpec& spec);

/// Advance from t = 0 to T recording series at every accepted step and
/// snapshots at the nearest accepted step to each requested time.
Trajectory evolve(const GridFunction& u0, const ProblemSpec& spec, const Kernel& kernel,
                  double p, double T, const StepperConfig& config);

}  // namespace nlpl
