#include <cmath>
#include <set>

#include "doctest.h"
#include "nlpl/diagnostics.hpp"
#include "nlpl/pde_operator.hpp"

using namespace nlpl;

TEST_CASE("smoothing constants match the closed forms") {
    const SmoothingConstants c3 = smoothing_constants(3.0, 1.0, 1.0);
    CHECK(c3.k_tilde == doctest::Approx(2.0 * std::sqrt(8.0)).epsilon(1e-12));
    // K^{p-1} = q (8p)^{p(p+q)/q} ||J||^{(p-1)/q}: p=3, q=1 -> K = 24^6
    CHECK(c3.k_pqj == doctest::Approx(191102976.0).epsilon(1e-10));

    const SmoothingConstants c4 = smoothing_constants(4.0, 1.0, 1.0);
    CHECK(c4.k_tilde == doctest::Approx(2.0 * std::pow(4.0, 1.0 / 6.0)).epsilon(1e-12));

    // K scales as ||J||_inf^{1/q}
    const SmoothingConstants cj = smoothing_constants(3.0, 1.0, 2.0);
    CHECK(cj.k_pqj / c3.k_pqj == doctest::Approx(2.0).epsilon(1e-10));

    CHECK_THROWS_AS(smoothing_constants(2.0, 1.0, 1.0), InvalidParameter);
}

TEST_CASE("two-regime crossover time") {
    const SmoothingConstants c = smoothing_constants(3.0, 1.0, 1.0);
    const double t_star = smoothing_crossover(c, 1.0);
    CHECK(t_star == doctest::Approx(c.k_tilde / c.k_pqj).epsilon(1e-12));
}

namespace {

Trajectory short_run(double p, Scheme scheme, Variant variant) {
    Kernel kernel = make_step_kernel(0.5, 1);
    Grid grid = Grid::make(1, 2.0, 1.0 / 32.0);
    ProblemSpec spec;
    spec.variant = variant;
    if (variant != Variant::cauchy) spec.domain = {-2.0, 2.0};
    GridFunction u0(grid);
    for (int i = 0; i < grid.points_per_axis; ++i)
        u0.at(i) = std::abs(grid.coord(i)) <= 1.0 ? 1.0 : 0.0;
    StepperConfig cfg;
    cfg.scheme = scheme;
    cfg.dt_max = scheme == Scheme::proximal ? 0.05 : 1.0;
    cfg.snapshot_times = {0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
    return evolve(u0, spec, kernel, p, 1.0, cfg);
}

}  // namespace

TEST_CASE("ut smoothing bound on the indicator datum") {
    const Trajectory traj = short_run(2.0, Scheme::proximal, Variant::dirichlet);
    CHECK(check_ut_smoothing(traj) <= 0.0);
}

TEST_CASE("benilan-crandall and time monotonicity on a nonnegative run") {
    const Trajectory traj = short_run(3.0, Scheme::explicit_euler, Variant::dirichlet);
    double dt_max = 0.0;
    for (const auto& s : traj.steps) dt_max = std::max(dt_max, s.dt);
    CHECK(check_benilan_crandall(traj) >= -(1e-8 + 4.0 * dt_max));
    CHECK(check_time_monotonicity(traj) >= -(1e-8 + 4.0 * dt_max));
}

TEST_CASE("decay fit reports exact equilibrium for constants") {
    Kernel kernel = make_step_kernel(0.5, 1);
    Grid grid = Grid::make(1, 1.0, 1.0 / 16.0);
    ProblemSpec spec;
    spec.variant = Variant::neumann;
    spec.domain = {-1.0, 1.0};
    GridFunction c(grid);
    for (double& v : c.values) v = 1.3;
    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    cfg.snapshot_times = {1.0, 2.0, 4.0, 6.0, 8.0};
    const Trajectory traj = evolve(c, spec, kernel, 3.0, 8.0, cfg);
    const DecayFit fit = decay_rate_fit(traj, 0.5, 8.0, DecayMode::neumann);
    CHECK(fit.exact_equilibrium);
}

TEST_CASE("holder seminorm vanishes on constant trajectories") {
    Kernel kernel = make_step_kernel(0.5, 1);
    Grid grid = Grid::make(1, 1.0, 1.0 / 16.0);
    ProblemSpec spec;
    spec.variant = Variant::neumann;
    spec.domain = {-1.0, 1.0};
    GridFunction c(grid);
    for (double& v : c.values) v = 2.0;
    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    cfg.dt_max = 0.05;
    cfg.snapshot_times = {0.2, 0.4, 0.6, 0.8, 1.0};
    const Trajectory traj = evolve(c, spec, kernel, 3.0, 1.0, cfg);
    CHECK(time_holder_seminorm(traj, {0.0, 0.0}, 2, 0.5) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("functional inequality including the scaling sanity check") {
    Kernel kernel = make_step_kernel(0.5, 1);
    Grid grid = Grid::make(1, 1.0, 1.0 / 16.0);
    WeightStencil stencil = discrete_weights(kernel, grid.spacing);
    ProblemSpec spec;
    spec.variant = Variant::dirichlet;
    spec.domain = {-1.0, 1.0};
    const SmoothingConstants c = smoothing_constants(3.0, 1.0, 1.0);

    GridFunction zero(grid);
    CHECK(check_functional_inequality(zero, stencil, spec, 3.0, 1.0, c) <= 0.0);

    GridFunction u(grid);
    for (int i = 0; i < grid.points_per_axis; ++i)
        u.at(i) = std::sin(2.0 * grid.coord(i)) * std::exp(-grid.coord(i));
    CHECK(check_functional_inequality(u, stencil, spec, 3.0, 1.0, c) <= 0.0);
    for (double& v : u.values) v *= 2.0;
    CHECK(check_functional_inequality(u, stencil, spec, 3.0, 1.0, c) <= 0.0);
}

TEST_CASE("full audit enumerates every check exactly once") {
    const Trajectory traj = short_run(3.0, Scheme::explicit_euler, Variant::dirichlet);
    AuditOptions opt;
    const DiagnosticsReport rep = run_all_checks(traj, opt);
    std::set<std::string> names;
    for (const auto& c : rep.checks) {
        CHECK(names.count(c.name) == 0);
        names.insert(c.name);
    }
    for (const char* expected :
         {"norm_monotonicity", "mass_conservation", "energy_dissipation",
          "smoothing_bound", "smoothing_two_regime", "ut_smoothing",
          "benilan_crandall", "time_monotonicity", "asymptotic_decay",
          "modulus_preservation", "singularity_stationarity", "evi_residual",
          "functional_inequality"})
        CHECK(names.count(expected) == 1);
}
