#include <cmath>

#include "doctest.h"
#include "nlpl/evolve.hpp"
#include "nlpl/grid.hpp"
#include "nlpl/oracle.hpp"

using namespace nlpl;

namespace {

struct Setup {
    Kernel kernel = make_step_kernel(0.5, 1);
    Grid grid = Grid::make(1, 2.0, 1.0 / 64.0);
    WeightStencil stencil = discrete_weights(kernel, grid.spacing);
    ProblemSpec spec;
    GridFunction indicator;
    Setup() : indicator(grid) {
        spec.variant = Variant::dirichlet;
        spec.domain = {-2.0, 2.0};
        for (int i = 0; i < grid.points_per_axis; ++i)
            indicator.at(i) = std::abs(grid.coord(i)) <= 1.0 ? 1.0 : 0.0;
    }
};

}  // namespace

TEST_CASE("oracle trivial cases") {
    Setup s;
    GridFunction zero(s.grid);
    const GridFunction out = linear_evolve(zero, s.stencil, s.spec, 1.0, 1e-3);
    for (double v : out.values) CHECK(v == 0.0);

    const GridFunction tiny = linear_evolve(s.indicator, s.stencil, s.spec, 1e-8, 1e-9);
    for (std::size_t i = 0; i < tiny.values.size(); ++i)
        CHECK(tiny.values[i] == doctest::Approx(s.indicator.values[i]).epsilon(1e-6));
}

TEST_CASE("oracle rejects the neumann variant") {
    Setup s;
    ProblemSpec neumann;
    neumann.variant = Variant::neumann;
    neumann.domain = {-2.0, 2.0};
    CHECK_THROWS_AS(linear_evolve(s.indicator, s.stencil, neumann, 1.0, 1e-3),
                    InvalidParameter);
}

TEST_CASE("jump component decays exponentially") {
    Setup s;
    const double T = 1.0;
    const GridFunction u = linear_evolve(s.indicator, s.stencil, s.spec, T, 1e-4);

    // the rough part of the solution is exp(-t) u0; the remainder is as
    // smooth as the kernel is, so the interface difference at x = 1 carries
    // the decayed jump
    const int i = static_cast<int>(std::llround((1.0 + s.grid.extent) / s.grid.spacing));
    const double jump = std::abs(u.at(i + 1) - u.at(i));
    CHECK(std::abs(jump - std::exp(-T)) <= 0.02);

    GridFunction smooth_part = u;
    for (std::size_t k = 0; k < smooth_part.values.size(); ++k)
        smooth_part.values[k] -= std::exp(-T) * s.indicator.values[k];
    CHECK(jump_detect(smooth_part).empty());
}

TEST_CASE("generic explicit solver agrees with the oracle at p = 2") {
    Setup s;
    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    cfg.cfl_theta = 1.0;
    cfg.dt_max = 1e-2;
    cfg.snapshot_times = {1.0};
    const Trajectory traj = evolve(s.indicator, s.spec, s.kernel, 2.0, 1.0, cfg);
    const GridFunction ref = linear_evolve(s.indicator, s.stencil, s.spec, 1.0, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.values.size(); ++i)
        worst = std::max(worst,
                         std::abs(ref.values[i] - traj.snapshots.back().u.values[i]));
    CHECK(worst <= 5.0 * 1e-2 * 1.0 * 1.0);  // 5 dt T ||u0||_inf
}
