#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "nlpl/evolve.hpp"

using namespace nlpl;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Fixture {
    Kernel kernel = make_step_kernel(0.5, 1);
    Grid grid = Grid::make(1, 1.0, 0.25);
    WeightStencil stencil = discrete_weights(kernel, grid.spacing);
    ProblemSpec neumann, dirichlet;
    Fixture() {
        neumann.variant = Variant::neumann;
        neumann.domain = {-1.0, 1.0};
        dirichlet.variant = Variant::dirichlet;
        dirichlet.domain = {-1.0, 1.0};
    }
};

// dense solve of (I + dt (S - W)) v = u, the optimality system of the p = 2
// proximal step with Dirichlet zero extension
std::vector<double> dense_linear_prox(const GridFunction& u, const WeightStencil& s,
                                      double dt) {
    const int n = u.grid.points_per_axis;
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        double off_sum = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const int d = s.offsets[k].d0;
            if (d == 0) continue;
            off_sum += s.weights[k];
            const int j = i + d;
            if (j >= 0 && j < n) m[i][j] -= dt * s.weights[k];
        }
        m[i][i] += 1.0 + dt * off_sum;
        m[i][n] = u.at(i);
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = m[i][n] / m[i][i];
    return v;
}

}  // namespace

TEST_CASE("stable step size formula") {
    Fixture fx;
    GridFunction u(fx.grid);
    u.at(4) = 1.0;
    CHECK(stable_dt(u, fx.neumann, 2.0, 0.5, 10.0) == doctest::Approx(0.25));
    CHECK(stable_dt(u, fx.neumann, 3.0, 0.5, 10.0) == doctest::Approx(0.0625));
    GridFunction zero(fx.grid);
    CHECK(stable_dt(zero, fx.neumann, 3.0, 0.5, 10.0) == 10.0);
}

TEST_CASE("explicit step basics") {
    Fixture fx;
    GridFunction c(fx.grid);
    for (double& v : c.values) v = 1.0;
    const GridFunction out = explicit_step(c, fx.stencil, fx.neumann, 3.0, 0.05);
    for (std::size_t i = 0; i < out.values.size(); ++i) CHECK(out.values[i] == 1.0);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction u(fx.grid), nu(fx.grid);
    for (int i = 0; i < fx.grid.points_per_axis; ++i) {
        u.at(i) = unif(rng);
        nu.at(i) = -u.at(i);
    }
    const GridFunction su = explicit_step(u, fx.stencil, fx.neumann, 3.0, 0.05);
    const GridFunction snu = explicit_step(nu, fx.stencil, fx.neumann, 3.0, 0.05);
    for (std::size_t i = 0; i < su.values.size(); ++i)
        CHECK(su.values[i] == -snu.values[i]);
}

TEST_CASE("explicit scheme is rejected below p = 2") {
    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    CHECK_THROWS_AS(cfg.validate(1.5), InvalidParameter);
    cfg.scheme = Scheme::proximal;
    CHECK_NOTHROW(cfg.validate(1.5));
}

TEST_CASE("proximal step fixed points and limits") {
    Fixture fx;
    StepperConfig cfg;
    cfg.prox_tol = 1e-12;
    GridFunction c(fx.grid);
    for (double& v : c.values) v = 2.5;
    const ProxResult r = proximal_step(c, fx.stencil, fx.neumann, 3.0, 0.1, cfg);
    CHECK(r.iterations <= 1);
    for (double v : r.v.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction u(fx.grid);
    for (double& v : u.values) v = unif(rng);
    // rounding floor of the gradient is ulp(u)/dt, so the tolerance must stay
    // above cell * 1e-16 / dt
    cfg.prox_tol = 1e-8;
    const ProxResult tiny = proximal_step(u, fx.stencil, fx.neumann, 3.0, 1e-7, cfg);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        CHECK(tiny.v.values[i] == doctest::Approx(u.values[i]).epsilon(1e-6));
}

TEST_CASE("proximal step matches the dense linear solve at p = 2") {
    Fixture fx;  // N = 9
    StepperConfig cfg;
    cfg.prox_tol = 1e-12;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction u(fx.grid);
    for (double& v : u.values) v = unif(rng);
    const double dt = 0.2;
    const ProxResult r = proximal_step(u, fx.stencil, fx.dirichlet, 2.0, dt, cfg);
    const std::vector<double> ref = dense_linear_prox(u, fx.stencil, dt);
    for (std::size_t i = 0; i < ref.size(); ++i)
        CHECK(std::abs(r.v.values[i] - ref[i]) <= 1e-8);
}

TEST_CASE("zero datum stays zero") {
    Fixture fx;
    GridFunction zero(fx.grid);
    StepperConfig cfg;
    cfg.snapshot_times = {0.1, 0.5, 1.0};
    const Trajectory traj = evolve(zero, fx.neumann, fx.kernel, 3.0, 1.0, cfg);
    for (const auto& s : traj.snapshots)
        for (double v : s.u.values) CHECK(v == 0.0);
    for (const auto& rec : traj.series) CHECK(rec.linf == 0.0);
}

TEST_CASE("time rescaling symmetry") {
    // for p = 3, lambda^{1/(p-2)} u(x, lambda t) solves the flow from the
    // rescaled datum
    const Kernel kernel = make_step_kernel(0.5, 1);
    const Grid grid = Grid::make(1, 2.0, 1.0 / 32.0);
    ProblemSpec spec;
    spec.variant = Variant::dirichlet;
    spec.domain = {-2.0, 2.0};
    GridFunction u0(grid);
    for (int i = 0; i < grid.points_per_axis; ++i)
        u0.at(i) = std::abs(grid.coord(i)) <= 1.0 ? 1.0 : 0.0;
    const double lambda = 2.0;

    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    cfg.cfl_theta = 0.05;  // small steps so the two discretizations agree
    cfg.snapshot_times = {0.5};
    const Trajectory base = evolve(u0, spec, kernel, 3.0, 0.5, cfg);

    GridFunction scaled0 = u0;
    for (double& v : scaled0.values) v *= lambda;
    cfg.snapshot_times = {0.25};
    const Trajectory fast = evolve(scaled0, spec, kernel, 3.0, 0.25, cfg);

    const GridFunction& a = base.snapshots.back().u;   // u(x, 0.5)
    const GridFunction& b = fast.snapshots.back().u;   // u_lambda(x, 0.25)
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(lambda * a.values[i] - b.values[i]));
    CHECK(worst <= 0.02);
}

TEST_CASE("neumann mass is constant along runs") {
    Fixture fx;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction u0(fx.grid);
    for (double& v : u0.values) v = unif(rng);
    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    const Trajectory traj = evolve(u0, fx.neumann, fx.kernel, 3.0, 2.0, cfg);
    const double m0 = traj.series.front().mass;
    for (const auto& s : traj.series)
        CHECK(std::abs(s.mass - m0) <= 1e-12 * (1.0 + std::abs(m0)));
}

TEST_CASE("contractivity and comparison for proximal trajectories") {
    Fixture fx;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    StepperConfig cfg;
    cfg.scheme = Scheme::proximal;
    cfg.prox_tol = 1e-12;
    for (double p : {1.5, 3.0}) {
        GridFunction u(fx.grid), v(fx.grid);
        for (int i = 0; i < fx.grid.points_per_axis; ++i) {
            u.at(i) = unif(rng);
            v.at(i) = unif(rng);
        }
        GridFunction lo = u, hi = u;
        for (double& x : hi.values) x += 0.3;
        double prev = kInf;
        for (int n = 0; n < 5; ++n) {
            u = proximal_step(u, fx.stencil, fx.neumann, p, 0.05, cfg).v;
            v = proximal_step(v, fx.stencil, fx.neumann, p, 0.05, cfg).v;
            lo = proximal_step(lo, fx.stencil, fx.neumann, p, 0.05, cfg).v;
            hi = proximal_step(hi, fx.stencil, fx.neumann, p, 0.05, cfg).v;
            GridFunction d = u;
            for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= v.values[i];
            const double now = lq_norm(d, 2.0, fx.neumann);
            CHECK(now <= prev + 1e-10);
            prev = now;
            for (std::size_t i = 0; i < lo.values.size(); ++i)
                CHECK(lo.values[i] <= hi.values[i] + 1e-10);
        }
    }
}

TEST_CASE("evi residual stays within slack on probe set") {
    Fixture fx;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    GridFunction u0(fx.grid);
    for (double& v : u0.values) v = unif(rng);

    StepperConfig cfg;
    cfg.scheme = Scheme::proximal;
    cfg.prox_tol = 1e-12;
    cfg.dt_max = 0.05;
    for (int k = 0; k < 5; ++k) {
        GridFunction w(fx.grid);
        for (double& v : w.values) v = unif(rng);
        cfg.evi_probes.push_back(w);
    }
    const Trajectory traj = evolve(u0, fx.neumann, fx.kernel, 3.0, 0.5, cfg);
    CHECK(traj.steps.size() == 10);
    for (const auto& s : traj.steps) {
        CHECK(s.scheme == 'p');
        CHECK(s.evi_residual <= 1e-8);
    }
}

TEST_CASE("snapshot times are strictly increasing") {
    Fixture fx;
    GridFunction u0(fx.grid);
    u0.at(4) = 1.0;
    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    cfg.snapshot_times = {0.0, 0.001, 0.002, 0.5, 0.5, 2.0};
    const Trajectory traj = evolve(u0, fx.neumann, fx.kernel, 3.0, 1.0, cfg);
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i)
        CHECK(traj.snapshots[i].t > traj.snapshots[i - 1].t);
}
