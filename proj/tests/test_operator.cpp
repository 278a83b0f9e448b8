#include <cmath>
#include <random>

#include "doctest.h"
#include "nlpl/pde_operator.hpp"

using namespace nlpl;

namespace {

struct Fixture {
    Kernel kernel = make_step_kernel(0.5, 1);
    Grid grid = Grid::make(1, 1.0, 1.0 / 16.0);
    WeightStencil stencil = discrete_weights(kernel, grid.spacing);
    ProblemSpec neumann, dirichlet;
    Fixture() {
        neumann.variant = Variant::neumann;
        neumann.domain = {-1.0, 1.0};
        dirichlet.variant = Variant::dirichlet;
        dirichlet.domain = {-1.0, 1.0};
    }
};

}  // namespace

TEST_CASE("scalar nonlinearities") {
    CHECK(lp_scalar(2.0, 3.0) == 4.0);
    CHECK(lp_scalar(-2.0, 3.0) == -4.0);
    CHECK(lp_scalar(0.0, 1.5) == 0.0);
    CHECK(lp_scalar(4.0, 2.5) == doctest::Approx(8.0));
    CHECK(mp_scalar(0.0, 2.0) == 1.0);
    CHECK(mp_scalar(0.0, 3.0) == 0.0);
    CHECK_THROWS_AS(mp_scalar(0.0, 1.5), InvalidParameter);
}

TEST_CASE("operator on constants") {
    Fixture fx;
    GridFunction c(fx.grid);
    for (double& v : c.values) v = 2.0;

    const GridFunction ln = apply_operator(c, fx.stencil, fx.neumann, 3.0);
    for (double v : ln.values) CHECK(v == 0.0);

    // Dirichlet zero extension drains mass near the boundary
    const GridFunction ld = apply_operator(c, fx.stencil, fx.dirichlet, 3.0);
    CHECK(ld.values.front() < 0.0);
    CHECK(ld.values.back() < 0.0);
}

TEST_CASE("operator is odd") {
    Fixture fx;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction u(fx.grid), nu(fx.grid);
    for (int i = 0; i < fx.grid.points_per_axis; ++i) {
        u.at(i) = unif(rng);
        nu.at(i) = -u.at(i);
    }
    for (double p : {1.5, 2.0, 2.7, 3.0}) {
        const GridFunction a = apply_operator(u, fx.stencil, fx.dirichlet, p);
        const GridFunction b = apply_operator(nu, fx.stencil, fx.dirichlet, p);
        for (std::size_t i = 0; i < a.values.size(); ++i)
            CHECK(a.values[i] == -b.values[i]);
    }
}

TEST_CASE("operator is monotone in neighbor values") {
    Fixture fx;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction u(fx.grid);
    for (double& v : u.values) v = unif(rng);
    const int i = 9, j = 12;  // j is within stencil range of i
    const GridFunction base = apply_operator(u, fx.stencil, fx.neumann, 3.0);
    GridFunction bumped = u;
    bumped.at(j) += 0.5;
    const GridFunction after = apply_operator(bumped, fx.stencil, fx.neumann, 3.0);
    CHECK(after.at(i) >= base.at(i));
}

TEST_CASE("energy basics and integration by parts") {
    Fixture fx;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction c(fx.grid);
    for (double& v : c.values) v = 4.2;
    CHECK(energy(c, c, fx.stencil, fx.neumann, 3.0) == 0.0);

    for (double p : {1.5, 2.0, 3.0}) {
        GridFunction u(fx.grid), v(fx.grid);
        for (int i = 0; i < fx.grid.points_per_axis; ++i) {
            u.at(i) = unif(rng);
            v.at(i) = unif(rng);
        }
        CHECK(energy(u, u, fx.stencil, fx.neumann, p) >= 0.0);

        const GridFunction lu = apply_operator(u, fx.stencil, fx.neumann, p);
        std::vector<double> terms;
        for (std::size_t i = 0; i < lu.values.size(); ++i)
            terms.push_back(fx.grid.spacing * v.values[i] * lu.values[i]);
        const double lhs = -pairwise_sum(terms);
        const double rhs = energy(u, v, fx.stencil, fx.neumann, p);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("neumann operator has zero discrete mass") {
    Fixture fx;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridFunction u(fx.grid);
    for (double& v : u.values) v = unif(rng);
    const GridFunction lu = apply_operator(u, fx.stencil, fx.neumann, 2.5);
    std::vector<double> terms(lu.values.begin(), lu.values.end());
    CHECK(std::abs(pairwise_sum(terms)) <= 1e-13);
}

TEST_CASE("pointwise convexity inequality samples") {
    // a=1, b=0: both sides vanish
    CHECK(pointwise_ineq_residual(1.0, 0.0, 3.0) == doctest::Approx(0.0));
    // a=2, b=1, p=3: lhs = 4 - 1 = 3, rhs = 2*max{2,1}*1 = 4
    CHECK(pointwise_ineq_residual(2.0, 1.0, 3.0) == doctest::Approx(-1.0));
}

TEST_CASE("lower bound inequality sample") {
    CHECK(lp_lower_bound_residual(0.0, 1.0, 1.5) <= 1e-12);
}

TEST_CASE("derivative values of the nonlinearity") {
    // d/dtau |tau|tau = 2|tau| for p = 3
    CHECK(lp_derivative(2.0, 3.0, 1) == doctest::Approx(4.0));
    CHECK(lp_derivative(-2.0, 3.0, 1) == doctest::Approx(4.0));
    // second derivative for p = 4: 3*2*tau
    CHECK(lp_derivative(1.5, 4.0, 2) == doctest::Approx(9.0));
}
