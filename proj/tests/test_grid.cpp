#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "nlpl/grid.hpp"

using namespace nlpl;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

GridFunction sampled(const Grid& g, double (*f)(double)) {
    GridFunction u(g);
    for (int i = 0; i < g.points_per_axis; ++i) u.at(i) = f(g.coord(i));
    return u;
}
}  // namespace

TEST_CASE("grid construction validates") {
    const Grid g = Grid::make(1, 1.0, 0.5);
    CHECK(g.points_per_axis == 5);
    CHECK(g.coord(0) == -1.0);
    CHECK(g.coord(4) == 1.0);
    CHECK_THROWS_AS(Grid::make(1, 1.0, 0.3), InvalidParameter);   // h does not divide 2L
    CHECK_THROWS_AS(Grid::make(1, 1.0, 2.0), InvalidParameter);   // fewer than 3 points
    CHECK_THROWS_AS(Grid::make(3, 1.0, 0.5), InvalidParameter);
}

TEST_CASE("lq norms with the documented endpoint weighting") {
    const Grid g = Grid::make(1, 1.0, 0.5);
    GridFunction one(g);
    for (double& v : one.values) v = 1.0;
    ProblemSpec spec;
    spec.variant = Variant::dirichlet;
    spec.domain = {-1.0, 1.0};
    // trapezoid endpoint weights: 0.5(1/2 + 1 + 1 + 1 + 1/2) = 2
    CHECK(lq_norm(one, 1.0, spec) == doctest::Approx(2.0).epsilon(1e-15));

    GridFunction zero(g);
    for (double q : {1.0, 2.0, kInf}) CHECK(lq_norm(zero, q, spec) == 0.0);

    GridFunction spike(g);
    spike.at(2) = 5.0;
    CHECK(lq_norm(spike, kInf, spec) == 5.0);

    CHECK_THROWS_AS(lq_norm(one, 0.5, spec), InvalidParameter);
}

TEST_CASE("norm interpolation inequality on random data") {
    const Grid g = Grid::make(1, 1.0, 1.0 / 32.0);
    ProblemSpec spec;
    spec.variant = Variant::dirichlet;
    spec.domain = {-1.0, 1.0};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction f(g);
        for (double& v : f.values) v = unif(rng);
        const double measure = 2.0;
        // ||f||_q <= |domain|^{1/q - 1/r} ||f||_r for q <= r
        CHECK(lq_norm(f, 1.0, spec) <=
              std::sqrt(measure) * lq_norm(f, 2.0, spec) * (1.0 + 1e-12));
        CHECK(lq_norm(f, 2.0, spec) <=
              std::sqrt(measure) * lq_norm(f, kInf, spec) * (1.0 + 1e-12));
    }
}

TEST_CASE("oscillation over balls") {
    const Grid g = Grid::make(1, 1.0, 0.25);
    GridFunction c(g);
    for (double& v : c.values) v = 3.0;
    CHECK(oscillation(c, {0.0, 0.0}, 0.5) == 0.0);

    const GridFunction lin = sampled(g, +[](double x) { return x; });
    CHECK(oscillation(lin, {0.0, 0.0}, 0.5) == doctest::Approx(1.0));

    CHECK_THROWS_AS(oscillation(lin, {50.0, 0.0}, 0.1), InvalidParameter);
}

TEST_CASE("modulus estimate") {
    const Grid g = Grid::make(1, 1.0, 1.0 / 64.0);
    const GridFunction lip = sampled(g, +[](double x) { return x; });
    const auto m = modulus_estimate(lip, {0.1, 0.25, 0.5});
    CHECK(m[0] <= 0.1 + g.spacing + 1e-12);
    CHECK(m[1] <= 0.25 + g.spacing + 1e-12);
    CHECK(m[2] <= 0.5 + g.spacing + 1e-12);

    GridFunction c(g);
    for (double& v : c.values) v = 1.5;
    for (double v : modulus_estimate(c, {0.1, 0.5})) CHECK(v == 0.0);

    const GridFunction step = sampled(g, +[](double x) { return x >= 0.0 ? 1.0 : 0.0; });
    const auto sm = modulus_estimate(step, {g.spacing, 0.5});
    CHECK(sm[0] == doctest::Approx(1.0));
}

TEST_CASE("jump detection") {
    const Grid g = Grid::make(1, 2.0, 1.0 / 64.0);
    const GridFunction smooth =
        sampled(g, +[](double x) { return std::exp(-x * x); });
    CHECK(jump_detect(smooth).empty());

    GridFunction zero(g);
    CHECK(jump_detect(zero).empty());

    const GridFunction fig1 =
        sampled(g, +[](double x) { return std::abs(x) <= 1.0 ? 1.0 : 0.0; });
    const auto pos = jump_detect(fig1);
    REQUIRE(pos.size() == 2);
    CHECK(std::abs(pos[0] + 1.0) <= g.spacing);
    CHECK(std::abs(pos[1] - 1.0) <= g.spacing);
}

TEST_CASE("jump detection is translation equivariant") {
    const Grid g = Grid::make(1, 2.0, 1.0 / 32.0);
    GridFunction f(g);
    for (int i = 0; i < g.points_per_axis; ++i)
        f.at(i) = g.coord(i) >= -0.5 && g.coord(i) <= 0.25 ? 2.0 : 0.0;
    const int shift = 8;
    GridFunction shifted(g);
    for (int i = shift; i < g.points_per_axis; ++i) shifted.at(i) = f.at(i - shift);
    const auto a = jump_detect(f);
    const auto b = jump_detect(shifted);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(b[k] == doctest::Approx(a[k] + shift * g.spacing).epsilon(1e-12));
}

TEST_CASE("non-finite values are rejected") {
    const Grid g = Grid::make(1, 1.0, 0.5);
    GridFunction f(g);
    f.at(2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(f.check_finite("test"), ConditionViolated);
}
