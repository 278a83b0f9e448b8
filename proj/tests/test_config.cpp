#include <string>

#include "doctest.h"
#include "nlpl/config.hpp"

using namespace nlpl;

namespace {

const std::string minimal =
    "problem.variant=dirichlet\n"
    "problem.domain=-1,1\n"
    "kernel.family=step\n"
    "kernel.radius=0.5\n"
    "p=3\n"
    "grid.dimension=1\n"
    "grid.extent=1\n"
    "grid.spacing=0.0625\n"
    "initial.family=indicator\n"
    "initial.support=-0.5,0.5\n"
    "time.horizon=1\n";

bool has_error_containing(const ParseOutcome& out, const std::string& needle) {
    for (const auto& e : out.errors)
        if (e.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("minimal config parses") {
    const ParseOutcome out = parse_config_text(minimal);
    REQUIRE(out.errors.empty());
    REQUIRE(out.config.has_value());
    CHECK(out.config->variant == Variant::dirichlet);
    CHECK(out.config->p == 3.0);
    CHECK(out.config->kernel_family == KernelFamily::step);
    CHECK(out.config->spacing == 0.0625);
}

TEST_CASE("explicit scheme with p below 2 is rejected with the reason") {
    const ParseOutcome out =
        parse_config_text(minimal + "stepper.scheme=explicit\np=1.5\n");
    CHECK_FALSE(out.config.has_value());
    CHECK(has_error_containing(out, "proximal"));
}

TEST_CASE("zero kernel radius is rejected") {
    const ParseOutcome out = parse_config_text(minimal + "kernel.radius=0\n");
    CHECK_FALSE(out.config.has_value());
    CHECK(has_error_containing(out, "kernel.radius"));
}

TEST_CASE("all errors are collected, not only the first") {
    const ParseOutcome out = parse_config_text(
        "problem.variant=dirichlet\n"
        "problem.domain=-1,1\n"
        "kernel.family=step\n"
        "kernel.radius=-1\n"
        "p=0.5\n"
        "grid.extent=1\n"
        "grid.spacing=0.0625\n"
        "time.horizon=-3\n"
        "no.such.key=1\n");
    CHECK(out.errors.size() >= 4);
    CHECK(has_error_containing(out, "kernel.radius"));
    CHECK(has_error_containing(out, "p:"));
    CHECK(has_error_containing(out, "time.horizon"));
    CHECK(has_error_containing(out, "unknown key"));
}

TEST_CASE("duplicate keys are flagged") {
    const ParseOutcome out = parse_config_text(minimal + "p=2\n");
    CHECK(has_error_containing(out, "duplicate"));
}

TEST_CASE("snapshot schedules") {
    const ParseOutcome lin = parse_config_text(minimal + "time.snapshots=linear:5\n");
    REQUIRE(lin.config.has_value());
    REQUIRE(lin.config->snapshot_times.size() == 5);
    CHECK(lin.config->snapshot_times.back() == doctest::Approx(1.0));

    const ParseOutcome list =
        parse_config_text(minimal + "time.snapshots=0.1,0.5,0.9\n");
    REQUIRE(list.config.has_value());
    CHECK(list.config->snapshot_times == std::vector<double>{0.1, 0.5, 0.9});
}

TEST_CASE("builders produce consistent objects") {
    const ParseOutcome out = parse_config_text(minimal);
    REQUIRE(out.config.has_value());
    const RunConfig& cfg = *out.config;
    const Kernel k = build_kernel(cfg);
    CHECK(k.l1_mass == doctest::Approx(1.0).epsilon(1e-10));
    const Grid g = build_grid(cfg);
    CHECK(g.points_per_axis == 33);
    const GridFunction u0 = build_initial(cfg, g);
    CHECK(u0.at(16) == 1.0);  // center of the indicator
    CHECK(u0.at(0) == 0.0);
    const ProblemSpec spec = build_problem_spec(cfg);
    CHECK_NOTHROW(spec.validate(g));
}
