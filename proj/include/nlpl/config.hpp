#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlpl/common.hpp"
#include "nlpl/evolve.hpp"
#include "nlpl/grid.hpp"
#include "nlpl/kernel.hpp"

namespace nlpl {

enum class KernelFamily { step, power, bump };
enum class InitialFamily { zero, constant, indicator, spike, gaussian, hat };

struct RunConfig {
    Variant variant = Variant::cauchy;
    Box domain;
    int padding_layers = 1;

    KernelFamily kernel_family = KernelFamily::step;
    double kernel_radius = 0.5;
    double kernel_exponent = 1.0;

    double p = 3.0;

    int dimension = 1;
    double extent = 2.0;
    double spacing = 1.0 / 64.0;

    InitialFamily initial_family = InitialFamily::indicator;
    double initial_height = 1.0;
    Box initial_support{-1.0, 1.0};
    double initial_sigma = 0.25;
    double initial_mass = 1.0;  // spike

    double horizon = 1.0;
    std::vector<double> snapshot_times;

    Scheme scheme = Scheme::explicit_euler;
    double cfl_theta = 0.5;
    double dt_max = 1.0;
    double prox_tol = 1e-10;
    int prox_max_iters = 10000;

    double diag_q = 1.0;
    std::optional<std::pair<double, double>> decay_window;
    std::optional<Box> modulus_window;
    std::vector<double> modulus_radii;
    double jump_factor = 10.0;
    double decay_slope_slack = 0.15;

    std::string output_dir = "out";
    unsigned long seed = 42;
};

struct ParseOutcome {
    std::optional<RunConfig> config;
    std::vector<std::string> errors;  // all errors, not first-error-only
};

ParseOutcome parse_config(const std::string& path);
ParseOutcome parse_config_text(const std::string& text);

Kernel build_kernel(const RunConfig& cfg);
Grid build_grid(const RunConfig& cfg);
GridFunction build_initial(const RunConfig& cfg, const Grid& grid);
ProblemSpec build_problem_spec(const RunConfig& cfg);
StepperConfig build_stepper(const RunConfig& cfg);

}  // namespace nlpl
