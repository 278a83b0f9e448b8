#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlpl/evolve.hpp"
#include "nlpl/grid.hpp"
#include "nlpl/kernel.hpp"

namespace nlpl {

/// Explicit constants of the Lq-Linf smoothing bound:
///   K_tilde = 2 (8/(p-2))^{1/((p-2)(p-1))}
///   K^{p-1} = q (8p)^{p(p+q)/q} ||J||_inf^{(p-1)/q}
struct SmoothingConstants {
    double k_tilde = 0.0;
    double k_pqj = 0.0;
    double p = 0.0;
    double q = 0.0;
    double j_inf = 0.0;
};

SmoothingConstants smoothing_constants(double p, double q, double j_inf);

/// Crossover time t* of the two-regime form of the smoothing bound.
double smoothing_crossover(const SmoothingConstants& c, double u0_lq);

enum class CheckStatus { pass, fail, warn, skipped };

struct CheckRecord {
    std::string name;
    std::string estimate;  // which quantitative estimate this audits
    CheckStatus status = CheckStatus::skipped;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct DiagnosticsReport {
    std::vector<CheckRecord> checks;

    bool all_passed() const;
    std::string to_text() const;
};

// ---- individual audits ----

/// Residual series of the smoothing bound: for each snapshot with t > t0,
/// ||u(t)||_inf - (K_tilde t^{-1/(p-2)} + K ||u(t0)||_q) / kappa_divisor.
std::vector<double> check_smoothing(const Trajectory& traj, const SmoothingConstants& c,
                                    double q, double kappa_divisor = 1.0);

/// Residuals of ||u(t)||_inf <= 2 K_tilde t^{-1/(p-2)} at snapshots t <= t*.
std::vector<double> check_smoothing_two_regime(const Trajectory& traj,
                                               const SmoothingConstants& c, double q);

/// max over snapshots of ||L_p u(t)||_inf - 2^p ||u(t0)||_inf^{p-1}.
double check_ut_smoothing(const Trajectory& traj);

/// min over snapshots (t > 0) and points of L_p u + u/((p-2) t).
double check_benilan_crandall(const Trajectory& traj);

/// min over consecutive snapshot pairs and points of
/// t2^{1/(p-2)} u(t2) - t1^{1/(p-2)} u(t1).
double check_time_monotonicity(const Trajectory& traj);

enum class DecayMode { dirichlet, neumann };

struct DecayFit {
    double slope = 0.0;
    double weighted_sup = 0.0;  // sup over window of t^{1/p} * deviation
    int points = 0;
    bool exact_equilibrium = false;
};

DecayFit decay_rate_fit(const Trajectory& traj, double t_a, double t_b, DecayMode mode);

/// Per-snapshot sup over rho of modulus(u(t)|_K, rho) divided by
/// max(omega_u0(rho), omega_J(rho), rho, rho^{p-2}).
std::vector<double> check_modulus_preservation(const Trajectory& traj,
                                               const std::vector<double>& radii,
                                               const Box& window,
                                               const std::vector<double>& omega_j);

struct SingularityAudit {
    double max_drift_cells = 0.0;
    bool heights_nonincreasing = true;
    bool new_jumps = false;
    std::vector<double> initial_positions;
};

SingularityAudit check_singularity_stationarity(const Trajectory& traj,
                                                double factor = 10.0);

/// Finite-difference time-Holder seminorm of order k and exponent gamma at a
/// probe point, computed from uniformly spaced snapshots.
double time_holder_seminorm(const Trajectory& traj, const std::array<double, 2>& probe,
                            int order, double gamma);

/// LHS - RHS of the functional inequality
/// ||u||_2^2 <= (K_tilde + 2) max{E^{1/(p-1)}, E^{-(p-2)/(p-1)}} + K ||u||_q.
double check_functional_inequality(const GridFunction& u, const WeightStencil& s,
                                   const ProblemSpec& spec, double p, double q,
                                   const SmoothingConstants& c);

// ---- full per-trajectory report ----

struct AuditOptions {
    double q = 1.0;                       // Lq norm for smoothing bounds
    double base_tol = 1e-8;
    std::optional<std::pair<double, double>> decay_window;
    double decay_slope_slack = 0.15;
    std::optional<Box> modulus_window;
    std::vector<double> modulus_radii;
    double jump_factor = 10.0;
    double kappa = 1.0;                   // Neumann kappa divisor
    double j_inf = 1.0;
};

DiagnosticsReport run_all_checks(const Trajectory& traj, const AuditOptions& opt);

}  // namespace nlpl
