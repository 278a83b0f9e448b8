#include "nlpl/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "nlpl/io.hpp"
#include "nlpl/oracle.hpp"
#include "nlpl/pde_operator.hpp"

namespace nlpl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

CheckRecord one_sided(const std::string& name, const std::string& estimate,
                      double residual, double tol, const std::string& detail = "") {
    CheckRecord r;
    r.name = name;
    r.estimate = estimate;
    r.residual = residual;
    r.tolerance = tol;
    r.status = residual <= tol ? CheckStatus::pass : CheckStatus::fail;
    r.detail = detail;
    return r;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double lq_norm_diff(const GridFunction& a, const GridFunction& b, double q,
                    const ProblemSpec& spec) {
    GridFunction d = a;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    return lq_norm(d, q, spec);
}

}  // namespace

RunResult execute_run(const RunConfig& cfg, bool write_outputs) {
    RunResult result;

    const Kernel kernel = build_kernel(cfg);
    const Grid grid = build_grid(cfg);
    const ProblemSpec spec = build_problem_spec(cfg);
    const GridFunction u0 = build_initial(cfg, grid);
    StepperConfig stepper = build_stepper(cfg);
    // always snapshot the end state so runs are resumable
    stepper.snapshot_times.push_back(cfg.horizon);

    result.trajectory = evolve(u0, spec, kernel, cfg.p, cfg.horizon, stepper);

    AuditOptions opt;
    opt.q = cfg.diag_q;
    opt.decay_window = cfg.decay_window;
    opt.modulus_window = cfg.modulus_window;
    opt.modulus_radii = cfg.modulus_radii;
    opt.jump_factor = cfg.jump_factor;
    opt.decay_slope_slack = cfg.decay_slope_slack;
    opt.j_inf = kernel.sup_norm();
    if (spec.variant == Variant::neumann)
        opt.kappa = neumann_kappa(kernel, spec.domain, grid.spacing);
    result.report = run_all_checks(result.trajectory, opt);
    result.exit_code = result.report.all_passed() ? 0 : 1;

    if (write_outputs) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.output_dir);
        const std::string dir = cfg.output_dir + "/";

        for (std::size_t i = 0; i < result.trajectory.snapshots.size(); ++i) {
            std::ostringstream name;
            name << dir << "snapshot_" << i << ".csv";
            write_snapshot_csv(name.str(), result.trajectory.snapshots[i].u);
        }
        write_series_csv(dir + "series.csv", result.trajectory.series);
        write_report_csv(dir + "report.csv", result.report);
        std::ofstream txt(dir + "report.txt");
        txt << result.report.to_text();

        // resumable final state
        if (!result.trajectory.snapshots.empty()) {
            write_snapshot_csv(dir + "final_state.csv",
                               result.trajectory.snapshots.back().u);
            std::map<std::string, std::string> meta;
            meta["p"] = fmt_double(cfg.p);
            meta["variant"] = variant_name(cfg.variant);
            meta["kernel.family"] = cfg.kernel_family == KernelFamily::step    ? "step"
                                    : cfg.kernel_family == KernelFamily::power ? "power"
                                                                               : "bump";
            meta["kernel.radius"] = fmt_double(cfg.kernel_radius);
            meta["kernel.exponent"] = fmt_double(cfg.kernel_exponent);
            meta["t"] = fmt_double(result.trajectory.snapshots.back().t);
            meta["scheme"] = cfg.scheme == Scheme::proximal ? "proximal" : "explicit";
            meta["dt_max"] = fmt_double(cfg.dt_max);
            write_sidecar(dir + "final_state.meta", meta);
        }
    }
    return result;
}

DiagnosticsReport verify_inequalities(unsigned long seed, std::size_t samples) {
    DiagnosticsReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(-4.0, 4.0);
    auto draw = [&] { return std::copysign(std::pow(10.0, mag(rng)) - 1e-4, mag(rng)); };
    const std::vector<double> ps = {1.5, 2.0, 2.5, 3.0, 4.0};
    const double tol = 1e-12;

    for (double p : ps) {
        double worst_pointwise = -kInf, worst_lp = -kInf, worst_mp = -kInf;
        double worst_lower = -kInf, worst_deriv = -kInf;
        for (std::size_t i = 0; i < samples; ++i) {
            const double a = draw();
            const double b = draw();
            // relative residuals keep the 1e-12 rounding slack meaningful
            if (p >= 2.0) {
                const double aa = std::abs(a), bb = std::abs(b);
                const double s1 = 1.0 + std::pow(std::max(aa, bb), p - 1.0);
                worst_pointwise =
                    std::max(worst_pointwise, pointwise_ineq_residual(aa, bb, p) / s1);
                worst_mp = std::max(worst_mp, mp_lipschitz_residual(a, b, p) /
                                                  (1.0 + std::pow(aa + bb, p - 2.0)));
            }
            const double scale_lp = 1.0 + std::pow(std::abs(a) + std::abs(b), p - 1.0);
            worst_lp = std::max(worst_lp, lp_lipschitz_residual(a, b, p) / scale_lp);
            if (p <= 2.0 && a != b) {
                const double lo = std::min(a, b), hi = std::max(a, b);
                worst_lower =
                    std::max(worst_lower, lp_lower_bound_residual(lo, hi, p) / scale_lp);
            }
            for (int r = 1; r <= 3; ++r) {
                const bool integer_p = std::abs(p - std::round(p)) < 1e-12;
                const bool in_range = r < p - 1.0 && (r % 2 == 1 || p - r >= 2.0);
                const bool degenerate = integer_p && r >= static_cast<int>(p) - 1;
                if (!in_range && !degenerate) continue;
                const double s =
                    1.0 + std::pow(std::abs(a) + std::abs(b), std::max(p - r - 1.0, 0.0));
                worst_deriv =
                    std::max(worst_deriv, lp_derivative_residual(a, b, p, r) / s);
            }
        }
        std::ostringstream tag;
        tag << "p=" << p;
        if (p >= 2.0) {
            rep.checks.push_back(one_sided("pointwise_ineq_" + tag.str(),
                                           "pointwise convexity inequality",
                                           worst_pointwise, tol));
            rep.checks.push_back(one_sided("mp_difference_" + tag.str(),
                                           "M_p difference bound", worst_mp, tol));
        }
        rep.checks.push_back(one_sided("lp_difference_" + tag.str(),
                                       "L_p difference bound", worst_lp, tol));
        if (p <= 2.0)
            rep.checks.push_back(one_sided("lp_lower_bound_" + tag.str(),
                                           "L_p monotonicity lower bound", worst_lower,
                                           tol));
        if (worst_deriv > -kInf)
            rep.checks.push_back(one_sided("lp_derivative_" + tag.str(),
                                           "L_p derivative difference bounds",
                                           worst_deriv, tol));
    }
    return rep;
}

DiagnosticsReport verify_oracle() {
    DiagnosticsReport rep;

    const Kernel kernel = make_step_kernel(0.5, 1);
    const Grid grid = Grid::make(1, 1.0, 1.0 / 128.0);
    ProblemSpec spec;
    spec.variant = Variant::dirichlet;
    spec.domain = {-1.0, 1.0};

    GridFunction u0(grid);
    for (int i = 0; i < grid.points_per_axis; ++i)
        u0.at(i) = std::abs(grid.coord(i)) <= 0.5 ? 1.0 : 0.0;

    StepperConfig cfg;
    cfg.scheme = Scheme::explicit_euler;
    cfg.dt_max = 1e-3;
    cfg.cfl_theta = 1.0;  // dt is capped by dt_max = 1e-3 well below stability
    cfg.record_series = false;
    cfg.snapshot_times = {1.0};
    const Trajectory traj = evolve(u0, spec, kernel, 2.0, 1.0, cfg);

    const WeightStencil stencil = discrete_weights(kernel, grid.spacing);
    const GridFunction ref = linear_evolve(u0, stencil, spec, 1.0, 1e-4);

    double disc = 0.0;
    for (std::size_t i = 0; i < ref.values.size(); ++i)
        disc = std::max(disc,
                        std::abs(ref.values[i] - traj.snapshots.back().u.values[i]));
    rep.checks.push_back(one_sided("oracle_agreement",
                                   "linear-case representation formula", disc, 5e-3));
    return rep;
}

DiagnosticsReport verify_invariants(unsigned long seed) {
    DiagnosticsReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    const Kernel kernel = make_step_kernel(0.5, 1);
    const Grid grid = Grid::make(1, 1.0, 1.0 / 16.0);
    const WeightStencil stencil = discrete_weights(kernel, grid.spacing);
    ProblemSpec neumann;
    neumann.variant = Variant::neumann;
    neumann.domain = {-1.0, 1.0};

    auto random_fn = [&] {
        GridFunction f(grid);
        for (double& v : f.values) v = unif(rng);
        return f;
    };

    // stencil symmetry (exact)
    {
        double worst = 0.0;
        for (std::size_t m = 0; m < stencil.size(); ++m) {
            for (std::size_t k = 0; k < stencil.size(); ++k)
                if (stencil.offsets[k].d0 == -stencil.offsets[m].d0 &&
                    stencil.offsets[k].d1 == -stencil.offsets[m].d1)
                    worst = std::max(worst,
                                     std::abs(stencil.weights[k] - stencil.weights[m]));
        }
        rep.checks.push_back(one_sided("stencil_symmetry", "even kernel symmetry", worst, 0.0));
    }

    // integration by parts, operator oddness (both at machine precision)
    for (double p : {1.5, 2.0, 3.0}) {
        double worst_ibp = 0.0, worst_odd = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            GridFunction u = random_fn(), v = random_fn();
            const GridFunction lu = apply_operator(u, stencil, neumann, p);
            std::vector<double> terms;
            for (std::size_t i = 0; i < lu.values.size(); ++i)
                terms.push_back(grid.spacing * v.values[i] * lu.values[i]);
            const double lhs = -pairwise_sum(terms);
            const double rhs = energy(u, v, stencil, neumann, p);
            worst_ibp = std::max(worst_ibp,
                                 std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));

            GridFunction nu = u;
            for (double& x : nu.values) x = -x;
            const GridFunction lnu = apply_operator(nu, stencil, neumann, p);
            for (std::size_t i = 0; i < lu.values.size(); ++i)
                worst_odd = std::max(worst_odd, std::abs(lnu.values[i] + lu.values[i]));
        }
        std::ostringstream tag;
        tag << "p=" << p;
        rep.checks.push_back(one_sided("integration_by_parts_" + tag.str(),
                                       "discrete integration by parts", worst_ibp, 1e-12));
        rep.checks.push_back(one_sided("operator_oddness_" + tag.str(),
                                       "odd nonlinearity", worst_odd, 0.0));
    }

    // Neumann mass conservation along a full explicit run
    {
        GridFunction u0 = random_fn();
        StepperConfig cfg;
        cfg.scheme = Scheme::explicit_euler;
        const Trajectory traj = evolve(u0, neumann, kernel, 3.0, 1.0, cfg);
        double worst = 0.0;
        for (const auto& s : traj.series)
            worst = std::max(worst, std::abs(s.mass - traj.series.front().mass));
        rep.checks.push_back(one_sided("neumann_mass", "mass conservation", worst, 1e-12));
    }

    // proximal contractivity and comparison on random datum pairs
    for (double p : {1.5, 3.0}) {
        StepperConfig cfg;
        cfg.scheme = Scheme::proximal;
        cfg.prox_tol = 1e-12;
        const double dt = 0.05;
        double worst_contract = -kInf, worst_compare = -kInf;
        for (int trial = 0; trial < 5; ++trial) {
            GridFunction u = random_fn(), v = random_fn();
            GridFunction lo = u, hi = u;
            for (double& x : hi.values) x += 0.25 * (1.0 + unif(rng));
            double prev[3] = {lq_norm_diff(u, v, 1.0, neumann),
                              lq_norm_diff(u, v, 2.0, neumann),
                              lq_norm_diff(u, v, kInf, neumann)};
            for (int step = 0; step < 4; ++step) {
                u = proximal_step(u, stencil, neumann, p, dt, cfg).v;
                v = proximal_step(v, stencil, neumann, p, dt, cfg).v;
                lo = proximal_step(lo, stencil, neumann, p, dt, cfg).v;
                hi = proximal_step(hi, stencil, neumann, p, dt, cfg).v;
                const double now[3] = {lq_norm_diff(u, v, 1.0, neumann),
                                       lq_norm_diff(u, v, 2.0, neumann),
                                       lq_norm_diff(u, v, kInf, neumann)};
                for (int k = 0; k < 3; ++k) {
                    worst_contract = std::max(worst_contract, now[k] - prev[k]);
                    prev[k] = now[k];
                }
                for (std::size_t i = 0; i < lo.values.size(); ++i)
                    worst_compare = std::max(worst_compare, lo.values[i] - hi.values[i]);
            }
        }
        std::ostringstream tag;
        tag << "p=" << p;
        rep.checks.push_back(one_sided("lq_contractivity_" + tag.str(),
                                       "Lq contraction of trajectory pairs",
                                       worst_contract, 1e-10));
        rep.checks.push_back(one_sided("comparison_" + tag.str(),
                                       "weak comparison of ordered data", worst_compare,
                                       1e-10));
    }

    return rep;
}

RunConfig figure1_preset() {
    RunConfig cfg;
    cfg.variant = Variant::cauchy;
    cfg.padding_layers = 2;
    cfg.kernel_family = KernelFamily::step;
    cfg.kernel_radius = 0.5;
    cfg.p = 3.0;
    cfg.dimension = 1;
    cfg.extent = 3.0;
    cfg.spacing = 1.0 / 64.0;
    cfg.initial_family = InitialFamily::indicator;
    cfg.initial_support = {-1.0, 1.0};
    cfg.initial_height = 1.0;
    cfg.horizon = 1.0;
    cfg.snapshot_times = {0.0, 0.1, 0.25, 0.5, 0.75, 1.0};
    cfg.scheme = Scheme::explicit_euler;
    cfg.modulus_window = Box{1.25, 1.75};
    cfg.modulus_radii = {1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0};
    cfg.output_dir = "out/figure1";
    return cfg;
}

RunConfig figure2_preset() {
    RunConfig cfg = figure1_preset();
    cfg.kernel_family = KernelFamily::bump;
    cfg.kernel_radius = 0.5;
    cfg.kernel_exponent = 4.0;
    cfg.output_dir = "out/figure2";
    return cfg;
}

CornerMetrics corner_metrics(const Trajectory& traj, const Box& window) {
    if (traj.grid.dimension != 1)
        throw InvalidParameter("corner_metrics: 1D only");
    CornerMetrics m;
    const Grid& g = traj.grid;
    const double h = g.spacing;
    for (const auto& snap : traj.snapshots) {
        if (snap.t == 0.0) continue;
        for (int i = 1; i + 1 < g.points_per_axis; ++i) {
            if (!window.contains(g.coord(i))) continue;
            m.max_slope =
                std::max(m.max_slope, std::abs(snap.u.at(i + 1) - snap.u.at(i)) / h);
            m.max_curvature = std::max(
                m.max_curvature,
                std::abs(snap.u.at(i + 1) - 2.0 * snap.u.at(i) + snap.u.at(i - 1)) /
                    (h * h));
        }
    }
    return m;
}

}  // namespace nlpl
