#include "nlpl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlpl/pde_operator.hpp"

namespace nlpl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SmoothingConstants smoothing_constants(double p, double q, double j_inf) {
    if (!(p > 2.0)) throw InvalidParameter("smoothing_constants: requires p > 2");
    if (!(q >= 1.0)) throw InvalidParameter("smoothing_constants: requires q >= 1");
    if (!(j_inf > 0.0)) throw InvalidParameter("smoothing_constants: j_inf must be positive");
    SmoothingConstants c;
    c.p = p;
    c.q = q;
    c.j_inf = j_inf;
    c.k_tilde = 2.0 * std::pow(8.0 / (p - 2.0), 1.0 / ((p - 2.0) * (p - 1.0)));
    const double k_pow =
        q * std::pow(8.0 * p, p * (p + q) / q) * std::pow(j_inf, (p - 1.0) / q);
    c.k_pqj = std::pow(k_pow, 1.0 / (p - 1.0));
    return c;
}

double smoothing_crossover(const SmoothingConstants& c, double u0_lq) {
    return std::pow(c.k_pqj / c.k_tilde * u0_lq, 2.0 - c.p);
}

bool DiagnosticsReport::all_passed() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return false;
    return true;
}

namespace {
const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::warn: return "warn";
        case CheckStatus::skipped: return "skip";
    }
    return "?";
}
}  // namespace

std::string DiagnosticsReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << "[" << status_name(c.status) << "] " << c.name << " (" << c.estimate << ")";
        if (c.status == CheckStatus::pass || c.status == CheckStatus::fail ||
            c.status == CheckStatus::warn)
            os << "  residual=" << c.residual << "  tol=" << c.tolerance;
        if (!c.detail.empty()) os << "  -- " << c.detail;
        os << "\n";
    }
    return os.str();
}

std::vector<double> check_smoothing(const Trajectory& traj, const SmoothingConstants& c,
                                    double q, double kappa_divisor) {
    if (traj.snapshots.empty())
        throw InvalidParameter("check_smoothing: trajectory has no snapshots");
    const double p = traj.p;
    const double t0 = traj.snapshots.front().t;
    const double u0_lq = lq_norm(traj.snapshots.front().u, q, traj.spec);
    std::vector<double> res;
    for (const auto& snap : traj.snapshots) {
        if (!(snap.t > t0)) continue;
        const double linf = lq_norm(snap.u, kInf, traj.spec);
        const double bound = (c.k_tilde * std::pow(snap.t, -1.0 / (p - 2.0)) +
                              c.k_pqj * u0_lq) /
                             kappa_divisor;
        res.push_back(linf - bound);
    }
    return res;
}

std::vector<double> check_smoothing_two_regime(const Trajectory& traj,
                                               const SmoothingConstants& c, double q) {
    if (traj.snapshots.empty())
        throw InvalidParameter("check_smoothing_two_regime: trajectory has no snapshots");
    const double p = traj.p;
    const double u0_lq = lq_norm(traj.snapshots.front().u, q, traj.spec);
    const double t_star = smoothing_crossover(c, u0_lq);
    std::vector<double> res;
    for (const auto& snap : traj.snapshots) {
        if (!(snap.t > 0.0) || snap.t > t_star) continue;
        const double linf = lq_norm(snap.u, kInf, traj.spec);
        res.push_back(linf - 2.0 * c.k_tilde * std::pow(snap.t, -1.0 / (p - 2.0)));
    }
    return res;
}

double check_ut_smoothing(const Trajectory& traj) {
    if (traj.snapshots.empty())
        throw InvalidParameter("check_ut_smoothing: trajectory has no snapshots");
    const double u0_linf = lq_norm(traj.snapshots.front().u, kInf, traj.spec);
    const double bound = std::pow(2.0, traj.p) * std::pow(u0_linf, traj.p - 1.0);
    double worst = -kInf;
    for (const auto& snap : traj.snapshots) {
        const GridFunction rate = apply_operator(snap.u, traj.stencil, traj.spec, traj.p);
        worst = std::max(worst, lq_norm(rate, kInf, traj.spec) - bound);
    }
    return worst;
}

double check_benilan_crandall(const Trajectory& traj) {
    if (!(traj.p > 2.0))
        throw InvalidParameter("check_benilan_crandall: requires p > 2");
    const IndexBox box = active_box(traj.grid, traj.spec);
    double min_slack = kInf;
    for (const auto& snap : traj.snapshots) {
        if (!(snap.t > 0.0)) continue;
        const GridFunction rate = apply_operator(snap.u, traj.stencil, traj.spec, traj.p);
        const int jlo = traj.grid.dimension == 1 ? 0 : box.lo;
        const int jhi = traj.grid.dimension == 1 ? 0 : box.hi;
        for (int i = box.lo; i <= box.hi; ++i)
            for (int j = jlo; j <= jhi; ++j)
                min_slack = std::min(min_slack,
                                     rate.at(i, j) + snap.u.at(i, j) /
                                                         ((traj.p - 2.0) * snap.t));
    }
    return min_slack;
}

double check_time_monotonicity(const Trajectory& traj) {
    if (!(traj.p > 2.0))
        throw InvalidParameter("check_time_monotonicity: requires p > 2");
    const IndexBox box = active_box(traj.grid, traj.spec);
    const double e = 1.0 / (traj.p - 2.0);
    double min_inc = kInf;
    const Snapshot* prev = nullptr;
    for (const auto& snap : traj.snapshots) {
        if (!(snap.t > 0.0)) continue;
        if (prev) {
            const double w1 = std::pow(prev->t, e);
            const double w2 = std::pow(snap.t, e);
            const int jlo = traj.grid.dimension == 1 ? 0 : box.lo;
            const int jhi = traj.grid.dimension == 1 ? 0 : box.hi;
            for (int i = box.lo; i <= box.hi; ++i)
                for (int j = jlo; j <= jhi; ++j)
                    min_inc = std::min(min_inc,
                                       w2 * snap.u.at(i, j) - w1 * prev->u.at(i, j));
        }
        prev = &snap;
    }
    return min_inc;
}

DecayFit decay_rate_fit(const Trajectory& traj, double t_a, double t_b, DecayMode mode) {
    const IndexBox box = active_box(traj.grid, traj.spec);
    double mean0 = 0.0;
    if (mode == DecayMode::neumann) {
        const auto count = static_cast<double>(box.count()) *
                           (traj.grid.dimension == 1 ? 1.0 : box.count());
        std::vector<double> vals;
        const int jlo = traj.grid.dimension == 1 ? 0 : box.lo;
        const int jhi = traj.grid.dimension == 1 ? 0 : box.hi;
        for (int i = box.lo; i <= box.hi; ++i)
            for (int j = jlo; j <= jhi; ++j)
                vals.push_back(traj.snapshots.front().u.at(i, j));
        mean0 = pairwise_sum(vals) / count;
    }

    std::vector<double> logt, logd;
    DecayFit fit;
    for (const auto& snap : traj.snapshots) {
        if (snap.t < t_a || snap.t > t_b) continue;
        double dev = 0.0;
        const int jlo = traj.grid.dimension == 1 ? 0 : box.lo;
        const int jhi = traj.grid.dimension == 1 ? 0 : box.hi;
        for (int i = box.lo; i <= box.hi; ++i)
            for (int j = jlo; j <= jhi; ++j)
                dev = std::max(dev, std::abs(snap.u.at(i, j) - mean0));
        fit.weighted_sup =
            std::max(fit.weighted_sup, std::pow(snap.t, 1.0 / traj.p) * dev);
        if (dev < 1e-13) continue;
        logt.push_back(std::log(snap.t));
        logd.push_back(std::log(dev));
    }
    fit.points = static_cast<int>(logt.size());
    if (fit.points == 0) {
        fit.exact_equilibrium = true;
        return fit;
    }
    if (fit.points < 4)
        throw InvalidParameter("decay_rate_fit: fewer than 4 snapshots in the window");

    const auto n = static_cast<double>(logt.size());
    const double st = pairwise_sum(logt), sd = pairwise_sum(logd);
    std::vector<double> tt(logt.size()), td(logt.size());
    for (std::size_t i = 0; i < logt.size(); ++i) {
        tt[i] = logt[i] * logt[i];
        td[i] = logt[i] * logd[i];
    }
    fit.slope = (n * pairwise_sum(td) - st * sd) / (n * pairwise_sum(tt) - st * st);
    return fit;
}

std::vector<double> check_modulus_preservation(const Trajectory& traj,
                                               const std::vector<double>& radii,
                                               const Box& window,
                                               const std::vector<double>& omega_j) {
    if (omega_j.size() != radii.size())
        throw InvalidParameter("check_modulus_preservation: omega_j/radii size mismatch");
    const std::vector<double> omega_u0 =
        modulus_estimate(traj.snapshots.front().u, radii, window);
    std::vector<double> out;
    for (const auto& snap : traj.snapshots) {
        const std::vector<double> mod = modulus_estimate(snap.u, radii, window);
        double sup = 0.0;
        for (std::size_t r = 0; r < radii.size(); ++r) {
            const double rho = radii[r];
            const double denom =
                std::max({omega_u0[r], omega_j[r], rho, std::pow(rho, traj.p - 2.0)});
            if (denom > 0.0) sup = std::max(sup, mod[r] / denom);
        }
        out.push_back(sup);
    }
    return out;
}

namespace {

struct JumpSet {
    std::vector<double> positions;
    std::vector<double> heights;
};

// Variant of jump_detect robust along an evolution: the median is taken over
// the differences above the floor, so the slowly varying bulk of a spreading
// profile sets the scale instead of the flat tails. When nearly all
// differences sit below the floor the profile is piecewise constant and the
// floor itself is the threshold.
JumpSet jumps_with_heights(const GridFunction& f, double factor) {
    constexpr double floor_abs = 1e-6;
    const Grid& g = f.grid;
    JumpSet js;
    std::vector<double> diffs(g.points_per_axis - 1);
    std::vector<double> significant;
    for (int i = 0; i + 1 < g.points_per_axis; ++i) {
        diffs[i] = std::abs(f.at(i + 1) - f.at(i));
        if (diffs[i] > floor_abs) significant.push_back(diffs[i]);
    }
    double threshold = floor_abs;
    if (significant.size() * 10 >= diffs.size()) {
        std::sort(significant.begin(), significant.end());
        threshold = std::max(floor_abs, factor * significant[significant.size() / 2]);
    }
    for (int i = 0; i + 1 < g.points_per_axis; ++i) {
        if (diffs[i] > threshold) {
            js.positions.push_back(g.coord(i) + 0.5 * g.spacing);
            js.heights.push_back(diffs[i]);
        }
    }
    return js;
}

}  // namespace

SingularityAudit check_singularity_stationarity(const Trajectory& traj, double factor) {
    if (traj.grid.dimension != 1)
        throw InvalidParameter("check_singularity_stationarity: 1D only");
    SingularityAudit audit;
    const JumpSet initial = jumps_with_heights(traj.snapshots.front().u, factor);
    audit.initial_positions = initial.positions;
    const double h = traj.grid.spacing;

    std::vector<double> last_heights = initial.heights;
    for (std::size_t si = 1; si < traj.snapshots.size(); ++si) {
        const JumpSet js = jumps_with_heights(traj.snapshots[si].u, factor);
        std::vector<double> heights_now(initial.positions.size(), 0.0);
        for (std::size_t k = 0; k < js.positions.size(); ++k) {
            double best = kInf;
            std::size_t best_idx = 0;
            for (std::size_t m = 0; m < initial.positions.size(); ++m) {
                const double d = std::abs(js.positions[k] - initial.positions[m]);
                if (d < best) {
                    best = d;
                    best_idx = m;
                }
            }
            if (initial.positions.empty() || best > 1.5 * h) {
                audit.new_jumps = true;
                continue;
            }
            audit.max_drift_cells = std::max(audit.max_drift_cells, best / h);
            heights_now[best_idx] = std::max(heights_now[best_idx], js.heights[k]);
        }
        for (std::size_t m = 0; m < heights_now.size(); ++m) {
            if (heights_now[m] == 0.0) continue;  // jump decayed below detection
            if (heights_now[m] > last_heights[m] + 1e-9)
                audit.heights_nonincreasing = false;
            last_heights[m] = heights_now[m];
        }
    }
    return audit;
}

double time_holder_seminorm(const Trajectory& traj, const std::array<double, 2>& probe,
                            int order, double gamma) {
    if (order < 1 || order > 3)
        throw InvalidParameter("time_holder_seminorm: order must be in [1, 3]");
    const auto& snaps = traj.snapshots;
    if (static_cast<int>(snaps.size()) < order + 2)
        throw InvalidParameter("time_holder_seminorm: snapshot schedule too coarse for the requested order");

    double dt_min = kInf, dt_max = 0.0;
    for (std::size_t i = 1; i < snaps.size(); ++i) {
        const double d = snaps[i].t - snaps[i - 1].t;
        dt_min = std::min(dt_min, d);
        dt_max = std::max(dt_max, d);
    }
    if (!(dt_min > 0.0) || dt_max > 2.0 * dt_min)
        throw InvalidParameter("time_holder_seminorm: snapshot spacing too irregular");

    const Grid& g = traj.grid;
    const int pi = static_cast<int>(std::llround((probe[0] + g.extent) / g.spacing));
    const int pj = g.dimension == 1
                       ? 0
                       : static_cast<int>(std::llround((probe[1] + g.extent) / g.spacing));

    std::vector<double> f(snaps.size()), t(snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        f[i] = snaps[i].u.at(pi, pj);
        t[i] = snaps[i].t;
    }

    // k-th derivative via Newton divided differences (handles the slightly
    // nonuniform nearest-step snapshot times), scaled by k!.
    const std::size_t m = snaps.size() - order;
    std::vector<double> deriv(m), mid(m);
    double factorial = 1.0;
    for (int k = 1; k <= order; ++k) factorial *= k;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> dd(f.begin() + i, f.begin() + i + order + 1);
        for (int level = 1; level <= order; ++level)
            for (int r = 0; r <= order - level; ++r)
                dd[r] = (dd[r + 1] - dd[r]) / (t[i + r + level] - t[i + r]);
        deriv[i] = factorial * dd[0];
        mid[i] = 0.5 * (t[i] + t[i + order]);
    }

    double seminorm = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            seminorm = std::max(seminorm, std::abs(deriv[b] - deriv[a]) /
                                              std::pow(std::abs(mid[b] - mid[a]), gamma));
    return seminorm;
}

double check_functional_inequality(const GridFunction& u, const WeightStencil& s,
                                   const ProblemSpec& spec, double p, double q,
                                   const SmoothingConstants& c) {
    if (!(p > 2.0)) throw InvalidParameter("check_functional_inequality: requires p > 2");
    const double l2 = lq_norm(u, 2.0, spec);
    const double e = energy(u, u, s, spec, p);
    const double grow = std::pow(e, 1.0 / (p - 1.0));
    const double shrink = std::pow(e, -(p - 2.0) / (p - 1.0));  // +inf at e = 0
    const double rhs =
        (c.k_tilde + 2.0) * std::max(grow, shrink) + c.k_pqj * lq_norm(u, q, spec);
    return l2 * l2 - rhs;
}

namespace {

void add(DiagnosticsReport& rep, CheckRecord rec) { rep.checks.push_back(std::move(rec)); }

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

CheckRecord skipped(const std::string& name, const std::string& estimate,
                    const std::string& reason) {
    CheckRecord r;
    r.name = name;
    r.estimate = estimate;
    r.status = CheckStatus::skipped;
    r.detail = reason;
    return r;
}

}  // namespace

DiagnosticsReport run_all_checks(const Trajectory& traj, const AuditOptions& opt) {
    DiagnosticsReport rep;
    const double p = traj.p;
    const bool smoothing_applies = p > 2.0;
    double max_dt = 0.0;
    for (const auto& s : traj.series) max_dt = std::max(max_dt, s.dt);

    // monotonicity of the norm series
    {
        double worst = -kInf;
        for (std::size_t i = 1; i < traj.series.size(); ++i) {
            const auto& a = traj.series[i - 1];
            const auto& b = traj.series[i];
            worst = std::max({worst, b.l1 - a.l1 - 1e-10 * (1.0 + a.l1),
                              b.l2 - a.l2 - 1e-10 * (1.0 + a.l2),
                              b.linf - a.linf - 1e-10 * (1.0 + a.linf)});
        }
        add(rep, one_sided("norm_monotonicity", "Lq-norm decay along the flow",
                           traj.series.size() > 1 ? worst : 0.0, 0.0));
    }

    // mass conservation (Neumann)
    if (traj.spec.variant == Variant::neumann) {
        double worst = 0.0;
        const double m0 = traj.series.empty() ? 0.0 : traj.series.front().mass;
        for (const auto& s : traj.series)
            worst = std::max(worst, std::abs(s.mass - m0));
        add(rep, one_sided("mass_conservation", "Neumann mass invariance", worst,
                           1e-12 * (1.0 + std::abs(m0)) * std::max<std::size_t>(traj.series.size(), 1)));
    } else {
        add(rep, skipped("mass_conservation", "Neumann mass invariance",
                         "only audited for the Neumann problem"));
    }

    // energy dissipation
    {
        bool any_explicit = false;
        for (const auto& s : traj.steps) any_explicit |= (s.scheme == 'e');
        double worst = -kInf;
        double slack_scale =
            any_explicit
                ? 10.0 * p * p * std::pow(1.0 + 2.0 * traj.initial_linf, p) *
                      (1.0 + (traj.series.empty() ? 0.0 : traj.series.front().energy))
                : 0.0;
        for (std::size_t i = 1; i < traj.series.size(); ++i) {
            const double step_tol =
                1e-12 * (1.0 + std::abs(traj.series[i - 1].energy)) +
                slack_scale * traj.series[i].dt * traj.series[i].dt;
            worst = std::max(worst,
                             traj.series[i].energy - traj.series[i - 1].energy - step_tol);
        }
        add(rep, one_sided("energy_dissipation", "energy decay along the flow",
                           traj.series.size() > 1 ? worst : 0.0, 0.0));
    }

    // smoothing bounds
    if (smoothing_applies) {
        const SmoothingConstants c = smoothing_constants(p, opt.q, opt.j_inf);
        const double kappa_div =
            traj.spec.variant == Variant::neumann ? opt.kappa : 1.0;
        const auto res = check_smoothing(traj, c, opt.q, kappa_div);
        double worst = -kInf;
        for (double r : res) worst = std::max(worst, r);
        add(rep, one_sided("smoothing_bound", "Lq-Linf smoothing with explicit constants",
                           res.empty() ? -kInf : worst, 0.0));

        const auto res2 = check_smoothing_two_regime(traj, c, opt.q);
        if (res2.empty()) {
            add(rep, skipped("smoothing_two_regime", "two-regime smoothing with crossover",
                             "no snapshots at or before the crossover time"));
        } else {
            double worst2 = -kInf;
            for (double r : res2) worst2 = std::max(worst2, r);
            add(rep, one_sided("smoothing_two_regime",
                               "two-regime smoothing with crossover", worst2, 0.0));
        }
    } else {
        add(rep, skipped("smoothing_bound", "Lq-Linf smoothing with explicit constants",
                         "requires p > 2"));
        add(rep, skipped("smoothing_two_regime", "two-regime smoothing with crossover",
                         "requires p > 2"));
    }

    // time-derivative smoothing
    if (!traj.snapshots.empty()) {
        add(rep, one_sided("ut_smoothing", "Linf bound on the time derivative",
                           check_ut_smoothing(traj), opt.base_tol));
    } else {
        add(rep, skipped("ut_smoothing", "Linf bound on the time derivative",
                         "no snapshots recorded"));
    }

    // Benilan-Crandall and time monotonicity
    if (smoothing_applies && traj.nonnegative_datum && !traj.snapshots.empty()) {
        double max_rate = 0.0;
        for (const auto& snap : traj.snapshots) {
            const GridFunction rate = apply_operator(snap.u, traj.stencil, traj.spec, p);
            max_rate = std::max(max_rate, lq_norm(rate, kInf, traj.spec));
        }
        const double tol = opt.base_tol + 2.0 * max_dt * max_rate;
        add(rep, one_sided("benilan_crandall", "lower bound on u_t for nonnegative data",
                           -check_benilan_crandall(traj), tol));
        add(rep, one_sided("time_monotonicity",
                           "monotonicity of t^{1/(p-2)} u for nonnegative data",
                           -check_time_monotonicity(traj), tol));
    } else {
        const std::string why = !smoothing_applies ? "requires p > 2"
                                                   : "requires a nonnegative datum";
        add(rep, skipped("benilan_crandall", "lower bound on u_t for nonnegative data", why));
        add(rep, skipped("time_monotonicity",
                         "monotonicity of t^{1/(p-2)} u for nonnegative data", why));
    }

    // asymptotic decay
    if (opt.decay_window && smoothing_applies && traj.spec.variant != Variant::cauchy) {
        const DecayMode mode = traj.spec.variant == Variant::neumann
                                   ? DecayMode::neumann
                                   : DecayMode::dirichlet;
        try {
            const DecayFit fit =
                decay_rate_fit(traj, opt.decay_window->first, opt.decay_window->second, mode);
            if (fit.exact_equilibrium) {
                CheckRecord r;
                r.name = "asymptotic_decay";
                r.estimate = "t^{-1/p} decay rate";
                r.status = CheckStatus::pass;
                r.detail = "exact equilibrium, slope undefined";
                add(rep, std::move(r));
            } else {
                std::ostringstream d;
                d << "slope=" << fit.slope << " weighted_sup=" << fit.weighted_sup
                  << " points=" << fit.points;
                add(rep, one_sided("asymptotic_decay", "t^{-1/p} decay rate",
                                   fit.slope - (-1.0 / p + opt.decay_slope_slack), 0.0,
                                   d.str()));
            }
        } catch (const InvalidParameter& e) {
            add(rep, skipped("asymptotic_decay", "t^{-1/p} decay rate", e.what()));
        }
    } else {
        add(rep, skipped("asymptotic_decay", "t^{-1/p} decay rate",
                         smoothing_applies ? "needs a bounded domain and a decay window"
                                           : "requires p > 2"));
    }

    // modulus preservation
    if (opt.modulus_window && !opt.modulus_radii.empty() && !traj.snapshots.empty()) {
        std::vector<double> omega_j(opt.modulus_radii.size(), 0.0);
        // omega_J enters through the caller-provided option; default 0 keeps
        // the denominator driven by rho and the datum modulus
        const auto ratios = check_modulus_preservation(traj, opt.modulus_radii,
                                                       *opt.modulus_window, omega_j);
        double sup = 0.0;
        for (double r : ratios) sup = std::max(sup, r);
        CheckRecord r;
        r.name = "modulus_preservation";
        r.estimate = "modulus-of-continuity preservation";
        r.residual = sup;
        r.tolerance = kInf;
        r.status = std::isfinite(sup) ? CheckStatus::pass : CheckStatus::fail;
        r.detail = "sup ratio against max(omega_u0, omega_J, rho, rho^{p-2})";
        add(rep, std::move(r));
    } else {
        add(rep, skipped("modulus_preservation", "modulus-of-continuity preservation",
                         "no modulus window configured"));
    }

    // singular set stationarity
    if (traj.grid.dimension == 1 && !traj.snapshots.empty()) {
        const SingularityAudit audit = check_singularity_stationarity(traj, opt.jump_factor);
        std::ostringstream d;
        d << "initial_jumps=" << audit.initial_positions.size()
          << " drift_cells=" << audit.max_drift_cells
          << " new_jumps=" << (audit.new_jumps ? "yes" : "no");
        CheckRecord r;
        r.name = "singularity_stationarity";
        r.estimate = "jump positions stationary, heights nonincreasing";
        r.residual = audit.max_drift_cells;
        r.tolerance = 1.0;
        r.status = (!audit.new_jumps && audit.heights_nonincreasing &&
                    audit.max_drift_cells <= 1.0)
                       ? CheckStatus::pass
                       : CheckStatus::fail;
        r.detail = d.str();
        add(rep, std::move(r));
    } else {
        add(rep, skipped("singularity_stationarity",
                         "jump positions stationary, heights nonincreasing",
                         "1D trajectories only"));
    }

    // EVI residual per proximal step
    {
        bool any_prox_probe = false;
        double worst = -kInf;
        for (const auto& s : traj.steps)
            if (s.scheme == 'p') {
                any_prox_probe = true;
                worst = std::max(worst, s.evi_residual);
            }
        if (any_prox_probe)
            add(rep, one_sided("evi_residual", "evolution variational inequality",
                               worst, opt.base_tol));
        else
            add(rep, skipped("evi_residual", "evolution variational inequality",
                             "no proximal steps with probes recorded"));
    }

    // functional inequality on snapshots
    if (smoothing_applies && !traj.snapshots.empty()) {
        const SmoothingConstants c = smoothing_constants(p, opt.q, opt.j_inf);
        double worst = -kInf;
        for (const auto& snap : traj.snapshots)
            worst = std::max(worst, check_functional_inequality(
                                        snap.u, traj.stencil, traj.spec, p, opt.q, c));
        add(rep, one_sided("functional_inequality",
                           "L2 bound through energy and Lq norm", worst, 0.0));
    } else {
        add(rep, skipped("functional_inequality", "L2 bound through energy and Lq norm",
                         "requires p > 2"));
    }

    // Cauchy truncation proxy
    if (traj.spec.variant == Variant::cauchy) {
        CheckRecord r;
        r.name = "cauchy_truncation_proxy";
        r.estimate = "boundary activity of the truncated Cauchy run";
        r.residual = traj.cauchy_boundary_activity;
        r.tolerance = 1e-6;
        r.status = traj.cauchy_boundary_activity <= 1e-6 ? CheckStatus::pass
                                                         : CheckStatus::warn;
        add(rep, std::move(r));
    } else {
        add(rep, skipped("cauchy_truncation_proxy",
                         "boundary activity of the truncated Cauchy run",
                         "Cauchy runs only"));
    }

    return rep;
}

}  // namespace nlpl
