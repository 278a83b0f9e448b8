#include "nlpl/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nlpl {

void StepperConfig::validate(double p) const {
    if (!(cfl_theta > 0.0) || cfl_theta > 1.0)
        throw InvalidParameter("stepper: cfl_theta must be in (0, 1]");
    if (!(dt_max > 0.0)) throw InvalidParameter("stepper: dt_max must be positive");
    if (!(prox_tol > 0.0)) throw InvalidParameter("stepper: prox_tol must be positive");
    if (prox_max_iters < 1) throw InvalidParameter("stepper: prox_max_iters must be >= 1");
    if (scheme == Scheme::explicit_euler && p < 2.0)
        throw InvalidParameter("stepper: the explicit scheme requires p >= 2; use proximal for p < 2");
}

double stable_dt(const GridFunction& u, const ProblemSpec& spec, double p,
                 double theta, double dt_max) {
    if (p < 2.0) throw InvalidParameter("stable_dt: requires p >= 2");
    const double linf = lq_norm(u, std::numeric_limits<double>::infinity(), spec);
    if (linf == 0.0) return dt_max;
    const double dt = theta / (2.0 * (p - 1.0) * std::pow(2.0 * linf, p - 2.0));
    return std::min(dt, dt_max);
}

GridFunction explicit_step(const GridFunction& u, const WeightStencil& s,
                           const ProblemSpec& spec, double p, double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("explicit_step: dt must be positive");
    GridFunction rate = apply_operator(u, s, spec, p);
    GridFunction out = u;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += dt * rate.values[i];
    out.check_finite("explicit_step");
    return out;
}

double squared_distance(const GridFunction& a, const GridFunction& b,
                        const ProblemSpec& spec) {
    const Grid& g = a.grid;
    const IndexBox box = active_box(g, spec);
    const double cell = g.dimension == 1 ? g.spacing : g.spacing * g.spacing;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(box.count()) *
                  (g.dimension == 1 ? 1 : box.count()));
    const int jlo = g.dimension == 1 ? 0 : box.lo;
    const int jhi = g.dimension == 1 ? 0 : box.hi;
    for (int i = box.lo; i <= box.hi; ++i)
        for (int j = jlo; j <= jhi; ++j) {
            const double d = a.at(i, j) - b.at(i, j);
            terms.push_back(d * d);
        }
    return cell * pairwise_sum(terms);
}

namespace {

struct ProxObjective {
    const GridFunction* u;
    const WeightStencil* s;
    const ProblemSpec* spec;
    double p;
    double dt;

    double operator()(const GridFunction& v) const {
        return energy(v, v, *s, *spec, p) / p +
               squared_distance(v, *u, *spec) / (2.0 * dt);
    }

    // gradient entries carry the h^n cell measure
    GridFunction gradient(const GridFunction& v) const {
        GridFunction rate = apply_operator(v, *s, *spec, p);
        const Grid& g = v.grid;
        const IndexBox box = active_box(g, *spec);
        const double cell = g.dimension == 1 ? g.spacing : g.spacing * g.spacing;
        GridFunction grad(g);
        const int jlo = g.dimension == 1 ? 0 : box.lo;
        const int jhi = g.dimension == 1 ? 0 : box.hi;
        for (int i = box.lo; i <= box.hi; ++i)
            for (int j = jlo; j <= jhi; ++j)
                grad.at(i, j) =
                    cell * (-rate.at(i, j) + (v.at(i, j) - u->at(i, j)) / dt);
        return grad;
    }
};

double l2(const std::vector<double>& v) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
    return std::sqrt(pairwise_sum(sq));
}

}  // namespace

ProxResult proximal_step(const GridFunction& u, const WeightStencil& s,
                         const ProblemSpec& spec, double p, double dt,
                         const StepperConfig& config) {
    if (!(dt > 0.0)) throw InvalidParameter("proximal_step: dt must be positive");
    const ProxObjective obj{&u, &s, &spec, p, dt};
    const double armijo_c = 1e-4;

    // Nesterov acceleration with function-value restart; the energy gradient
    // is badly conditioned for p < 2, where plain descent stalls.
    GridFunction v = u;
    GridFunction y = u;
    double fv = obj(v);
    double momentum = 1.0;
    double alpha = 1.0;  // warm-started across iterations
    double grad_norm = 0.0;

    int iter = 0;
    bool stalled = false;
    for (; iter < config.prox_max_iters; ++iter) {
        GridFunction grad_v = obj.gradient(v);
        grad_norm = l2(grad_v.values);
        if (grad_norm <= config.prox_tol) return {std::move(v), iter, grad_norm};

        GridFunction grad = obj.gradient(y);
        const double fy = obj(y);
        const double g2y = [&] {
            const double n = l2(grad.values);
            return n * n;
        }();
        // objective comparisons lose meaning once the achievable decrease
        // drops under rounding; finish with the gradient-norm polish below
        if (armijo_c * g2y <= 64.0 * 1e-16 * (1.0 + std::abs(fy))) {
            stalled = true;
            break;
        }

        alpha = std::min(alpha * 2.0, 1e8);
        GridFunction next;
        bool accepted = false;
        for (int back = 0; back < 120; ++back) {
            GridFunction trial = y;
            for (std::size_t i = 0; i < trial.values.size(); ++i)
                trial.values[i] -= alpha * grad.values[i];
            if (obj(trial) <= fy - armijo_c * alpha * g2y) {
                next = std::move(trial);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            stalled = true;
            break;
        }

        const double fn = obj(next);
        if (fn > fv) {
            // restart the momentum from the best iterate
            y = v;
            momentum = 1.0;
            continue;
        }
        const double next_momentum =
            0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        const double beta = (momentum - 1.0) / next_momentum;
        y = next;
        for (std::size_t i = 0; i < y.values.size(); ++i)
            y.values[i] += beta * (next.values[i] - v.values[i]);
        v = std::move(next);
        fv = fn;
        momentum = next_momentum;
    }

    // polish: fixed-step descent judged by the gradient norm alone, immune
    // to objective rounding
    if (stalled) {
        GridFunction grad = obj.gradient(v);
        grad_norm = l2(grad.values);
        for (; iter < config.prox_max_iters; ++iter) {
            if (grad_norm <= config.prox_tol) return {std::move(v), iter, grad_norm};
            GridFunction trial = v;
            for (std::size_t i = 0; i < trial.values.size(); ++i)
                trial.values[i] -= alpha * grad.values[i];
            GridFunction trial_grad = obj.gradient(trial);
            const double trial_norm = l2(trial_grad.values);
            if (trial_norm < grad_norm) {
                v = std::move(trial);
                grad = std::move(trial_grad);
                grad_norm = trial_norm;
                alpha *= 1.1;
            } else {
                alpha *= 0.5;
                if (alpha < 1e-300)
                    throw StepFailure("proximal_step: polish stalled", grad_norm);
            }
        }
    }

    GridFunction grad = obj.gradient(v);
    grad_norm = l2(grad.values);
    if (grad_norm <= config.prox_tol)
        return {std::move(v), config.prox_max_iters, grad_norm};
    throw StepFailure("proximal_step: iteration cap exceeded (gradient norm " +
                          std::to_string(grad_norm) + ")",
                      grad_norm);
}

namespace {

double boundary_activity(const GridFunction& u, double support_radius) {
    const Grid& g = u.grid;
    const int layers = std::max(1, static_cast<int>(std::ceil(support_radius / g.spacing)));
    const int n = g.points_per_axis;
    double m = 0.0;
    if (g.dimension == 1) {
        for (int i = 0; i < n; ++i)
            if (i < layers || i >= n - layers) m = std::max(m, std::abs(u.at(i)));
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i < layers || i >= n - layers || j < layers || j >= n - layers)
                    m = std::max(m, std::abs(u.at(i, j)));
    }
    return m;
}

SeriesRecord make_record(const GridFunction& u, const ProblemSpec& spec,
                         const WeightStencil& s, double p, double t, double dt) {
    SeriesRecord r;
    r.t = t;
    r.l1 = lq_norm(u, 1.0, spec);
    r.l2 = lq_norm(u, 2.0, spec);
    r.linf = lq_norm(u, std::numeric_limits<double>::infinity(), spec);
    r.energy = energy(u, u, s, spec, p);
    r.mass = mass(u, spec);
    r.dt = dt;
    return r;
}

}  // namespace

Trajectory evolve(const GridFunction& u0, const ProblemSpec& spec, const Kernel& kernel,
                  double p, double T, const StepperConfig& config) {
    if (!(T > 0.0)) throw InvalidParameter("evolve: T must be positive");
    if (!(p > 1.0)) throw InvalidParameter("evolve: p must be > 1");
    config.validate(p);
    spec.validate(u0.grid);
    u0.check_finite("evolve initial datum");

    const WeightStencil stencil = discrete_weights(kernel, u0.grid.spacing);
    if (spec.variant == Variant::neumann) {
        // throws ConditionViolated when the computed kappa is not positive
        (void)neumann_kappa(kernel, spec.domain, u0.grid.spacing);
    }

    Trajectory traj;
    traj.grid = u0.grid;
    traj.spec = spec;
    traj.stencil = stencil;
    traj.p = p;
    traj.nonnegative_datum =
        *std::min_element(u0.values.begin(), u0.values.end()) >= 0.0;
    traj.initial_linf = lq_norm(u0, std::numeric_limits<double>::infinity(), spec);

    std::vector<double> snap_times = config.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    std::size_t snap_idx = 0;

    GridFunction u = u0;
    double t = 0.0;
    if (config.record_series)
        traj.series.push_back(make_record(u, spec, stencil, p, 0.0, 0.0));
    while (snap_idx < snap_times.size() && snap_times[snap_idx] <= 0.0) {
        traj.snapshots.push_back({0.0, u});
        ++snap_idx;
    }
    if (spec.variant == Variant::cauchy)
        traj.cauchy_boundary_activity = boundary_activity(u, kernel.support_radius);

    const double t_end = T * (1.0 - 1e-14);
    while (t < t_end) {
        double dt;
        GridFunction next;
        StepRecord rec;
        if (config.scheme == Scheme::explicit_euler) {
            dt = std::min(stable_dt(u, spec, p, config.cfl_theta, config.dt_max), T - t);
            const double linf_u = lq_norm(u, std::numeric_limits<double>::infinity(), spec);
            int halvings = 0;
            for (;;) {
                next = explicit_step(u, stencil, spec, p, dt);
                const double linf_next =
                    lq_norm(next, std::numeric_limits<double>::infinity(), spec);
                if (linf_next <= 2.0 * linf_u + 1.0) break;
                dt *= 0.5;  // instability guard
                if (++halvings > 60)
                    throw StepFailure("evolve: explicit step rejected repeatedly", linf_next);
            }
            rec.scheme = 'e';
        } else {
            dt = std::min(config.dt_max, T - t);
            ProxResult res = proximal_step(u, stencil, spec, p, dt, config);
            rec.scheme = 'p';
            rec.prox_iters = res.iterations;
            if (!config.evi_probes.empty()) {
                double worst = -std::numeric_limits<double>::infinity();
                const double iv = energy(res.v, res.v, stencil, spec, p) / p;
                for (const GridFunction& w : config.evi_probes) {
                    const double lhs = (squared_distance(res.v, w, spec) -
                                        squared_distance(u, w, spec)) /
                                       (2.0 * dt);
                    const double rhs = energy(w, w, stencil, spec, p) / p - iv;
                    worst = std::max(worst, lhs - rhs);
                }
                rec.evi_residual = worst;
            }
            next = std::move(res.v);
        }

        const double t_next = t + dt;
        rec.t = t_next;
        rec.dt = dt;
        traj.steps.push_back(rec);

        while (snap_idx < snap_times.size() && snap_times[snap_idx] <= t_next + 1e-14) {
            // nearest accepted step, never interpolation
            const double want = snap_times[snap_idx];
            const bool take_prev = std::abs(want - t) < std::abs(want - t_next);
            const double chosen_t = take_prev ? t : t_next;
            // snapshot times stay strictly increasing: collapse duplicates
            if (traj.snapshots.empty() || traj.snapshots.back().t < chosen_t)
                traj.snapshots.push_back({chosen_t, take_prev ? u : next});
            ++snap_idx;
        }

        u = std::move(next);
        t = t_next;
        if (config.record_series)
            traj.series.push_back(make_record(u, spec, stencil, p, t, dt));
        if (spec.variant == Variant::cauchy)
            traj.cauchy_boundary_activity = std::max(
                traj.cauchy_boundary_activity, boundary_activity(u, kernel.support_radius));
    }

    // any remaining requested times past T map to the final iterate
    if (snap_idx < snap_times.size() &&
        (traj.snapshots.empty() || traj.snapshots.back().t < t))
        traj.snapshots.push_back({t, u});
    return traj;
}

}  // namespace nlpl
