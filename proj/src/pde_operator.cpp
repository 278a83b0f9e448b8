#include "nlpl/pde_operator.hpp"

#include <algorithm>
#include <cmath>

namespace nlpl {

double lp_scalar(double tau, double p) {
    if (p <= 1.0) throw InvalidParameter("lp_scalar: p must be > 1");
    if (tau == 0.0) return 0.0;
    if (p == 2.0) return tau;
    if (p == 3.0) return std::abs(tau) * tau;
    if (p == 4.0) return tau * tau * tau;
    return std::pow(std::abs(tau), p - 2.0) * tau;
}

double mp_scalar(double tau, double p) {
    if (p <= 1.0) throw InvalidParameter("mp_scalar: p must be > 1");
    if (tau == 0.0) {
        if (p < 2.0) throw InvalidParameter("mp_scalar: singular at 0 for p < 2");
        return p == 2.0 ? 1.0 : 0.0;
    }
    return std::pow(std::abs(tau), p - 2.0);
}

namespace {

enum class NeighborRule { zero_pad, skip };

struct DomainView {
    const Grid* grid;
    IndexBox box;
    Variant variant;

    bool active(int i, int j) const {
        if (variant == Variant::cauchy) return true;
        return box.contains(i) && (grid->dimension == 1 || box.contains(j));
    }
};

}  // namespace

GridFunction apply_operator(const GridFunction& u, const WeightStencil& s,
                            const ProblemSpec& spec, double p) {
    const Grid& g = u.grid;
    if (s.dimension != g.dimension || std::abs(s.grid_spacing - g.spacing) > 1e-12)
        throw InvalidParameter("apply_operator: stencil does not match the grid");

    const DomainView dom{&g, active_box(g, spec), spec.variant};
    const bool skip_outside = spec.variant == Variant::neumann;
    const int n = g.points_per_axis;

    GridFunction out(g);
    const int jlo = g.dimension == 1 ? 0 : dom.box.lo;
    const int jhi = g.dimension == 1 ? 0 : dom.box.hi;
    const int ilo = spec.variant == Variant::cauchy ? 0 : dom.box.lo;
    const int ihi = spec.variant == Variant::cauchy ? n - 1 : dom.box.hi;
    const int cjlo = spec.variant == Variant::cauchy && g.dimension == 2 ? 0 : jlo;
    const int cjhi = spec.variant == Variant::cauchy && g.dimension == 2 ? n - 1 : jhi;

    for (int i = ilo; i <= ihi; ++i) {
        for (int j = cjlo; j <= cjhi; ++j) {
            const double ui = u.at(i, j);
            double acc = 0.0;
            for (std::size_t m = 0; m < s.size(); ++m) {
                const int ni = i + s.offsets[m].d0;
                const int nj = g.dimension == 1 ? 0 : j + s.offsets[m].d1;
                double uv;
                const bool in_grid = ni >= 0 && ni < n && (g.dimension == 1 || (nj >= 0 && nj < n));
                const bool in_dom = in_grid && dom.active(ni, nj);
                if (in_dom) {
                    uv = u.at(ni, nj);
                } else if (skip_outside) {
                    continue;
                } else {
                    uv = 0.0;  // zero padding / zero extension
                }
                acc += s.weights[m] * lp_scalar(uv - ui, p);
            }
            out.at(i, j) = acc;
        }
    }
    out.check_finite("apply_operator");
    return out;
}

double energy(const GridFunction& u, const GridFunction& v, const WeightStencil& s,
              const ProblemSpec& spec, double p) {
    const Grid& g = u.grid;
    if (!v.grid.same_as(g)) throw InvalidParameter("energy: grid mismatch");
    if (s.dimension != g.dimension || std::abs(s.grid_spacing - g.spacing) > 1e-12)
        throw InvalidParameter("energy: stencil does not match the grid");

    const DomainView dom{&g, active_box(g, spec), spec.variant};
    const bool neumann = spec.variant == Variant::neumann;
    const int n = g.points_per_axis;
    const double cell = g.dimension == 1 ? g.spacing : g.spacing * g.spacing;

    std::vector<double> terms;
    terms.reserve(g.size() * s.size() / 2);

    const int jspan = g.dimension == 1 ? 1 : n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < jspan; ++j) {
            const bool i_in = dom.active(i, j);
            if (neumann && !i_in) continue;
            const double ui = i_in ? u.at(i, j) : 0.0;
            const double vi = i_in ? v.at(i, j) : 0.0;
            for (std::size_t m = 0; m < s.size(); ++m) {
                const int ni = i + s.offsets[m].d0;
                const int nj = g.dimension == 1 ? 0 : j + s.offsets[m].d1;
                const bool in_grid = ni >= 0 && ni < n && (g.dimension == 1 || (nj >= 0 && nj < n));
                const bool n_in = in_grid && dom.active(ni, nj);
                if (neumann && !n_in) continue;
                const double un = n_in ? u.at(ni, nj) : 0.0;
                const double vn = n_in ? v.at(ni, nj) : 0.0;
                // A pair with its mirror node off the grid is visited once,
                // so it carries full weight instead of 1/2.
                const double factor = in_grid ? 0.5 : 1.0;
                const double du = ui - un;
                if (du == 0.0 && vi == vn) continue;
                terms.push_back(factor * cell * s.weights[m] * lp_scalar(du, p) * (vi - vn));
            }
        }
    }
    return pairwise_sum(terms);
}

double pointwise_ineq_residual(double a, double b, double p) {
    if (p < 2.0) throw InvalidParameter("pointwise inequality requires p >= 2");
    if (a < 0.0 || b < 0.0) throw InvalidParameter("pointwise inequality requires a,b >= 0");
    const double lhs = std::pow(a, p - 1.0) - lp_scalar(a - b, p);
    const double rhs = (p - 1.0) * std::max(std::pow(a, p - 2.0), std::pow(b, p - 2.0)) * b;
    return lhs - rhs;
}

double lp_lipschitz_residual(double a, double b, double p) {
    const double lhs = std::abs(lp_scalar(a, p) - lp_scalar(b, p));
    double rhs;
    if (p <= 2.0) {
        rhs = std::pow(2.0, 2.0 - p) * std::pow(std::abs(a - b), p - 1.0);
    } else {
        rhs = std::pow(2.0, p - 2.0) * (p - 1.0) * std::abs(a - b) *
              std::pow(std::abs(a) + std::abs(b), p - 2.0);
    }
    return lhs - rhs;
}

double mp_lipschitz_residual(double a, double b, double p) {
    if (p < 2.0) throw InvalidParameter("mp bound requires p >= 2");
    const double ma = (a == 0.0 && p == 2.0) ? 1.0 : std::pow(std::abs(a), p - 2.0);
    const double mb = (b == 0.0 && p == 2.0) ? 1.0 : std::pow(std::abs(b), p - 2.0);
    const double lhs = std::abs(ma - mb);
    double rhs;
    if (p >= 3.0) {
        rhs = (p - 1.0) * std::abs(a - b) *
              (std::pow(std::abs(a), p - 3.0) + std::pow(std::abs(b), p - 3.0));
    } else {
        rhs = std::pow(std::abs(a - b), p - 2.0);
    }
    return lhs - rhs;
}

double lp_lower_bound_residual(double a, double b, double p) {
    if (p <= 1.0 || p > 2.0) throw InvalidParameter("lower bound requires 1 < p <= 2");
    if (!(b > a)) throw InvalidParameter("lower bound requires b > a");
    const double lhs = lp_scalar(b, p) - lp_scalar(a, p);
    const double rhs =
        (p - 1.0) * (b - a) / std::pow(1.0 + a * a + b * b, (2.0 - p) / 2.0);
    return rhs - lhs;
}

namespace {

double falling_factor(double p, int r) {
    double c = 1.0;
    for (int k = 1; k <= r; ++k) c *= (p - k);
    return c;
}

bool p_is_integer(double p) { return std::abs(p - std::round(p)) < 1e-12; }

}  // namespace

double lp_derivative(double tau, double p, int r) {
    if (r < 0) throw InvalidParameter("lp_derivative: r must be >= 0");
    if (r == 0) return lp_scalar(tau, p);
    if (p_is_integer(p) && r >= static_cast<int>(std::round(p)) - 1) {
        return r == static_cast<int>(std::round(p)) - 1 ? falling_factor(p, r) : 0.0;
    }
    if (!(r < p - 1.0)) throw InvalidParameter("lp_derivative: requires r < p - 1");
    const double c = falling_factor(p, r);
    if (r % 2 == 0) return c * lp_scalar(tau, p - r);
    return c * mp_scalar(tau, p - r + 1.0);
}

double lp_derivative_residual(double a, double b, double p, int r) {
    if (r < 1) throw InvalidParameter("lp_derivative_residual: r must be >= 1");
    if (p_is_integer(p) && r >= static_cast<int>(std::round(p)) - 1) {
        return std::abs(lp_derivative(a, p, r) - lp_derivative(b, p, r));  // expected 0
    }
    if (!(r < p - 1.0)) throw InvalidParameter("lp_derivative_residual: requires r < p - 1");
    const double lhs = std::abs(lp_derivative(a, p, r) - lp_derivative(b, p, r));
    const double c = falling_factor(p, r);
    double rhs;
    if (r % 2 == 0) {
        if (!(p - r >= 2.0))
            throw InvalidParameter("lp_derivative_residual: even r needs p - r >= 2");
        rhs = c * (p - r - 1.0) * std::pow(2.0, p - r - 2.0) * std::abs(a - b) *
              std::pow(std::abs(a) + std::abs(b), p - r - 2.0);
    } else if (p - r >= 2.0) {
        rhs = c * (p - r + 1.0) * std::abs(a - b) *
              (std::pow(std::abs(a), p - r - 2.0) + std::pow(std::abs(b), p - r - 2.0));
    } else {
        rhs = c * std::pow(std::abs(a - b), p - r - 1.0);
    }
    return lhs - rhs;
}

}  // namespace nlpl
