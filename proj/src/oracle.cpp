#include "nlpl/oracle.hpp"

#include <cmath>

namespace nlpl {

namespace {

// Pure convolution sum_d w(d) v_{i+d} over the active region with zero
// values outside (zero padding for Cauchy, zero extension for Dirichlet).
GridFunction convolve(const GridFunction& v, const WeightStencil& s,
                      const ProblemSpec& spec) {
    const Grid& g = v.grid;
    const IndexBox box = active_box(g, spec);
    const int n = g.points_per_axis;
    GridFunction out(g);
    const bool restrict_box = spec.variant != Variant::cauchy;
    const int jlo = g.dimension == 1 ? 0 : box.lo;
    const int jhi = g.dimension == 1 ? 0 : box.hi;
    const int ilo = restrict_box ? box.lo : 0;
    const int ihi = restrict_box ? box.hi : n - 1;
    const int cjlo = !restrict_box && g.dimension == 2 ? 0 : jlo;
    const int cjhi = !restrict_box && g.dimension == 2 ? n - 1 : jhi;

    for (int i = ilo; i <= ihi; ++i) {
        for (int j = cjlo; j <= cjhi; ++j) {
            double acc = 0.0;
            for (std::size_t m = 0; m < s.size(); ++m) {
                const int ni = i + s.offsets[m].d0;
                const int nj = g.dimension == 1 ? 0 : j + s.offsets[m].d1;
                const bool in_grid =
                    ni >= 0 && ni < n && (g.dimension == 1 || (nj >= 0 && nj < n));
                if (!in_grid) continue;
                if (restrict_box &&
                    !(box.contains(ni) && (g.dimension == 1 || box.contains(nj))))
                    continue;
                acc += s.weights[m] * v.at(ni, nj);
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

GridFunction axpy(const GridFunction& x, double a, const GridFunction& y) {
    GridFunction out = x;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += a * y.values[i];
    return out;
}

}  // namespace

GridFunction linear_evolve(const GridFunction& u0, const WeightStencil& s,
                           const ProblemSpec& spec, double T, double dt_fine) {
    if (spec.variant == Variant::neumann)
        throw InvalidParameter(
            "linear_evolve: Neumann is unsupported (row sums vary near the boundary)");
    if (!(T >= 0.0)) throw InvalidParameter("linear_evolve: T must be nonnegative");
    if (!(dt_fine > 0.0)) throw InvalidParameter("linear_evolve: dt_fine must be positive");
    u0.check_finite("linear_evolve datum");

    if (T == 0.0) return u0;

    const auto steps = static_cast<long>(std::ceil(T / dt_fine - 1e-12));
    const double dt = T / static_cast<double>(steps);

    GridFunction v = u0;  // v = e^t u
    for (long n = 0; n < steps; ++n) {
        const GridFunction k1 = convolve(v, s, spec);
        const GridFunction k2 = convolve(axpy(v, 0.5 * dt, k1), s, spec);
        const GridFunction k3 = convolve(axpy(v, 0.5 * dt, k2), s, spec);
        const GridFunction k4 = convolve(axpy(v, dt, k3), s, spec);
        for (std::size_t i = 0; i < v.values.size(); ++i)
            v.values[i] += dt / 6.0 *
                           (k1.values[i] + 2.0 * k2.values[i] + 2.0 * k3.values[i] +
                            k4.values[i]);
    }
    const double decay = std::exp(-T);
    for (double& x : v.values) x *= decay;
    v.check_finite("linear_evolve");
    return v;
}

}  // namespace nlpl
