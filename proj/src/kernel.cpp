#include "nlpl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nlpl {

namespace {

// Radial midpoint quadrature of integral_{R^n} f(|z|) dz for a profile with
// support radius R:  n=1 -> 2 * int_0^R f,  n=2 -> 2*pi * int_0^R f(r) r dr.
double radial_mass(const std::function<double(double)>& f, double R, int n,
                   std::size_t m) {
    const double dr = R / static_cast<double>(m);
    std::vector<double> cells(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = (static_cast<double>(i) + 0.5) * dr;
        cells[i] = (n == 1) ? f(r) : f(r) * r;
    }
    const double integral = pairwise_sum(cells) * dr;
    return (n == 1) ? 2.0 * integral : 2.0 * std::numbers::pi * integral;
}

void check_dimension(int n) {
    if (n != 1 && n != 2) throw InvalidParameter("kernel: dimension must be 1 or 2");
}

Kernel normalize(std::function<double(double)> raw, double radius, int n) {
    Kernel k;
    k.raw_profile = std::move(raw);
    k.support_radius = radius;
    k.dimension = n;
    const double mass = radial_mass(k.raw_profile, radius, n, 1u << 20);
    if (!(mass > 0.0)) throw InvalidParameter("kernel: profile has nonpositive mass");
    k.norm_constant = 1.0 / mass;
    k.l1_mass = 1.0;
    return k;
}

}  // namespace

double Kernel::sup_norm() const {
    const int samples = 4096;
    double m = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double r = support_radius * static_cast<double>(i) / samples;
        m = std::max(m, (*this)(r));
    }
    return m;
}

Kernel make_step_kernel(double radius, int dimension) {
    check_dimension(dimension);
    if (!(radius > 0.0)) throw InvalidParameter("step kernel: radius must be positive");
    return normalize([](double) { return 1.0; }, radius, dimension);
}

Kernel make_power_kernel(double radius, double exponent, int dimension) {
    check_dimension(dimension);
    if (!(radius > 0.0)) throw InvalidParameter("power kernel: radius must be positive");
    if (!(exponent > 0.0)) throw InvalidParameter("power kernel: exponent must be positive");
    const double R = radius;
    const double a = exponent;
    return normalize([R, a](double r) { return std::pow(R - r, a); }, R, dimension);
}

Kernel make_bump_kernel(double radius, double exponent, int dimension) {
    check_dimension(dimension);
    if (!(radius > 0.0)) throw InvalidParameter("bump kernel: radius must be positive");
    if (!(exponent > 0.0)) throw InvalidParameter("bump kernel: exponent must be positive");
    const double R2 = radius * radius;
    const double a = exponent;
    return normalize([R2, a](double r) { return std::pow(R2 - r * r, a); }, radius,
                     dimension);
}

double kernel_mass_quadrature(const Kernel& k, std::size_t subdivisions) {
    return radial_mass([&k](double r) { return k(r); }, k.support_radius, k.dimension,
                       subdivisions);
}

WeightStencil discrete_weights(const Kernel& k, double h) {
    if (!(h > 0.0)) throw InvalidParameter("discrete_weights: h must be positive");
    if (h > k.support_radius)
        throw InvalidParameter("discrete_weights: h exceeds the support radius (degenerate stencil)");

    WeightStencil s;
    s.dimension = k.dimension;
    s.grid_spacing = h;

    const int reach = static_cast<int>(std::floor(k.support_radius / h + 1e-12));
    const double cell = (k.dimension == 1) ? h : h * h;

    if (k.dimension == 1) {
        for (int d = -reach; d <= reach; ++d) {
            const double w = cell * k(std::abs(d) * h);
            if (w > 0.0 || d == 0) {
                s.offsets.push_back({d, 0});
                s.weights.push_back(w);
            }
        }
    } else {
        for (int d0 = -reach; d0 <= reach; ++d0) {
            for (int d1 = -reach; d1 <= reach; ++d1) {
                const double w = cell * k(std::hypot(d0 * h, d1 * h));
                if (w > 0.0 || (d0 == 0 && d1 == 0)) {
                    s.offsets.push_back({d0, d1});
                    s.weights.push_back(w);
                }
            }
        }
    }

    const double raw_sum = pairwise_sum(s.weights);
    if (!(raw_sum > 0.0))
        throw InvalidParameter("discrete_weights: stencil has zero total weight");
    s.rescale = 1.0 / raw_sum;
    for (double& w : s.weights) w *= s.rescale;
    s.row_sum_interior = 1.0;
    return s;
}

std::vector<double> kernel_modulus(const Kernel& k, const std::vector<double>& radii) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 0.0) throw InvalidParameter("kernel_modulus: radii must be nonnegative");
        if (i > 0 && radii[i] < radii[i - 1])
            throw InvalidParameter("kernel_modulus: radii must be sorted ascending");
    }
    std::vector<double> out;
    out.reserve(radii.size());
    const double R = k.support_radius;
    for (double rho : radii) {
        if (rho == 0.0) {
            out.push_back(0.0);
            continue;
        }
        // Integrand supported in [-R, R + rho] per axis along the shift.
        if (k.dimension == 1) {
            const std::size_t m = 1u << 21;
            const double lo = -R, hi = R + rho;
            const double dz = (hi - lo) / static_cast<double>(m);
            std::vector<double> cells(m);
            for (std::size_t i = 0; i < m; ++i) {
                const double z = lo + (static_cast<double>(i) + 0.5) * dz;
                cells[i] = std::abs(k(std::abs(z)) - k(std::abs(z - rho)));
            }
            out.push_back(pairwise_sum(cells) * dz);
        } else {
            const std::size_t m = 1u << 11;
            const double lo0 = -R, hi0 = R + rho;
            const double lo1 = -R, hi1 = R;
            const double dz0 = (hi0 - lo0) / static_cast<double>(m);
            const double dz1 = (hi1 - lo1) / static_cast<double>(m);
            std::vector<double> rows(m);
            std::vector<double> cells(m);
            for (std::size_t i = 0; i < m; ++i) {
                const double z0 = lo0 + (static_cast<double>(i) + 0.5) * dz0;
                for (std::size_t j = 0; j < m; ++j) {
                    const double z1 = lo1 + (static_cast<double>(j) + 0.5) * dz1;
                    cells[j] = std::abs(k(std::hypot(z0, z1)) - k(std::hypot(z0 - rho, z1)));
                }
                rows[i] = pairwise_sum(cells) * dz1;
            }
            out.push_back(pairwise_sum(rows) * dz0);
        }
    }
    return out;
}

double neumann_kappa(const Kernel& k, const Box& omega, double h,
                     int quadrature_refinement) {
    if (!(omega.length() > 0.0)) throw InvalidParameter("neumann_kappa: empty domain");
    if (!(h > 0.0) || h > k.support_radius)
        throw InvalidParameter("neumann_kappa: h must resolve the support radius");

    const double q = h / quadrature_refinement;
    const auto cells_per_axis = static_cast<std::size_t>(std::llround(omega.length() / q));
    const int nodes = static_cast<int>(std::llround(omega.length() / h));

    auto row_integral_1d = [&](double x) {
        std::vector<double> cells(cells_per_axis);
        for (std::size_t j = 0; j < cells_per_axis; ++j) {
            const double y = omega.lo + (static_cast<double>(j) + 0.5) * q;
            cells[j] = k(std::abs(x - y));
        }
        return pairwise_sum(cells) * q;
    };
    auto row_integral_2d = [&](double x0, double x1) {
        std::vector<double> rows(cells_per_axis);
        std::vector<double> cells(cells_per_axis);
        for (std::size_t j0 = 0; j0 < cells_per_axis; ++j0) {
            const double y0 = omega.lo + (static_cast<double>(j0) + 0.5) * q;
            for (std::size_t j1 = 0; j1 < cells_per_axis; ++j1) {
                const double y1 = omega.lo + (static_cast<double>(j1) + 0.5) * q;
                cells[j1] = k(std::hypot(x0 - y0, x1 - y1));
            }
            rows[j0] = pairwise_sum(cells) * q;
        }
        return pairwise_sum(rows) * q;
    };

    double kappa = std::numeric_limits<double>::infinity();
    if (k.dimension == 1) {
        for (int i = 0; i <= nodes; ++i)
            kappa = std::min(kappa, row_integral_1d(omega.lo + i * h));
    } else {
        for (int i0 = 0; i0 <= nodes; ++i0)
            for (int i1 = 0; i1 <= nodes; ++i1)
                kappa = std::min(kappa, row_integral_2d(omega.lo + i0 * h, omega.lo + i1 * h));
    }
    if (!(kappa > 0.0))
        throw ConditionViolated("neumann_kappa: computed kappa is not positive");
    return kappa;
}

}  // namespace nlpl
