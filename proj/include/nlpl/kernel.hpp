#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nlpl/common.hpp"

namespace nlpl {

/// Even, nonnegative, compactly supported convolution weight J, stored as a
/// radial profile together with the normalization factor that makes the
/// quadrature estimate of its integral equal to 1.
struct Kernel {
    std::function<double(double)> raw_profile;  // unnormalized, radius >= 0
    double support_radius = 0.0;
    int dimension = 1;
    double norm_constant = 1.0;  // factor applied to raw_profile
    double l1_mass = 1.0;        // quadrature mass after normalization

    /// Normalized profile value at radius r (0 outside the support).
    double operator()(double r) const {
        if (r > support_radius) return 0.0;
        return norm_constant * raw_profile(r);
    }

    double value_at(const std::array<double, 2>& z) const {
        return (*this)(std::hypot(z[0], z[1]));
    }

    /// Sampled sup norm ||J||_inf.
    double sup_norm() const;
};

Kernel make_step_kernel(double radius, int dimension);
Kernel make_power_kernel(double radius, double exponent, int dimension);
Kernel make_bump_kernel(double radius, double exponent, int dimension);

/// Midpoint-rule estimate of the integral of the (normalized) kernel,
/// computed radially; equals l1_mass by construction for the built-in
/// families.
double kernel_mass_quadrature(const Kernel& k, std::size_t subdivisions = 1u << 20);

/// Integer grid offset inside the stencil support (second component unused in 1D).
struct Offset {
    int d0 = 0;
    int d1 = 0;
};

/// Symmetric quadrature stencil for the convolution against J at grid
/// spacing h. Weights carry the h^n cell measure and one global rescale c_h
/// chosen so the interior row sum (center included) is exactly 1.
struct WeightStencil {
    int dimension = 1;
    double grid_spacing = 0.0;
    std::vector<Offset> offsets;
    std::vector<double> weights;
    double row_sum_interior = 1.0;
    double rescale = 1.0;  // c_h

    std::size_t size() const { return offsets.size(); }
};

WeightStencil discrete_weights(const Kernel& k, double h);

/// Sampled modulus of continuity of J in the L1 sense:
/// omega_J(rho) = integral of |J(z) - J(z - rho e1)| dz  (radial symmetry
/// makes the translation direction irrelevant).
std::vector<double> kernel_modulus(const Kernel& k, const std::vector<double>& radii);

/// Lower bound kappa over the box Omega of the row integral
/// inf_{x in Omega} integral_Omega J(x - y) dy, evaluated at the grid points
/// of spacing h with a refined midpoint quadrature in y.
double neumann_kappa(const Kernel& k, const Box& omega, double h,
                     int quadrature_refinement = 16);

}  // namespace nlpl
