#pragma once

#include "nlpl/grid.hpp"
#include "nlpl/kernel.hpp"

namespace nlpl {

/// L_p(tau) = |tau|^{p-2} tau, extended by 0 at tau = 0 for every p > 1.
double lp_scalar(double tau, double p);

/// M_p(tau) = |tau|^{p-2}; singular at 0 for p < 2 (throws there).
double mp_scalar(double tau, double p);

/// Discrete convolution-type p-Laplacian. Out-of-domain neighbors contribute
/// the value 0 (Cauchy zero padding and Dirichlet zero extension) or are
/// skipped (Neumann). Output is 0 at nodes outside the active region.
GridFunction apply_operator(const GridFunction& u, const WeightStencil& s,
                            const ProblemSpec& spec, double p);

/// Discrete energy form
///   E_p(u,v) = 1/2 sum_i h^n sum_d w(d) L_p(u_i - u_{i+d}) (v_i - v_{i+d})
/// with the pair domain matching the problem variant.
double energy(const GridFunction& u, const GridFunction& v, const WeightStencil& s,
              const ProblemSpec& spec, double p);

// ---- scalar inequality residuals (left - right; expected <= 0) ----

/// a^{p-1} - |a-b|^{p-2}(a-b)  <=  (p-1) max{a^{p-2}, b^{p-2}} b,  p >= 2, a,b >= 0.
double pointwise_ineq_residual(double a, double b, double p);

/// |L_p(a) - L_p(b)| <= c_p |a-b|^{p-1} with c_p = 2^{2-p} for 1 < p <= 2,
/// and <= 2^{p-2}(p-1)|a-b|(|a|+|b|)^{p-2} for p >= 2.
double lp_lipschitz_residual(double a, double b, double p);

/// |M_p(a) - M_p(b)| bounds for p >= 2 (two branches at p = 3).
double mp_lipschitz_residual(double a, double b, double p);

/// Lower bound L_p(b) - L_p(a) >= (p-1)(b-a)/(1+a^2+b^2)^{(2-p)/2},
/// for 1 < p <= 2 and b > a. Returns right - left (expected <= 0).
double lp_lower_bound_residual(double a, double b, double p);

/// r-th derivative of L_p: c_{r,p} L_{p-r} for even r, c_{r,p} M_{p-r+1} for
/// odd r, with c_{r,p} = (p-1)(p-2)...(p-r). Requires r < p-1, or p integer.
double lp_derivative(double tau, double p, int r);

/// Difference bound on the r-th derivatives of L_p (branches on parity of r
/// and on p - r); requires r >= 1 and (r < p-1 or p integer).
double lp_derivative_residual(double a, double b, double p, int r);

}  // namespace nlpl
