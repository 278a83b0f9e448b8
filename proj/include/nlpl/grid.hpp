#pragma once

#include <optional>
#include <vector>

#include "nlpl/common.hpp"
#include "nlpl/kernel.hpp"

namespace nlpl {

/// Uniform Cartesian grid on [-L, L]^n with spacing h and N = 2L/h + 1
/// points per axis.
struct Grid {
    int dimension = 1;
    double extent = 1.0;  // L
    double spacing = 0.0;
    int points_per_axis = 0;

    static Grid make(int dimension, double extent, double spacing);

    double coord(int i) const { return -extent + i * spacing; }
    std::size_t size() const {
        const auto n = static_cast<std::size_t>(points_per_axis);
        return dimension == 1 ? n : n * n;
    }
    std::size_t index(int i, int j = 0) const {
        return static_cast<std::size_t>(i) * (dimension == 1 ? 1 : points_per_axis) + j;
    }
    bool same_as(const Grid& o) const {
        return dimension == o.dimension && extent == o.extent &&
               spacing == o.spacing && points_per_axis == o.points_per_axis;
    }
};

struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int i, int j = 0) { return values[grid.index(i, j)]; }
    double at(int i, int j = 0) const { return values[grid.index(i, j)]; }

    /// Aborts with a diagnostic on any NaN/Inf entry; silent propagation is
    /// forbidden.
    void check_finite(const char* where) const;
};

enum class Variant { cauchy, dirichlet, neumann };

const char* variant_name(Variant v);

struct ProblemSpec {
    Variant variant = Variant::cauchy;
    Box domain;              // Omega for Dirichlet/Neumann
    int padding_layers = 1;  // Cauchy

    void validate(const Grid& g) const;
};

/// Per-axis index range [lo, hi] of the nodes the norms and the evolution
/// act on: Omega for Dirichlet/Neumann, the whole box for Cauchy.
struct IndexBox {
    int lo = 0;
    int hi = 0;
    bool contains(int i) const { return i >= lo && i <= hi; }
    int count() const { return hi - lo + 1; }
};

IndexBox active_box(const Grid& g, const ProblemSpec& spec);

/// Lq norm over the active region. Finite q uses trapezoid weights (half
/// cells at the two box endpoints per axis); q = inf is the max.
double lq_norm(const GridFunction& f, double q, const ProblemSpec& spec);
double lq_norm(const GridFunction& f, double q);  // whole grid, Cauchy convention

/// Plain h^n-weighted sum over the active region; the discretely conserved
/// quantity for the Neumann problem.
double mass(const GridFunction& f, const ProblemSpec& spec);

/// max - min over grid points inside the ball B(center, radius).
double oscillation(const GridFunction& f, const std::array<double, 2>& center,
                   double radius);

/// For each rho: sup over grid pairs with |x - y| <= rho of |f(x) - f(y)|,
/// optionally restricted to points inside `window`.
std::vector<double> modulus_estimate(const GridFunction& f,
                                     const std::vector<double>& radii,
                                     std::optional<Box> window = std::nullopt);

/// 1D jump detector: cell-interface positions where the first difference
/// exceeds `factor` times the median interface difference and an absolute
/// floor of 1e-6.
std::vector<double> jump_detect(const GridFunction& f, double factor = 10.0);

struct SeriesRecord {
    double t, l1, l2, linf, energy, mass, dt;
};

struct Snapshot {
    double t;
    GridFunction u;
};

struct StepRecord {
    double t = 0.0;   // time after the step
    double dt = 0.0;
    char scheme = 'e';  // 'e' explicit, 'p' proximal
    int prox_iters = 0;
    double evi_residual = 0.0;  // worst probe residual, proximal only
};

struct Trajectory {
    Grid grid;
    ProblemSpec spec;
    WeightStencil stencil;
    double p = 2.0;
    bool nonnegative_datum = false;
    double initial_linf = 0.0;
    double cauchy_boundary_activity = 0.0;  // truncation-error proxy, max over run

    std::vector<Snapshot> snapshots;
    std::vector<SeriesRecord> series;
    std::vector<StepRecord> steps;
};

}  // namespace nlpl
