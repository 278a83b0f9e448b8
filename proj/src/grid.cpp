#include "nlpl/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace nlpl {

Grid Grid::make(int dimension, double extent, double spacing) {
    if (dimension != 1 && dimension != 2)
        throw InvalidParameter("grid: dimension must be 1 or 2");
    if (!(spacing > 0.0)) throw InvalidParameter("grid: spacing must be positive");
    if (!(extent > 0.0)) throw InvalidParameter("grid: extent must be positive");
    const double ratio = 2.0 * extent / spacing;
    const auto cells = static_cast<int>(std::llround(ratio));
    if (std::abs(ratio - cells) > 1e-9)
        throw InvalidParameter("grid: spacing must divide the extent");
    Grid g;
    g.dimension = dimension;
    g.extent = extent;
    g.spacing = spacing;
    g.points_per_axis = cells + 1;
    if (g.points_per_axis < 3) throw InvalidParameter("grid: fewer than 3 points per axis");
    return g;
}

void GridFunction::check_finite(const char* where) const {
    for (double v : values)
        if (!std::isfinite(v))
            throw ConditionViolated(std::string("non-finite value produced in ") + where);
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::cauchy: return "cauchy";
        case Variant::dirichlet: return "dirichlet";
        case Variant::neumann: return "neumann";
    }
    return "?";
}

void ProblemSpec::validate(const Grid& g) const {
    if (variant == Variant::cauchy) {
        if (padding_layers < 1)
            throw InvalidParameter("cauchy problem requires padding_layers >= 1");
        return;
    }
    if (!(domain.length() > 0.0)) throw InvalidParameter("domain box is empty");
    if (domain.lo < -g.extent - 1e-12 || domain.hi > g.extent + 1e-12)
        throw InvalidParameter("domain box exceeds the grid extent");
    const double rlo = (domain.lo + g.extent) / g.spacing;
    const double rhi = (domain.hi + g.extent) / g.spacing;
    if (std::abs(rlo - std::llround(rlo)) > 1e-9 || std::abs(rhi - std::llround(rhi)) > 1e-9)
        throw InvalidParameter("domain box endpoints must lie on grid points");
}

IndexBox active_box(const Grid& g, const ProblemSpec& spec) {
    if (spec.variant == Variant::cauchy) return {0, g.points_per_axis - 1};
    spec.validate(g);
    const int lo = static_cast<int>(std::llround((spec.domain.lo + g.extent) / g.spacing));
    const int hi = static_cast<int>(std::llround((spec.domain.hi + g.extent) / g.spacing));
    return {lo, hi};
}

namespace {

// Trapezoid endpoint weight along one axis.
inline double axis_weight(int i, const IndexBox& b) {
    return (i == b.lo || i == b.hi) ? 0.5 : 1.0;
}

}  // namespace

double lq_norm(const GridFunction& f, double q, const ProblemSpec& spec) {
    if (q < 1.0) throw InvalidParameter("lq_norm: q must be >= 1");
    const Grid& g = f.grid;
    const IndexBox b = active_box(g, spec);

    if (std::isinf(q)) {
        double m = 0.0;
        if (g.dimension == 1) {
            for (int i = b.lo; i <= b.hi; ++i) m = std::max(m, std::abs(f.at(i)));
        } else {
            for (int i = b.lo; i <= b.hi; ++i)
                for (int j = b.lo; j <= b.hi; ++j) m = std::max(m, std::abs(f.at(i, j)));
        }
        return m;
    }

    const double h = g.spacing;
    std::vector<double> cells;
    cells.reserve(static_cast<std::size_t>(b.count()) *
                  (g.dimension == 1 ? 1 : b.count()));
    if (g.dimension == 1) {
        for (int i = b.lo; i <= b.hi; ++i)
            cells.push_back(axis_weight(i, b) * h * std::pow(std::abs(f.at(i)), q));
    } else {
        for (int i = b.lo; i <= b.hi; ++i)
            for (int j = b.lo; j <= b.hi; ++j)
                cells.push_back(axis_weight(i, b) * axis_weight(j, b) * h * h *
                                std::pow(std::abs(f.at(i, j)), q));
    }
    return std::pow(pairwise_sum(cells), 1.0 / q);
}

double lq_norm(const GridFunction& f, double q) {
    ProblemSpec spec;
    spec.variant = Variant::cauchy;
    return lq_norm(f, q, spec);
}

double mass(const GridFunction& f, const ProblemSpec& spec) {
    const Grid& g = f.grid;
    const IndexBox b = active_box(g, spec);
    const double cell = g.dimension == 1 ? g.spacing : g.spacing * g.spacing;
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(b.count()) *
                 (g.dimension == 1 ? 1 : b.count()));
    if (g.dimension == 1) {
        for (int i = b.lo; i <= b.hi; ++i) vals.push_back(f.at(i));
    } else {
        for (int i = b.lo; i <= b.hi; ++i)
            for (int j = b.lo; j <= b.hi; ++j) vals.push_back(f.at(i, j));
    }
    return cell * pairwise_sum(vals);
}

double oscillation(const GridFunction& f, const std::array<double, 2>& center,
                   double radius) {
    const Grid& g = f.grid;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    if (g.dimension == 1) {
        for (int i = 0; i < g.points_per_axis; ++i) {
            if (std::abs(g.coord(i) - center[0]) <= radius + 1e-12) {
                lo = std::min(lo, f.at(i));
                hi = std::max(hi, f.at(i));
            }
        }
    } else {
        for (int i = 0; i < g.points_per_axis; ++i)
            for (int j = 0; j < g.points_per_axis; ++j) {
                if (std::hypot(g.coord(i) - center[0], g.coord(j) - center[1]) <=
                    radius + 1e-12) {
                    lo = std::min(lo, f.at(i, j));
                    hi = std::max(hi, f.at(i, j));
                }
            }
    }
    if (!(hi >= lo)) throw InvalidParameter("oscillation: ball does not intersect the grid");
    return hi - lo;
}

std::vector<double> modulus_estimate(const GridFunction& f,
                                     const std::vector<double>& radii,
                                     std::optional<Box> window) {
    const Grid& g = f.grid;
    std::vector<double> out;
    out.reserve(radii.size());

    auto inside = [&](double x) { return !window || window->contains(x); };

    if (g.dimension == 1) {
        std::vector<int> idx;
        for (int i = 0; i < g.points_per_axis; ++i)
            if (inside(g.coord(i))) idx.push_back(i);
        for (double rho : radii) {
            const int max_lag = static_cast<int>(std::floor(rho / g.spacing + 1e-12));
            double m = 0.0;
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = a + 1; b < idx.size(); ++b) {
                    if (idx[b] - idx[a] > max_lag) break;
                    m = std::max(m, std::abs(f.at(idx[b]) - f.at(idx[a])));
                }
            out.push_back(m);
        }
    } else {
        struct Pt { int i, j; };
        std::vector<Pt> pts;
        for (int i = 0; i < g.points_per_axis; ++i)
            for (int j = 0; j < g.points_per_axis; ++j)
                if (inside(g.coord(i)) && inside(g.coord(j))) pts.push_back({i, j});
        for (double rho : radii) {
            double m = 0.0;
            for (std::size_t a = 0; a < pts.size(); ++a)
                for (std::size_t b = a + 1; b < pts.size(); ++b) {
                    const double dist = std::hypot((pts[b].i - pts[a].i) * g.spacing,
                                                   (pts[b].j - pts[a].j) * g.spacing);
                    if (dist <= rho + 1e-12)
                        m = std::max(m, std::abs(f.at(pts[b].i, pts[b].j) -
                                                 f.at(pts[a].i, pts[a].j)));
                }
            out.push_back(m);
        }
    }
    return out;
}

std::vector<double> jump_detect(const GridFunction& f, double factor) {
    const Grid& g = f.grid;
    if (g.dimension != 1) throw InvalidParameter("jump_detect: only 1D is supported");
    const int n = g.points_per_axis;
    std::vector<double> diffs(n - 1);
    for (int i = 0; i + 1 < n; ++i) diffs[i] = std::abs(f.at(i + 1) - f.at(i));

    std::vector<double> sorted = diffs;
    std::nth_element(sorted.begin(), sorted.begin() + (n - 1) / 2, sorted.end());
    const double median = sorted[(n - 1) / 2];

    const double floor_abs = 1e-6;
    std::vector<double> positions;
    for (int i = 0; i + 1 < n; ++i)
        if (diffs[i] > factor * median && diffs[i] > floor_abs)
            positions.push_back(0.5 * (g.coord(i) + g.coord(i + 1)));
    return positions;
}

}  // namespace nlpl
