#include "nlpl/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace nlpl {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

struct Parser {
    std::map<std::string, std::string> kv;
    std::vector<std::string> errors;
    std::vector<std::string> consumed;

    void error(const std::string& msg) { errors.push_back(msg); }

    std::optional<std::string> get(const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        consumed.push_back(key);
        return it->second;
    }

    double number(const std::string& key, double fallback) {
        auto v = get(key);
        if (!v) return fallback;
        try {
            return std::stod(*v);
        } catch (...) {
            error(key + ": not a number: " + *v);
            return fallback;
        }
    }

    long integer(const std::string& key, long fallback) {
        auto v = get(key);
        if (!v) return fallback;
        try {
            return std::stol(*v);
        } catch (...) {
            error(key + ": not an integer: " + *v);
            return fallback;
        }
    }

    std::optional<std::pair<double, double>> range(const std::string& key) {
        auto v = get(key);
        if (!v) return std::nullopt;
        auto list = parse_list(*v);
        if (list.size() != 2) {
            error(key + ": expected two comma-separated numbers");
            return std::nullopt;
        }
        return std::make_pair(list[0], list[1]);
    }
};

}  // namespace

ParseOutcome parse_config_text(const std::string& text) {
    Parser p;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            p.error("line " + std::to_string(lineno) + ": expected key=value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (p.kv.count(key)) p.error("duplicate key: " + key);
        p.kv[key] = val;
    }

    RunConfig cfg;

    if (auto v = p.get("problem.variant")) {
        if (*v == "cauchy") cfg.variant = Variant::cauchy;
        else if (*v == "dirichlet") cfg.variant = Variant::dirichlet;
        else if (*v == "neumann") cfg.variant = Variant::neumann;
        else p.error("problem.variant: must be cauchy, dirichlet, or neumann");
    }
    if (auto r = p.range("problem.domain")) cfg.domain = {r->first, r->second};
    cfg.padding_layers = static_cast<int>(p.integer("problem.padding_layers", 1));

    if (auto v = p.get("kernel.family")) {
        if (*v == "step") cfg.kernel_family = KernelFamily::step;
        else if (*v == "power") cfg.kernel_family = KernelFamily::power;
        else if (*v == "bump") cfg.kernel_family = KernelFamily::bump;
        else p.error("kernel.family: must be step, power, or bump");
    }
    cfg.kernel_radius = p.number("kernel.radius", cfg.kernel_radius);
    cfg.kernel_exponent = p.number("kernel.exponent", cfg.kernel_exponent);

    cfg.p = p.number("p", cfg.p);
    cfg.dimension = static_cast<int>(p.integer("grid.dimension", 1));
    cfg.extent = p.number("grid.extent", cfg.extent);
    cfg.spacing = p.number("grid.spacing", cfg.spacing);

    if (auto v = p.get("initial.family")) {
        if (*v == "zero") cfg.initial_family = InitialFamily::zero;
        else if (*v == "constant") cfg.initial_family = InitialFamily::constant;
        else if (*v == "indicator") cfg.initial_family = InitialFamily::indicator;
        else if (*v == "spike") cfg.initial_family = InitialFamily::spike;
        else if (*v == "gaussian") cfg.initial_family = InitialFamily::gaussian;
        else if (*v == "hat") cfg.initial_family = InitialFamily::hat;
        else p.error("initial.family: unknown family " + *v);
    }
    cfg.initial_height = p.number("initial.height", cfg.initial_height);
    if (auto r = p.range("initial.support")) cfg.initial_support = {r->first, r->second};
    cfg.initial_sigma = p.number("initial.sigma", cfg.initial_sigma);
    cfg.initial_mass = p.number("initial.mass", cfg.initial_mass);

    cfg.horizon = p.number("time.horizon", cfg.horizon);
    if (auto v = p.get("time.snapshots")) {
        if (v->rfind("linear:", 0) == 0 || v->rfind("log:", 0) == 0) {
            const bool logspace = v->rfind("log:", 0) == 0;
            try {
                const int n = std::stoi(v->substr(v->find(':') + 1));
                if (n < 2) throw std::invalid_argument("n");
                for (int i = 0; i < n; ++i) {
                    const double f = static_cast<double>(i) / (n - 1);
                    cfg.snapshot_times.push_back(
                        logspace ? cfg.horizon * std::pow(1e-3, 1.0 - f)
                                 : cfg.horizon * f);
                }
            } catch (...) {
                p.error("time.snapshots: malformed schedule " + *v);
            }
        } else {
            try {
                cfg.snapshot_times = parse_list(*v);
            } catch (...) {
                p.error("time.snapshots: malformed list");
            }
        }
    }

    if (auto v = p.get("stepper.scheme")) {
        if (*v == "explicit") cfg.scheme = Scheme::explicit_euler;
        else if (*v == "proximal") cfg.scheme = Scheme::proximal;
        else p.error("stepper.scheme: must be explicit or proximal");
    }
    cfg.cfl_theta = p.number("stepper.cfl_theta", cfg.cfl_theta);
    cfg.dt_max = p.number("stepper.dt_max", cfg.dt_max);
    cfg.prox_tol = p.number("stepper.prox_tol", cfg.prox_tol);
    cfg.prox_max_iters = static_cast<int>(p.integer("stepper.prox_max_iters", cfg.prox_max_iters));

    cfg.diag_q = p.number("diagnostics.q", cfg.diag_q);
    cfg.decay_window = p.range("diagnostics.decay_window");
    if (auto r = p.range("diagnostics.modulus_window"))
        cfg.modulus_window = Box{r->first, r->second};
    if (auto v = p.get("diagnostics.modulus_radii")) {
        try {
            cfg.modulus_radii = parse_list(*v);
        } catch (...) {
            p.error("diagnostics.modulus_radii: malformed list");
        }
    }
    cfg.jump_factor = p.number("diagnostics.jump_factor", cfg.jump_factor);
    cfg.decay_slope_slack = p.number("diagnostics.decay_slope_slack", cfg.decay_slope_slack);

    if (auto v = p.get("output.dir")) cfg.output_dir = *v;
    cfg.seed = static_cast<unsigned long>(p.integer("seed", static_cast<long>(cfg.seed)));

    // unknown keys
    for (const auto& [key, val] : p.kv) {
        bool known = false;
        for (const auto& c : p.consumed) known |= (c == key);
        if (!known) p.error("unknown key: " + key);
    }

    // semantic validation (collect everything)
    if (!(cfg.p > 1.0)) p.error("p: must be > 1");
    if (cfg.scheme == Scheme::explicit_euler && cfg.p < 2.0)
        p.error("stepper.scheme: the explicit scheme requires p >= 2 (the right-hand side is not Lipschitz for p < 2); use proximal");
    if (!(cfg.kernel_radius > 0.0)) p.error("kernel.radius: must be positive");
    if (cfg.kernel_family != KernelFamily::step && !(cfg.kernel_exponent > 0.0))
        p.error("kernel.exponent: must be positive");
    if (cfg.dimension != 1 && cfg.dimension != 2) p.error("grid.dimension: must be 1 or 2");
    if (!(cfg.spacing > 0.0)) p.error("grid.spacing: must be positive");
    if (!(cfg.extent > 0.0)) p.error("grid.extent: must be positive");
    if (!(cfg.horizon > 0.0)) p.error("time.horizon: must be positive");
    if (!(cfg.cfl_theta > 0.0) || cfg.cfl_theta > 1.0)
        p.error("stepper.cfl_theta: must be in (0, 1]");
    if (!(cfg.dt_max > 0.0)) p.error("stepper.dt_max: must be positive");
    if (!(cfg.prox_tol > 0.0)) p.error("stepper.prox_tol: must be positive");
    if (cfg.prox_max_iters < 1) p.error("stepper.prox_max_iters: must be >= 1");
    if (cfg.variant != Variant::cauchy && !(cfg.domain.length() > 0.0))
        p.error("problem.domain: required for dirichlet/neumann");
    if (cfg.variant == Variant::cauchy && cfg.padding_layers < 1)
        p.error("problem.padding_layers: must be >= 1");
    if (cfg.spacing > cfg.kernel_radius)
        p.error("grid.spacing: must not exceed kernel.radius (degenerate stencil)");

    ParseOutcome out;
    out.errors = p.errors;
    if (p.errors.empty()) out.config = cfg;
    return out;
}

ParseOutcome parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseOutcome out;
        out.errors.push_back("cannot open config file: " + path);
        return out;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Kernel build_kernel(const RunConfig& cfg) {
    switch (cfg.kernel_family) {
        case KernelFamily::step:
            return make_step_kernel(cfg.kernel_radius, cfg.dimension);
        case KernelFamily::power:
            return make_power_kernel(cfg.kernel_radius, cfg.kernel_exponent, cfg.dimension);
        case KernelFamily::bump:
            return make_bump_kernel(cfg.kernel_radius, cfg.kernel_exponent, cfg.dimension);
    }
    throw InvalidParameter("unknown kernel family");
}

Grid build_grid(const RunConfig& cfg) {
    return Grid::make(cfg.dimension, cfg.extent, cfg.spacing);
}

ProblemSpec build_problem_spec(const RunConfig& cfg) {
    ProblemSpec spec;
    spec.variant = cfg.variant;
    spec.domain = cfg.domain;
    spec.padding_layers = cfg.padding_layers;
    return spec;
}

StepperConfig build_stepper(const RunConfig& cfg) {
    StepperConfig s;
    s.scheme = cfg.scheme;
    s.cfl_theta = cfg.cfl_theta;
    s.dt_max = cfg.dt_max;
    s.prox_tol = cfg.prox_tol;
    s.prox_max_iters = cfg.prox_max_iters;
    s.snapshot_times = cfg.snapshot_times;
    return s;
}

GridFunction build_initial(const RunConfig& cfg, const Grid& grid) {
    GridFunction u(grid);
    const Box& sup = cfg.initial_support;
    const double mid = 0.5 * (sup.lo + sup.hi);

    auto fill = [&](auto&& f) {
        if (grid.dimension == 1) {
            for (int i = 0; i < grid.points_per_axis; ++i)
                u.at(i) = f(grid.coord(i), 0.0);
        } else {
            for (int i = 0; i < grid.points_per_axis; ++i)
                for (int j = 0; j < grid.points_per_axis; ++j)
                    u.at(i, j) = f(grid.coord(i), grid.coord(j));
        }
    };

    switch (cfg.initial_family) {
        case InitialFamily::zero:
            break;
        case InitialFamily::constant:
            fill([&](double, double) { return cfg.initial_height; });
            break;
        case InitialFamily::indicator:
            fill([&](double x, double y) {
                const bool in = sup.contains(x) && (grid.dimension == 1 || sup.contains(y));
                return in ? cfg.initial_height : 0.0;
            });
            break;
        case InitialFamily::spike: {
            const int ci = static_cast<int>(std::llround((mid + grid.extent) / grid.spacing));
            const double cell =
                grid.dimension == 1 ? grid.spacing : grid.spacing * grid.spacing;
            u.at(ci, grid.dimension == 1 ? 0 : ci) = cfg.initial_mass / cell;
            break;
        }
        case InitialFamily::gaussian:
            fill([&](double x, double y) {
                const double r2 = (x - mid) * (x - mid) +
                                  (grid.dimension == 1 ? 0.0 : (y - mid) * (y - mid));
                return cfg.initial_height *
                       std::exp(-r2 / (2.0 * cfg.initial_sigma * cfg.initial_sigma));
            });
            break;
        case InitialFamily::hat:
            fill([&](double x, double y) {
                const double half = 0.5 * sup.length();
                double v = 1.0 - std::abs(x - mid) / half;
                if (grid.dimension == 2) v = std::min(v, 1.0 - std::abs(y - mid) / half);
                return cfg.initial_height * std::max(0.0, v);
            });
            break;
    }
    return u;
}

}  // namespace nlpl
