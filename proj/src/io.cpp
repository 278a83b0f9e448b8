#include "nlpl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace nlpl {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConditionViolated("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_snapshot_csv(const std::string& path, const GridFunction& u) {
    auto out = open_out(path);
    const Grid& g = u.grid;
    if (g.dimension == 1) {
        out << "x,u\n";
        for (int i = 0; i < g.points_per_axis; ++i)
            out << fmt(g.coord(i)) << "," << fmt(u.at(i)) << "\n";
    } else {
        out << "x,y,u\n";
        for (int i = 0; i < g.points_per_axis; ++i)
            for (int j = 0; j < g.points_per_axis; ++j)
                out << fmt(g.coord(i)) << "," << fmt(g.coord(j)) << ","
                    << fmt(u.at(i, j)) << "\n";
    }
}

GridFunction read_snapshot_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConditionViolated("cannot open snapshot: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConditionViolated("empty snapshot: " + path);
    const int dim = line == "x,y,u" ? 2 : 1;

    std::vector<double> xs, ys, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != dim + 1)
            throw ConditionViolated("malformed snapshot row: " + line);
        xs.push_back(row[0]);
        if (dim == 2) ys.push_back(row[1]);
        vs.push_back(row.back());
    }
    if (xs.size() < 3) throw ConditionViolated("snapshot too small: " + path);

    double lo = xs.front(), hi = xs.front();
    for (double x : xs) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const auto total = vs.size();
    const auto per_axis = dim == 1 ? total
                                   : static_cast<std::size_t>(std::llround(
                                         std::sqrt(static_cast<double>(total))));
    const double h = (hi - lo) / static_cast<double>(per_axis - 1);
    Grid g = Grid::make(dim, hi, h);
    if (g.size() != total) throw ConditionViolated("snapshot grid mismatch: " + path);

    GridFunction u(g);
    u.values = vs;  // rows were written in index order
    u.check_finite("read_snapshot_csv");
    return u;
}

void write_series_csv(const std::string& path, const std::vector<SeriesRecord>& series) {
    auto out = open_out(path);
    out << "t,l1,l2,linf,energy,mass,dt\n";
    for (const auto& r : series)
        out << fmt(r.t) << "," << fmt(r.l1) << "," << fmt(r.l2) << "," << fmt(r.linf)
            << "," << fmt(r.energy) << "," << fmt(r.mass) << "," << fmt(r.dt) << "\n";
}

void write_report_csv(const std::string& path, const DiagnosticsReport& report) {
    auto out = open_out(path);
    out << "check,theorem,status,residual,tolerance\n";
    for (const auto& c : report.checks) {
        const char* status = c.status == CheckStatus::pass      ? "pass"
                             : c.status == CheckStatus::fail    ? "fail"
                             : c.status == CheckStatus::warn    ? "warn"
                                                                : "skipped";
        out << c.name << "," << c.estimate << "," << status << "," << fmt(c.residual)
            << "," << fmt(c.tolerance) << "\n";
    }
}

void write_sidecar(const std::string& path,
                   const std::map<std::string, std::string>& meta) {
    auto out = open_out(path);
    for (const auto& [k, v] : meta) out << k << "=" << v << "\n";
}

std::map<std::string, std::string> read_sidecar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConditionViolated("cannot open sidecar: " + path);
    std::map<std::string, std::string> meta;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        meta[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return meta;
}

}  // namespace nlpl
