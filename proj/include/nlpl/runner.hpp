#pragma once

#include <string>

#include "nlpl/config.hpp"
#include "nlpl/diagnostics.hpp"

namespace nlpl {

struct RunResult {
    Trajectory trajectory;
    DiagnosticsReport report;
    int exit_code = 0;  // 0 pass, 1 audit failure, 2 configuration error
};

/// Execute a full configured run: evolve, audit, and (when write_outputs)
/// emit snapshots, series, report, and the resumable final state under
/// cfg.output_dir.
RunResult execute_run(const RunConfig& cfg, bool write_outputs = true);

// ---- built-in verification suites ----

DiagnosticsReport verify_inequalities(unsigned long seed = 42,
                                      std::size_t samples = 100000);
DiagnosticsReport verify_oracle();
DiagnosticsReport verify_invariants(unsigned long seed = 42);

// ---- figure presets ----

RunConfig figure1_preset();  // p = 3, step kernel, jumps at +-1
RunConfig figure2_preset();  // p = 3, smooth bump kernel, same datum

/// Max slope |du|/h and max second-difference ratio |d2u|/h^2 over the
/// snapshots of a run, restricted to the 1D window.
struct CornerMetrics {
    double max_slope = 0.0;
    double max_curvature = 0.0;
};
CornerMetrics corner_metrics(const Trajectory& traj, const Box& window);

}  // namespace nlpl
