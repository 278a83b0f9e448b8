#pragma once

#include <map>
#include <string>

#include "nlpl/diagnostics.hpp"
#include "nlpl/grid.hpp"

namespace nlpl {

/// Snapshot CSV with header "x,u" (1D) or "x,y,u" (2D); full precision so
/// resumed runs reproduce bit-identically.
void write_snapshot_csv(const std::string& path, const GridFunction& u);
GridFunction read_snapshot_csv(const std::string& path);

/// Series CSV with header "t,l1,l2,linf,energy,mass,dt".
void write_series_csv(const std::string& path, const std::vector<SeriesRecord>& series);

/// Report CSV with header "check,theorem,status,residual,tolerance".
void write_report_csv(const std::string& path, const DiagnosticsReport& report);

/// Sidecar metadata (plain key=value) that together with the snapshot CSV
/// suffices to restart a run.
void write_sidecar(const std::string& path, const std::map<std::string, std::string>& meta);
std::map<std::string, std::string> read_sidecar(const std::string& path);

}  // namespace nlpl
