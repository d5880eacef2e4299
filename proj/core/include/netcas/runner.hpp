#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "netcas/scenario.hpp"

namespace netcas {

struct RunOptions {
  bool strict = false;  // reject profile fallback lookups and unknown fields
  std::optional<BwrrGuard> guard_override;
  std::optional<std::uint64_t> seed_override;
  bool write_records = false;        // per-request CompletionRecord CSVs
  bool write_dispatch_trace = false; // per-decision BWRR trace CSVs
};

// Run every (policy, workload, seed[, contention level]) combination and
// write one epoch CSV each (columns: t, iops_total, iops_cache, iops_backend,
// mean_latency_s, rho, mode, drop_permil). NetCas runs also get a sibling
// *_splitter.csv with the splitter state per epoch. Returns the epoch CSV
// paths in execution order.
std::vector<std::filesystem::path> cmd_run(const Scenario& scenario, const PerfProfile* profile,
                                           const std::filesystem::path& out_dir,
                                           const RunOptions& opts = {});

// Measure the scenario's profile grid and write profile.json plus
// break_even.csv (cumulative simulated build cost per point).
PerfProfile cmd_profile(const Scenario& scenario, const std::filesystem::path& out_dir,
                        double per_point_s, std::optional<std::uint64_t> seed = {});

// StaticSplit sweep over rho = k/steps for k = 0..steps, one CSV per
// (workload, seed) marking the empirical argmax next to the analytic base
// ratio. steps must be >= 11.
std::vector<std::filesystem::path> cmd_sweep_ratio(const Scenario& scenario,
                                                   const PerfProfile* profile, int steps,
                                                   const std::filesystem::path& out_dir,
                                                   const RunOptions& opts = {});

}  // namespace netcas
