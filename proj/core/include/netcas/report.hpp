#pragma once

#include <filesystem>

namespace netcas {

// Digest a directory of run CSVs into aggregate.csv (mean throughput, mean
// rho, mean latency per run), one timeline SVG per workload and one grouped
// bar chart comparing policies. Throws ConfigError if the directory holds no
// run CSVs and ParseError on malformed ones.
void cmd_report(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir);

}  // namespace netcas
