#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netcas/link_model.hpp"
#include "netcas/perf_profile.hpp"
#include "netcas/policies.hpp"
#include "netcas/sim.hpp"

namespace netcas {

// Optional experiment axis: one run per contention level, where level N
// injects N identical flows over [start_s, end_s).
struct ContentionSweep {
  std::vector<int> counts;
  double demand_bytes_per_s = 0.0;
  double start_s = 0.0;
  double end_s = 0.0;
};

struct Scenario {
  std::string name;
  DeviceModel cache;
  DeviceModel backend;
  LinkModel link;  // flows come from congestion_schedule
  std::vector<WorkloadKey> workloads;
  std::vector<PolicySpec> policies;
  double duration_s = 10.0;
  double epoch_s = 0.1;
  std::vector<std::uint64_t> seeds{1};
  ProfileGrid profile_grid;  // defaults to the axes spanned by workloads
  NetCasParams netcas;
  std::optional<ContentionSweep> contention_sweep;
};

constexpr const char* kScenarioSchema = "netcas/scenario-v1";

// strict additionally rejects unknown fields anywhere in the document.
Scenario scenario_from_json(const std::string& text, bool strict);
Scenario load_scenario(const std::filesystem::path& path, bool strict);

// Stable label for output file names ("static_split_base", "netcas", ...).
std::string policy_label(const PolicySpec& spec);

}  // namespace netcas
