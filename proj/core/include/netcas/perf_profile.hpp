#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "netcas/link_model.hpp"
#include "netcas/types.hpp"

namespace netcas {

// Axes of the measured grid. Values are sorted ascending and unique.
struct ProfileGrid {
  std::vector<std::uint64_t> block_sizes;
  std::vector<std::uint32_t> inflights;
  std::vector<std::uint32_t> threads;

  std::size_t points() const {
    return block_sizes.size() * inflights.size() * threads.size();
  }
};

void validate_grid(const ProfileGrid& grid);

struct ProfileEntry {
  double i_cache = 0.0;   // standalone cache requests/s at this key
  double i_back = 0.0;    // standalone backend requests/s (through the link)
  double measured_s = 0.0;  // simulated seconds spent per device on this point
};

// Measured standalone throughput table, keyed by WorkloadKey.
class PerfProfile {
 public:
  PerfProfile() = default;
  PerfProfile(ProfileGrid grid, std::map<WorkloadKey, ProfileEntry> entries);

  struct Lookup {
    double i_cache = 0.0;
    double i_back = 0.0;
    bool exact = false;      // false when the nearest-neighbor fallback fired
    WorkloadKey entry_key;   // grid key the values came from
  };

  // Exact match, else nearest neighbor under normalized L1 distance over
  // (log2 block_size, inflight, threads); ties break toward the smaller key.
  // Throws ProfileError when the profile is empty.
  Lookup lookup(const WorkloadKey& key) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const ProfileGrid& grid() const { return grid_; }
  const std::map<WorkloadKey, ProfileEntry>& entries() const { return entries_; }

 private:
  ProfileGrid grid_;
  std::map<WorkloadKey, ProfileEntry> entries_;
};

// Measure every grid point: one standalone closed-loop run per device per
// point, per_point_s simulated seconds each, with competing link flows
// stripped (profiling assumes an uncongested path). Throws ProfileError if a
// point measures zero completions.
PerfProfile build_profile(const ProfileGrid& grid, const DeviceModel& cache,
                          const DeviceModel& backend, const LinkModel& link,
                          double per_point_s, std::uint64_t seed);

// points * 2 * per-point seconds, from per-entry provenance.
double total_build_cost_s(const PerfProfile& profile);

// Versioned JSON persistence. Round-trips bit-identically.
std::string profile_to_json(const PerfProfile& profile);
PerfProfile profile_from_json(const std::string& text);
void save_profile(const PerfProfile& profile, const std::filesystem::path& path);
PerfProfile load_profile(const std::filesystem::path& path);

constexpr int kProfileVersion = 1;

}  // namespace netcas
