#include "netcas/link_model.hpp"

#include <algorithm>
#include <cmath>

#include "netcas/error.hpp"

namespace netcas {

void validate_link(const LinkModel& link) {
  if (link.capacity_bytes_per_s <= 0.0) throw ConfigError("link capacity must be positive");
  if (link.base_rtt_s < 0.0) throw ConfigError("link base_rtt_s must be >= 0");
  for (const auto& f : link.flows) {
    if (f.end_s <= f.start_s) throw ConfigError("competing flow must have end_s > start_s");
    if (f.demand_bytes_per_s <= 0.0) throw ConfigError("competing flow demand must be positive");
  }
}

double max_min_share(double capacity, double demand, std::span<const double> others) {
  if (demand <= 0.0) return 0.0;
  // Progressive filling: satisfy the smallest demands first, split what is
  // left evenly among the rest. Once some demand exceeds its fair level,
  // every still-unsatisfied flow (ours included, if it is one of them) is
  // capped at that level; fair levels only grow as small demands drop out,
  // so min(demand, fair) is also right when ours was satisfied earlier.
  std::vector<double> all(others.begin(), others.end());
  all.push_back(demand);
  std::sort(all.begin(), all.end());
  double remaining = capacity;
  std::size_t left = all.size();
  for (double d : all) {
    double fair = remaining / static_cast<double>(left);
    if (d > fair) return std::min(demand, fair);
    remaining -= d;
    --left;
  }
  return demand;  // capacity covers everyone
}

double storage_link_share(const LinkModel& link, double storage_demand_bps, double t) {
  std::vector<double> active;
  active.reserve(link.flows.size());
  for (const auto& f : link.flows) {
    if (f.start_s <= t && t < f.end_s) active.push_back(f.demand_bytes_per_s);
  }
  return max_min_share(link.capacity_bytes_per_s, storage_demand_bps,
                       std::span<const double>(active.data(), active.size()));
}

double effective_backend_throughput(const DeviceModel& dev, const LinkModel& link,
                                    const WorkloadKey& key, double t) {
  double rate = device_throughput(dev, key);
  double demand = rate * static_cast<double>(key.block_size);
  double share = storage_link_share(link, demand, t);
  return std::min(rate, share / static_cast<double>(key.block_size));
}

std::vector<RateSegment> backend_rate_timeline(const DeviceModel& dev, const LinkModel& link,
                                               const WorkloadKey& key, double duration_s) {
  std::vector<double> cuts{0.0};
  for (const auto& f : link.flows) {
    if (f.start_s > 0.0 && f.start_s < duration_s) cuts.push_back(f.start_s);
    if (f.end_s > 0.0 && f.end_s < duration_s) cuts.push_back(f.end_s);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<RateSegment> out;
  out.reserve(cuts.size());
  for (double c : cuts) {
    out.push_back({c, effective_backend_throughput(dev, link, key, c)});
  }
  return out;
}

}  // namespace netcas
