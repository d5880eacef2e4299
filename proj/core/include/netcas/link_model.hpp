#pragma once

#include <span>
#include <vector>

#include "netcas/device_model.hpp"
#include "netcas/types.hpp"

namespace netcas {

struct CompetingFlow {
  double start_s = 0.0;
  double end_s = 0.0;  // half-open [start_s, end_s)
  double demand_bytes_per_s = 0.0;
};

// Shared bottleneck between the host and the backend device. Bandwidth is
// divided max-min fairly between the storage flow and whatever competing
// flows are active. base_rtt_s is added to backend completion delivery.
struct LinkModel {
  double capacity_bytes_per_s = 0.0;
  double base_rtt_s = 0.0;
  std::vector<CompetingFlow> flows;
};

void validate_link(const LinkModel& link);

// Max-min fair allocation for the flow with demand `demand` competing against
// `others` on `capacity`. Returns the allocation for `demand` only.
double max_min_share(double capacity, double demand, std::span<const double> others);

// Storage flow's byte-rate share at time t given its nominal demand.
double storage_link_share(const LinkModel& link, double storage_demand_bps, double t);

// min(device rate, link share / block size) at time t.
double effective_backend_throughput(const DeviceModel& dev, const LinkModel& link,
                                    const WorkloadKey& key, double t);

// Piecewise-constant service rate over [0, duration): one segment per
// interval between competing-flow start/end events.
struct RateSegment {
  double t_begin = 0.0;
  double rate = 0.0;  // requests/s
};

std::vector<RateSegment> backend_rate_timeline(const DeviceModel& dev, const LinkModel& link,
                                               const WorkloadKey& key, double duration_s);

}  // namespace netcas
