#pragma once

#include <string>

#include "netcas/curve.hpp"
#include "netcas/types.hpp"

namespace netcas {

// Parametric device: base_iops scaled by a concurrency curve (input:
// threads*inflight) and a block-size curve (input: block size in bytes).
// base_latency_s is a fixed completion-delivery delay (pipeline latency); it
// does not consume serial service capacity.
struct DeviceModel {
  std::string name;
  double base_iops = 0.0;
  PiecewiseCurve scaling;        // total concurrency -> multiplier
  PiecewiseCurve block_scaling;  // block size bytes -> multiplier
  double base_latency_s = 0.0;
  double service_jitter_cv = 0.0;
};

// Throws ConfigError on non-positive base_iops, negative latency/cv, or
// curves with non-positive values.
void validate_device(const DeviceModel& dev);

// Standalone request rate (requests/s) of the device at this key. Pure.
double device_throughput(const DeviceModel& dev, const WorkloadKey& key);

}  // namespace netcas
