#include "netcas/device_model.hpp"

#include "netcas/error.hpp"

namespace netcas {

void validate_device(const DeviceModel& dev) {
  if (dev.base_iops <= 0.0) {
    throw ConfigError("device '" + dev.name + "': base_iops must be positive");
  }
  if (dev.base_latency_s < 0.0) {
    throw ConfigError("device '" + dev.name + "': base_latency_s must be >= 0");
  }
  if (dev.service_jitter_cv < 0.0) {
    throw ConfigError("device '" + dev.name + "': service_jitter_cv must be >= 0");
  }
  // Curve constructors already reject non-positive values, so any throughput
  // the curves produce stays positive.
}

double device_throughput(const DeviceModel& dev, const WorkloadKey& key) {
  validate_key(key);
  double conc = static_cast<double>(key.total_concurrency());
  return dev.base_iops * dev.scaling(conc) * dev.block_scaling(static_cast<double>(key.block_size));
}

}  // namespace netcas
