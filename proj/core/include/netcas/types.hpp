#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace netcas {

enum class Device : std::uint8_t { Cache = 0, Backend = 1 };

const char* to_string(Device d);

// One point in the (block size, queue shape) space a workload runs at.
// block_size must be a power of two in [4 KiB, 1 MiB]; inflight/threads >= 1.
struct WorkloadKey {
  std::uint64_t block_size = 65536;
  std::uint32_t inflight = 1;
  std::uint32_t threads = 1;

  std::uint64_t total_concurrency() const {
    return static_cast<std::uint64_t>(inflight) * threads;
  }
  auto operator<=>(const WorkloadKey&) const = default;
};

constexpr std::uint64_t kMinBlockSize = 4096;
constexpr std::uint64_t kMaxBlockSize = 1048576;

// Throws ConfigError if the key is outside the supported domain.
void validate_key(const WorkloadKey& key);
bool is_valid_block_size(std::uint64_t bs);

// Compact label used in file names: "bs65536_if16_th16".
std::string key_label(const WorkloadKey& key);

// One finished request. submit_time_s is when the request was handed to the
// device/fabric (service start), complete_time_s when the completion was
// delivered back; the difference is the path latency the monitor aggregates.
struct CompletionRecord {
  std::uint64_t req_id = 0;
  Device device = Device::Cache;
  double submit_time_s = 0.0;
  double complete_time_s = 0.0;
  std::uint64_t bytes = 0;
};

}  // namespace netcas
