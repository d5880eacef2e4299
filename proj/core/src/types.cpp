#include "netcas/types.hpp"

#include <cstdio>

#include "netcas/error.hpp"

namespace netcas {

const char* to_string(Device d) {
  return d == Device::Cache ? "cache" : "backend";
}

bool is_valid_block_size(std::uint64_t bs) {
  if (bs < kMinBlockSize || bs > kMaxBlockSize) return false;
  return (bs & (bs - 1)) == 0;
}

void validate_key(const WorkloadKey& key) {
  if (!is_valid_block_size(key.block_size)) {
    throw ConfigError("block_size must be a power of two in [4096, 1048576], got " +
                      std::to_string(key.block_size));
  }
  if (key.inflight < 1) throw ConfigError("inflight must be >= 1");
  if (key.threads < 1) throw ConfigError("threads must be >= 1");
}

std::string key_label(const WorkloadKey& key) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "bs%llu_if%u_th%u",
                static_cast<unsigned long long>(key.block_size), key.inflight, key.threads);
  return buf;
}

}  // namespace netcas
