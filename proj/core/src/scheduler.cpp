#include "netcas/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netcas/error.hpp"

namespace netcas {

void validate_bwrr_config(const BwrrConfig& cfg) {
  if (cfg.window_size < 1) throw ConfigError("bwrr window_size must be >= 1");
  if (cfg.batch_size < 1) throw ConfigError("bwrr batch_size must be >= 1");
}

BwrrScheduler::BwrrScheduler(BwrrConfig cfg, double initial_rho)
    : cfg_(cfg), target_rho_(initial_rho) {
  validate_bwrr_config(cfg);
  if (initial_rho < 0.0 || initial_rho > 1.0) throw ConfigError("rho must be in [0, 1]");
  st_.window_index = static_cast<std::uint64_t>(-1);  // first begin_window lands on 0
  begin_window(initial_rho);
}

void BwrrScheduler::set_rho(double rho) {
  if (rho < 0.0 || rho > 1.0) throw ConfigError("rho must be in [0, 1]");
  target_rho_ = rho;
}

void BwrrScheduler::begin_window(double rho) {
  const std::uint32_t w = cfg_.window_size;
  auto a = static_cast<std::uint32_t>(
      std::min<long long>(std::llround(rho * w), static_cast<long long>(w)));
  st_.rho = rho;
  st_.cache_share = a;
  st_.backend_share = w - a;
  st_.cache_quota = a;
  st_.backend_quota = w - a;
  st_.pos = 0;
  st_.req_count = 0;
  ++st_.window_index;
  if (a == 0 || a == w) {
    // One-sided window: the quota branch handles every dispatch.
    st_.pattern_size = 0;
    st_.pattern_cache = 0;
    return;
  }
  std::uint32_t g = std::gcd(a, w - a);
  st_.pattern_size = std::min(w / g, cfg_.batch_size);
  st_.pattern_cache = static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(st_.pattern_size) * a) / w);
}

Device BwrrScheduler::dispatch() {
  if (st_.req_count == cfg_.window_size) begin_window(target_rho_);
  ++st_.req_count;

  if (st_.cache_quota > 0 && st_.backend_quota > 0) {
    bool to_backend = cfg_.guard == BwrrGuard::GreaterEqual ? st_.pos >= st_.pattern_cache
                                                            : st_.pos > st_.pattern_cache;
    st_.pos = (st_.pos + 1) % st_.pattern_size;
    if (to_backend) {
      --st_.backend_quota;
      return Device::Backend;
    }
    --st_.cache_quota;
    return Device::Cache;
  }
  // Pattern phase over: drain whichever quota is left so the window stays
  // exact at round(rho * W) cache dispatches.
  if (st_.cache_quota > 0) {
    --st_.cache_quota;
    return Device::Cache;
  }
  --st_.backend_quota;
  return Device::Backend;
}

Device random_dispatch(double rho, Rng& rng) {
  return rng.uniform01() < rho ? Device::Cache : Device::Backend;
}

}  // namespace netcas
