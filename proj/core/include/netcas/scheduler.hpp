#pragma once

#include <cstdint>

#include "netcas/rng.hpp"
#include "netcas/types.hpp"

namespace netcas {

// Guard comparing the pattern position against pattern_cache. GreaterEqual
// (cache while pos < pattern_cache) preserves interleaving; Greater is the
// literal printed form kept behind a flag for fidelity experiments — it sends
// whole pattern rounds to the cache and drains the backend quota in a burst.
enum class BwrrGuard { GreaterEqual, Greater };

struct BwrrConfig {
  std::uint32_t window_size = 100;  // W: requests per accounting window
  std::uint32_t batch_size = 64;    // B: upper bound on pattern length
  BwrrGuard guard = BwrrGuard::GreaterEqual;
};

void validate_bwrr_config(const BwrrConfig& cfg);

// Counters of the current window, exposed for tests and dispatch traces.
struct BwrrState {
  double rho = 0.0;               // ratio this window was built with
  std::uint32_t cache_share = 0;  // a = round(rho * W), half away from zero
  std::uint32_t backend_share = 0;
  std::uint32_t pattern_size = 0;
  std::uint32_t pattern_cache = 0;
  std::uint32_t pos = 0;
  std::uint32_t req_count = 0;
  std::uint32_t cache_quota = 0;
  std::uint32_t backend_quota = 0;
  std::uint64_t window_index = 0;
};

// Batched weighted round robin dispatcher. O(1) per decision, no allocation
// after construction. Ratio changes apply at the next window boundary.
class BwrrScheduler {
 public:
  explicit BwrrScheduler(BwrrConfig cfg = {}, double initial_rho = 1.0);

  // Target ratio for subsequent windows; the in-progress window is untouched.
  void set_rho(double rho);

  Device dispatch();

  // Rebuild window counters from rho immediately. Exposed for tests; dispatch
  // calls it whenever a window is exhausted.
  void begin_window(double rho);

  const BwrrState& state() const { return st_; }
  double current_rho() const { return st_.rho; }
  double target_rho() const { return target_rho_; }

 private:
  BwrrConfig cfg_;
  BwrrState st_;
  double target_rho_;
};

// Bernoulli dispatch: cache with probability rho.
Device random_dispatch(double rho, Rng& rng);

}  // namespace netcas
