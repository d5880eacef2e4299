#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "netcas/link_model.hpp"
#include "netcas/monitor.hpp"
#include "netcas/types.hpp"

namespace netcas {

enum class PolicyKind { CacheOnly, BackendOnly, StaticSplit, RandomSplit, NetCas };

const char* to_string(PolicyKind k);

struct PolicySpec {
  PolicyKind kind = PolicyKind::CacheOnly;
  double rho = 1.0;          // StaticSplit / RandomSplit only
  bool rho_is_base = false;  // resolve rho from the profile at run time
  bool no_table = false;     // NetCas: explicitly run without a profile
};

void validate_policy_spec(const PolicySpec& spec);

// Mode label attached to every epoch row. Static policies have no state
// machine and always report Static.
enum class RunMode { Static, NoTable, Warmup, Stable, Congestion };

const char* to_string(RunMode m);

struct PolicySnapshot {
  double rho = 1.0;
  RunMode mode = RunMode::Static;
  int drop_permil = 0;
};

// Per-request routing decisions plus the per-epoch control hook.
class DispatchPolicy {
 public:
  virtual ~DispatchPolicy() = default;
  virtual Device dispatch(std::uint64_t req_id) = 0;
  virtual void on_epoch(const ThroughputSample& sample) { (void)sample; }
  virtual PolicySnapshot snapshot() const = 0;
};

struct SimConfig {
  WorkloadKey workload;
  double duration_s = 0.0;
  PolicySpec policy;
  std::uint64_t rng_seed = 1;
  double epoch_s = 0.1;
  std::size_t monitor_window_len = 10;
};

struct EpochStat {
  std::size_t index = 0;
  double t_begin_s = 0.0;
  std::uint64_t cache_completions = 0;
  std::uint64_t backend_completions = 0;
  double mean_latency_s = 0.0;  // over all completions in the epoch
  ThroughputSample backend_sample;
  PolicySnapshot policy;

  std::uint64_t total_completions() const { return cache_completions + backend_completions; }
};

struct SimTotals {
  std::uint64_t issued = 0;
  std::uint64_t completed = 0;
  std::uint64_t cache_completions = 0;
  std::uint64_t backend_completions = 0;
  double last_cache_complete_s = 0.0;
  double last_backend_complete_s = 0.0;
};

struct SimResult {
  std::vector<EpochStat> epochs;
  SimTotals totals;
};

using RecordSink = std::function<void(const CompletionRecord&)>;

// Closed-loop discrete-event run: threads*inflight request slots, each slot
// reissues immediately on completion; the policy routes every issue. Devices
// are serial servers running at the model rate (the backend rate follows the
// link timeline); per-request service time is 1/rate scaled by lognormal
// jitter. Fully deterministic for a given (config, seed).
SimResult run_simulation(const SimConfig& cfg, const DeviceModel& cache,
                         const DeviceModel& backend, const LinkModel& link,
                         DispatchPolicy& policy, const RecordSink& sink = {});

}  // namespace netcas
