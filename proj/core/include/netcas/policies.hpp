#pragma once

#include <memory>
#include <optional>

#include "netcas/detector.hpp"
#include "netcas/perf_profile.hpp"
#include "netcas/scheduler.hpp"
#include "netcas/sim.hpp"
#include "netcas/splitter.hpp"

namespace netcas {

class CacheOnlyPolicy final : public DispatchPolicy {
 public:
  Device dispatch(std::uint64_t) override { return Device::Cache; }
  PolicySnapshot snapshot() const override { return {1.0, RunMode::Static, 0}; }
};

class BackendOnlyPolicy final : public DispatchPolicy {
 public:
  Device dispatch(std::uint64_t) override { return Device::Backend; }
  PolicySnapshot snapshot() const override { return {0.0, RunMode::Static, 0}; }
};

// Frozen ratio through the BWRR dispatcher; no detector, no mode machine.
class StaticSplitPolicy final : public DispatchPolicy {
 public:
  StaticSplitPolicy(double rho, BwrrConfig bwrr = {});
  Device dispatch(std::uint64_t) override { return sched_.dispatch(); }
  PolicySnapshot snapshot() const override { return {sched_.target_rho(), RunMode::Static, 0}; }
  const BwrrScheduler& scheduler() const { return sched_; }

 private:
  BwrrScheduler sched_;
};

// Bernoulli baseline at the same ratio.
class RandomSplitPolicy final : public DispatchPolicy {
 public:
  RandomSplitPolicy(double rho, std::uint64_t seed);
  Device dispatch(std::uint64_t) override { return random_dispatch(rho_, rng_); }
  PolicySnapshot snapshot() const override { return {rho_, RunMode::Static, 0}; }

 private:
  double rho_;
  Rng rng_;
};

struct NetCasParams {
  DetectorConfig detector;
  ModeConfig mode;
  BwrrConfig bwrr;
  std::size_t window_len = 10;  // epochs of warmup before Stable
};

// Full control stack: detector + mode machine feeding the BWRR dispatcher.
// Without a usable profile entry the policy stays in NoTable and routes
// everything to the cache (bootstrap behavior).
class NetCasPolicy final : public DispatchPolicy {
 public:
  NetCasPolicy(const NetCasParams& params, std::optional<PerfProfile::Lookup> profile_entry);

  Device dispatch(std::uint64_t) override;
  void on_epoch(const ThroughputSample& sample) override;
  PolicySnapshot snapshot() const override;

  Mode mode() const { return machine_.mode(); }
  // Splitter telemetry for the per-epoch splitter CSV.
  double i_cache_used() const { return i_cache_; }
  double i_back_used() const { return i_back_; }
  bool used_fallback_entry() const { return have_entry_ && !entry_exact_; }
  const BwrrScheduler& scheduler() const { return sched_; }

 private:
  NetCasParams params_;
  Detector detector_;
  ModeMachine machine_;
  BwrrScheduler sched_;
  bool have_entry_ = false;
  bool entry_exact_ = false;
  double i_cache_ = 0.0;
  double i_back_ = 0.0;
  std::size_t epochs_seen_ = 0;
  double target_rho_ = 1.0;
};

// Build the policy object a PolicySpec describes. StaticSplit/RandomSplit
// with rho_is_base and NetCas need a profile; the lookup result for the run's
// key is passed in by the caller (nullopt -> NetCas NoTable bootstrap).
std::unique_ptr<DispatchPolicy> make_policy(const PolicySpec& spec, const NetCasParams& params,
                                            std::optional<PerfProfile::Lookup> profile_entry,
                                            std::uint64_t seed);

}  // namespace netcas
