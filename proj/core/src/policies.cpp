#include "netcas/policies.hpp"

#include "netcas/error.hpp"

namespace netcas {

StaticSplitPolicy::StaticSplitPolicy(double rho, BwrrConfig bwrr) : sched_(bwrr, rho) {}

RandomSplitPolicy::RandomSplitPolicy(double rho, std::uint64_t seed)
    : rho_(rho), rng_(derive_seed(seed, 1)) {
  if (rho < 0.0 || rho > 1.0) throw ConfigError("rho must be in [0, 1]");
}

NetCasPolicy::NetCasPolicy(const NetCasParams& params,
                           std::optional<PerfProfile::Lookup> profile_entry)
    : params_(params),
      detector_(params.detector),
      machine_(params.mode),
      sched_(params.bwrr, 1.0) {
  if (profile_entry) {
    have_entry_ = true;
    entry_exact_ = profile_entry->exact;
    i_cache_ = profile_entry->i_cache;
    i_back_ = profile_entry->i_back;
    // The profile is on disk before the run starts, so the bootstrap state
    // resolves immediately: NoTable -> Warmup at the configured base ratio.
    auto step = machine_.step({true, false, 0}, i_cache_, i_back_);
    if (step.new_rho) {
      target_rho_ = *step.new_rho;
      sched_.set_rho(target_rho_);
      sched_.begin_window(target_rho_);
    }
  }
  // Without an entry the machine stays in NoTable and dispatch() routes
  // everything to the cache.
}

Device NetCasPolicy::dispatch(std::uint64_t) {
  if (machine_.mode() == Mode::NoTable) return Device::Cache;
  return sched_.dispatch();
}

void NetCasPolicy::on_epoch(const ThroughputSample& sample) {
  ++epochs_seen_;
  if (!have_entry_) return;
  if (!sample.empty()) detector_.observe(sample);
  // Empty epochs reuse the last score: no completions is no evidence of
  // recovery, and baselines stay untouched.
  ModeEvents ev;
  ev.profile_ready = true;
  ev.window_filled = epochs_seen_ >= params_.window_len;
  ev.drop_permil = detector_.last_drop_permil();
  auto step = machine_.step(ev, i_cache_, i_back_);
  if (step.new_rho) {
    target_rho_ = *step.new_rho;
    sched_.set_rho(target_rho_);
  }
}

PolicySnapshot NetCasPolicy::snapshot() const {
  RunMode m = RunMode::NoTable;
  switch (machine_.mode()) {
    case Mode::NoTable: m = RunMode::NoTable; break;
    case Mode::Warmup: m = RunMode::Warmup; break;
    case Mode::Stable: m = RunMode::Stable; break;
    case Mode::Congestion: m = RunMode::Congestion; break;
  }
  double rho = machine_.mode() == Mode::NoTable ? 1.0 : target_rho_;
  return {rho, m, detector_.last_drop_permil()};
}

std::unique_ptr<DispatchPolicy> make_policy(const PolicySpec& spec, const NetCasParams& params,
                                            std::optional<PerfProfile::Lookup> profile_entry,
                                            std::uint64_t seed) {
  validate_policy_spec(spec);
  double rho = spec.rho;
  if ((spec.kind == PolicyKind::StaticSplit || spec.kind == PolicyKind::RandomSplit) &&
      spec.rho_is_base) {
    if (!profile_entry) {
      throw ConfigError("policy needs a profile to resolve rho = base");
    }
    rho = base_ratio(profile_entry->i_cache, profile_entry->i_back);
  }
  switch (spec.kind) {
    case PolicyKind::CacheOnly: return std::make_unique<CacheOnlyPolicy>();
    case PolicyKind::BackendOnly: return std::make_unique<BackendOnlyPolicy>();
    case PolicyKind::StaticSplit: return std::make_unique<StaticSplitPolicy>(rho, params.bwrr);
    case PolicyKind::RandomSplit: return std::make_unique<RandomSplitPolicy>(rho, seed);
    case PolicyKind::NetCas: return std::make_unique<NetCasPolicy>(params, profile_entry);
  }
  throw ConfigError("unknown policy kind");
}

}  // namespace netcas
