#include "netcas/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>

#include "netcas/csv.hpp"
#include "netcas/error.hpp"
#include "netcas/splitter.hpp"

namespace netcas {

namespace {

bool needs_profile(const PolicySpec& spec) {
  if (spec.kind == PolicyKind::NetCas) return !spec.no_table;
  return spec.rho_is_base;
}

// Lookup for policies that consume the profile; nullopt for the rest.
std::optional<PerfProfile::Lookup> resolve_entry(const PolicySpec& spec,
                                                 const PerfProfile* profile,
                                                 const WorkloadKey& key, bool strict) {
  if (!needs_profile(spec)) return std::nullopt;
  if (!profile) {
    throw ConfigError("policy '" + policy_label(spec) + "' needs a profile (--profile)");
  }
  auto hit = profile->lookup(key);
  if (strict && !hit.exact) {
    throw ConfigError("strict mode: no exact profile entry for " + key_label(key));
  }
  return hit;
}

NetCasParams effective_params(const Scenario& sc, const RunOptions& opts) {
  NetCasParams params = sc.netcas;
  if (opts.guard_override) params.bwrr.guard = *opts.guard_override;
  return params;
}

std::vector<std::uint64_t> effective_seeds(const Scenario& sc, const RunOptions& opts) {
  if (opts.seed_override) return {*opts.seed_override};
  return sc.seeds;
}

// One run per contention level when a sweep is configured; otherwise a single
// unsuffixed run on the scenario's own schedule.
struct Level {
  LinkModel link;
  std::string suffix;  // "" or "__f<count>"
};

std::vector<Level> contention_levels(const Scenario& sc) {
  std::vector<Level> levels;
  if (!sc.contention_sweep) {
    levels.push_back({sc.link, ""});
    return levels;
  }
  const auto& sweep = *sc.contention_sweep;
  for (int count : sweep.counts) {
    Level lvl{sc.link, "__f" + std::to_string(count)};
    for (int i = 0; i < count; ++i) {
      lvl.link.flows.push_back({sweep.start_s, sweep.end_s, sweep.demand_bytes_per_s});
    }
    levels.push_back(std::move(lvl));
  }
  return levels;
}

std::string run_stem(const std::string& policy, const WorkloadKey& key, std::uint64_t seed,
                     const std::string& suffix) {
  return policy + "__" + key_label(key) + "__s" + std::to_string(seed) + suffix;
}

// Forwards decisions to the wrapped policy while logging every BWRR window
// position (or -1,-1 for policies without a scheduler).
class TracingPolicy final : public DispatchPolicy {
 public:
  TracingPolicy(DispatchPolicy& inner, const BwrrScheduler* sched, CsvWriter& out)
      : inner_(inner), sched_(sched), out_(out) {}

  Device dispatch(std::uint64_t req_id) override {
    Device dev = inner_.dispatch(req_id);
    std::string window = "-1";
    std::string pos = "-1";
    if (sched_) {
      // dispatch() has already advanced pos/req_count; report the slot the
      // decision was made in.
      const BwrrState& st = sched_->state();
      window = std::to_string(st.window_index);
      pos = std::to_string(st.req_count == 0 ? 0 : st.req_count - 1);
    }
    out_.row({std::to_string(req_id), to_string(dev), window, pos});
    return dev;
  }

  void on_epoch(const ThroughputSample& sample) override { inner_.on_epoch(sample); }
  PolicySnapshot snapshot() const override { return inner_.snapshot(); }

 private:
  DispatchPolicy& inner_;
  const BwrrScheduler* sched_;
  CsvWriter& out_;
};

const BwrrScheduler* scheduler_of(DispatchPolicy& policy) {
  if (auto* p = dynamic_cast<StaticSplitPolicy*>(&policy)) return &p->scheduler();
  if (auto* p = dynamic_cast<NetCasPolicy*>(&policy)) return &p->scheduler();
  return nullptr;
}

std::vector<std::string> epoch_row(const EpochStat& s, double epoch_s) {
  return {fmt_double(s.t_begin_s),
          fmt_double(static_cast<double>(s.total_completions()) / epoch_s),
          fmt_double(static_cast<double>(s.cache_completions) / epoch_s),
          fmt_double(static_cast<double>(s.backend_completions) / epoch_s),
          fmt_double(s.mean_latency_s),
          fmt_double(s.policy.rho),
          to_string(s.policy.mode),
          std::to_string(s.policy.drop_permil)};
}

}  // namespace

std::vector<std::filesystem::path> cmd_run(const Scenario& scenario, const PerfProfile* profile,
                                           const std::filesystem::path& out_dir,
                                           const RunOptions& opts) {
  const NetCasParams params = effective_params(scenario, opts);
  const auto seeds = effective_seeds(scenario, opts);
  const auto levels = contention_levels(scenario);

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  for (const auto& key : scenario.workloads) {
    for (const auto& spec : scenario.policies) {
      auto entry = resolve_entry(spec, profile, key, opts.strict);
      for (std::uint64_t seed : seeds) {
        for (const auto& level : levels) {
          const std::string stem = run_stem(policy_label(spec), key, seed, level.suffix);

          auto policy = make_policy(spec, params, entry, seed);

          std::unique_ptr<CsvWriter> records;
          RecordSink sink;
          if (opts.write_records) {
            records = std::make_unique<CsvWriter>(
                out_dir / ("records__" + stem + ".csv"),
                std::vector<std::string>{"req_id", "device", "submit_time_s", "complete_time_s",
                                         "bytes"});
            sink = [&records](const CompletionRecord& r) {
              records->row({std::to_string(r.req_id), to_string(r.device),
                            fmt_double(r.submit_time_s), fmt_double(r.complete_time_s),
                            std::to_string(r.bytes)});
            };
          }

          std::unique_ptr<CsvWriter> trace;
          std::unique_ptr<TracingPolicy> traced;
          DispatchPolicy* active = policy.get();
          if (opts.write_dispatch_trace) {
            trace = std::make_unique<CsvWriter>(
                out_dir / ("trace__" + stem + ".csv"),
                std::vector<std::string>{"req_id", "device", "window_index", "pos"});
            traced = std::make_unique<TracingPolicy>(*policy, scheduler_of(*policy), *trace);
            active = traced.get();
          }

          SimConfig cfg;
          cfg.workload = key;
          cfg.duration_s = scenario.duration_s;
          cfg.policy = spec;
          cfg.rng_seed = seed;
          cfg.epoch_s = scenario.epoch_s;
          cfg.monitor_window_len = params.window_len;

          SimResult result = run_simulation(cfg, scenario.cache, scenario.backend, level.link,
                                            *active, sink);

          CsvWriter epochs(out_dir / ("run__" + stem + ".csv"),
                           {"t", "iops_total", "iops_cache", "iops_backend", "mean_latency_s",
                            "rho", "mode", "drop_permil"});
          for (const auto& s : result.epochs) epochs.row(epoch_row(s, scenario.epoch_s));
          epochs.commit();
          written.push_back(epochs.path());

          if (auto* nc = dynamic_cast<NetCasPolicy*>(policy.get())) {
            CsvWriter split(out_dir / ("run__" + stem + "_splitter.csv"),
                            {"epoch", "mode", "rho", "drop_permil", "i_cache_used",
                             "i_back_used"});
            for (const auto& s : result.epochs) {
              split.row({std::to_string(s.index), to_string(s.policy.mode),
                         fmt_double(s.policy.rho), std::to_string(s.policy.drop_permil),
                         fmt_double(nc->i_cache_used()), fmt_double(nc->i_back_used())});
            }
            split.commit();
          }

          if (records) records->commit();
          if (trace) trace->commit();
        }
      }
    }
  }
  return written;
}

PerfProfile cmd_profile(const Scenario& scenario, const std::filesystem::path& out_dir,
                        double per_point_s, std::optional<std::uint64_t> seed) {
  if (per_point_s <= 0.0) throw ConfigError("per-point measurement time must be positive");
  const std::uint64_t s = seed.value_or(scenario.seeds.front());

  PerfProfile profile = build_profile(scenario.profile_grid, scenario.cache, scenario.backend,
                                      scenario.link, per_point_s, s);

  std::filesystem::create_directories(out_dir);
  save_profile(profile, out_dir / "profile.json");

  CsvWriter costs(out_dir / "break_even.csv",
                  {"point_index", "block_size", "inflight", "threads", "point_cost_s",
                   "cumulative_build_s"});
  std::size_t index = 0;
  double cumulative = 0.0;
  for (const auto& [key, entry] : profile.entries()) {
    const double point_cost = 2.0 * entry.measured_s;
    cumulative += point_cost;
    costs.row({std::to_string(index++), std::to_string(key.block_size),
               std::to_string(key.inflight), std::to_string(key.threads),
               fmt_double(point_cost), fmt_double(cumulative)});
  }
  costs.commit();
  return profile;
}

std::vector<std::filesystem::path> cmd_sweep_ratio(const Scenario& scenario,
                                                   const PerfProfile* profile, int steps,
                                                   const std::filesystem::path& out_dir,
                                                   const RunOptions& opts) {
  if (steps < 11) throw ConfigError("sweep needs at least 11 steps for a useful resolution");
  if (!profile) throw ConfigError("sweep-ratio needs a profile for the analytic base ratio");

  const NetCasParams params = effective_params(scenario, opts);
  const auto seeds = effective_seeds(scenario, opts);

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  for (const auto& key : scenario.workloads) {
    auto hit = profile->lookup(key);
    if (opts.strict && !hit.exact) {
      throw ConfigError("strict mode: no exact profile entry for " + key_label(key));
    }
    const double rho_base = base_ratio(hit.i_cache, hit.i_back);

    for (std::uint64_t seed : seeds) {
      std::vector<double> rhos, iops;
      for (int k = 0; k <= steps; ++k) {
        const double rho = static_cast<double>(k) / steps;
        PolicySpec spec;
        spec.kind = PolicyKind::StaticSplit;
        spec.rho = rho;

        SimConfig cfg;
        cfg.workload = key;
        cfg.duration_s = scenario.duration_s;
        cfg.policy = spec;
        cfg.rng_seed = seed;
        cfg.epoch_s = scenario.epoch_s;
        cfg.monitor_window_len = params.window_len;

        StaticSplitPolicy policy(rho, params.bwrr);
        SimResult result =
            run_simulation(cfg, scenario.cache, scenario.backend, scenario.link, policy);
        rhos.push_back(rho);
        iops.push_back(static_cast<double>(result.totals.completed) / scenario.duration_s);
      }

      const std::size_t best =
          static_cast<std::size_t>(std::max_element(iops.begin(), iops.end()) - iops.begin());

      CsvWriter out(out_dir / ("sweep__" + key_label(key) + "__s" + std::to_string(seed) +
                               ".csv"),
                    {"rho", "iops_total", "is_empirical_argmax", "rho_base"});
      for (std::size_t k = 0; k < rhos.size(); ++k) {
        out.row({fmt_double(rhos[k]), fmt_double(iops[k]), k == best ? "1" : "0",
                 fmt_double(rho_base)});
      }
      out.commit();
      written.push_back(out.path());
    }
  }
  return written;
}

}  // namespace netcas
