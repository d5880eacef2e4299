#include "netcas/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "netcas/error.hpp"
#include "netcas/rng.hpp"

namespace netcas {

const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::CacheOnly: return "cache_only";
    case PolicyKind::BackendOnly: return "backend_only";
    case PolicyKind::StaticSplit: return "static_split";
    case PolicyKind::RandomSplit: return "random_split";
    case PolicyKind::NetCas: return "netcas";
  }
  return "?";
}

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Static: return "static";
    case RunMode::NoTable: return "no_table";
    case RunMode::Warmup: return "warmup";
    case RunMode::Stable: return "stable";
    case RunMode::Congestion: return "congestion";
  }
  return "?";
}

void validate_policy_spec(const PolicySpec& spec) {
  if (spec.kind == PolicyKind::StaticSplit || spec.kind == PolicyKind::RandomSplit) {
    if (!spec.rho_is_base && (spec.rho < 0.0 || spec.rho > 1.0)) {
      throw ConfigError("split policy rho must be in [0, 1]");
    }
  }
}

namespace {

// Serial server whose service rate follows a piecewise-constant timeline.
// Service starts are non-decreasing, so a single forward cursor suffices.
struct Server {
  std::vector<RateSegment> timeline;
  std::size_t seg = 0;
  double free_t = 0.0;
  double extra_latency = 0.0;  // completion delivery delay, not serial capacity
  double jitter_cv = 0.0;

  // Finish time for `work` service units (1 unit = one request at the
  // nominal rate) started at `start`.
  double advance(double start, double work) {
    while (seg + 1 < timeline.size() && timeline[seg + 1].t_begin <= start) ++seg;
    double t = start;
    double remaining = work;
    for (std::size_t s = seg;; ++s) {
      double rate = timeline[s].rate;
      if (rate <= 0.0) throw StateError("device rate collapsed to zero");
      double seg_end = s + 1 < timeline.size() ? timeline[s + 1].t_begin
                                               : std::numeric_limits<double>::infinity();
      double need = remaining / rate;
      if (t + need <= seg_end || s + 1 >= timeline.size()) {
        seg = s;
        return t + need;
      }
      remaining -= (seg_end - t) * rate;
      t = seg_end;
    }
  }
};

struct Event {
  double t = 0.0;
  std::uint32_t kind = 0;  // 0 = epoch close, 1 = completion; epoch wins ties
  std::uint64_t seq = 0;
  std::uint64_t req_id = 0;
  Device dev = Device::Cache;
  double submit = 0.0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    if (a.kind != b.kind) return a.kind > b.kind;
    return a.seq > b.seq;
  }
};

}  // namespace

SimResult run_simulation(const SimConfig& cfg, const DeviceModel& cache,
                         const DeviceModel& backend, const LinkModel& link,
                         DispatchPolicy& policy, const RecordSink& sink) {
  validate_key(cfg.workload);
  validate_device(cache);
  validate_device(backend);
  validate_link(link);
  validate_policy_spec(cfg.policy);
  if (cfg.duration_s <= cfg.epoch_s) {
    throw ConfigError("duration_s must exceed the warm-up epoch (epoch_s)");
  }
  if (cfg.epoch_s <= 0.0) throw ConfigError("epoch_s must be positive");

  const double duration = cfg.duration_s;
  const double tol = duration * 1e-12 + 1e-12;
  const std::uint64_t bytes = cfg.workload.block_size;

  Server servers[2];
  servers[0].timeline = {{0.0, device_throughput(cache, cfg.workload)}};
  servers[0].extra_latency = cache.base_latency_s;
  servers[0].jitter_cv = cache.service_jitter_cv;
  servers[1].timeline = backend_rate_timeline(backend, link, cfg.workload, duration);
  servers[1].extra_latency = backend.base_latency_s + link.base_rtt_s;
  servers[1].jitter_cv = backend.service_jitter_cv;

  Rng jitter_rng(derive_seed(cfg.rng_seed, 0));
  Monitor monitor(cfg.epoch_s, cfg.monitor_window_len);

  std::priority_queue<Event, std::vector<Event>, EventAfter> q;
  std::uint64_t seq = 0;
  std::uint64_t next_req_id = 0;

  SimResult result;
  SimTotals& tot = result.totals;

  auto issue = [&](double now) {
    std::uint64_t id = next_req_id++;
    Device dev = policy.dispatch(id);
    Server& sv = servers[dev == Device::Cache ? 0 : 1];
    double start = std::max(now, sv.free_t);
    double work = jitter_rng.lognormal_unit(sv.jitter_cv);
    double service_end = sv.advance(start, work);
    sv.free_t = service_end;
    q.push({service_end + sv.extra_latency, 1, seq++, id, dev, start});
    ++tot.issued;
  };

  const std::uint64_t slots = cfg.workload.total_concurrency();
  for (std::uint64_t i = 0; i < slots; ++i) issue(0.0);
  q.push({cfg.epoch_s, 0, seq++, 0, Device::Cache, 0.0});

  // per-epoch accumulators
  std::uint64_t acc_cache = 0, acc_backend = 0;
  double acc_latency = 0.0;
  std::size_t epoch_idx = 0;

  while (!q.empty()) {
    Event ev = q.top();
    q.pop();
    if (ev.kind == 1) {
      if (ev.t >= duration) continue;  // in flight past the end of the run

      CompletionRecord rec{ev.req_id, ev.dev, ev.submit, ev.t, bytes};
      if (sink) sink(rec);
      ++tot.completed;
      acc_latency += ev.t - ev.submit;
      if (ev.dev == Device::Cache) {
        ++acc_cache;
        ++tot.cache_completions;
        tot.last_cache_complete_s = ev.t;
      } else {
        ++acc_backend;
        ++tot.backend_completions;
        tot.last_backend_complete_s = ev.t;
        monitor.ingest(rec);
      }
      issue(ev.t);  // closed loop: the slot goes right back out
    } else {
      ThroughputSample sample = monitor.close_epoch();
      policy.on_epoch(sample);

      EpochStat st;
      st.index = epoch_idx;
      st.t_begin_s = static_cast<double>(epoch_idx) * cfg.epoch_s;
      st.cache_completions = acc_cache;
      st.backend_completions = acc_backend;
      std::uint64_t n = acc_cache + acc_backend;
      st.mean_latency_s = n > 0 ? acc_latency / static_cast<double>(n) : 0.0;
      st.backend_sample = sample;
      st.policy = policy.snapshot();
      result.epochs.push_back(st);

      acc_cache = acc_backend = 0;
      acc_latency = 0.0;
      ++epoch_idx;
      double next_close = static_cast<double>(epoch_idx + 1) * cfg.epoch_s;
      if (next_close <= duration + tol) {
        q.push({next_close, 0, seq++, 0, Device::Cache, 0.0});
      }
    }
  }
  return result;
}

}  // namespace netcas
