#include <doctest.h>

#include <cmath>
#include <vector>

#include "netcas/error.hpp"
#include "netcas/policies.hpp"
#include "netcas/sim.hpp"

using netcas::BackendOnlyPolicy;
using netcas::CacheOnlyPolicy;
using netcas::CompletionRecord;
using netcas::ConfigError;
using netcas::Device;
using netcas::DeviceModel;
using netcas::LinkModel;
using netcas::PiecewiseCurve;
using netcas::SimConfig;
using netcas::SimResult;
using netcas::StaticSplitPolicy;
using netcas::WorkloadKey;

namespace {

DeviceModel flat_device(const char* name, double iops, double latency = 0.0, double cv = 0.0) {
  DeviceModel d;
  d.name = name;
  d.base_iops = iops;
  d.base_latency_s = latency;
  d.service_jitter_cv = cv;
  return d;
}

LinkModel idle_link(double capacity = 1e15) {
  LinkModel l;
  l.capacity_bytes_per_s = capacity;
  return l;
}

SimConfig base_config(double duration, double epoch = 0.1) {
  SimConfig cfg;
  cfg.workload = WorkloadKey{65536, 4, 1};
  cfg.duration_s = duration;
  cfg.epoch_s = epoch;
  cfg.rng_seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("jitter-free cache-only run completes at the device rate, exactly") {
  // Service time is 2^-16 s, exactly representable, so completion k lands on
  // k * 2^-16 with no accumulated error; the one at t == 0.25 is excluded.
  auto cache = flat_device("cache", 65536.0);
  auto backend = flat_device("backend", 1000.0);
  CacheOnlyPolicy p;
  SimConfig cfg = base_config(0.25, 0.05);
  auto r = run_simulation(cfg, cache, backend, idle_link(), p);
  CHECK(r.totals.completed == 16383);
  CHECK(r.totals.cache_completions == 16383);
  CHECK(r.totals.backend_completions == 0);
}

TEST_CASE("throughput tracks the model rate within a tight band") {
  auto cache = flat_device("cache", 100000.0);
  auto backend = flat_device("backend", 1000.0);
  CacheOnlyPolicy p;
  auto r = run_simulation(base_config(10.0), cache, backend, idle_link(), p);
  // 10 s at 1e5 req/s; only float accumulation separates us from 1e6.
  CHECK(std::llabs(static_cast<long long>(r.totals.completed) - 1000000) <= 64);
}

TEST_CASE("issued equals completed plus the closed-loop slots") {
  auto cache = flat_device("cache", 50000.0, 3e-6, 0.2);
  auto backend = flat_device("backend", 20000.0, 1e-5, 0.2);
  StaticSplitPolicy p(0.7);
  SimConfig cfg = base_config(2.0);
  cfg.workload = WorkloadKey{65536, 16, 4};
  auto r = run_simulation(cfg, cache, backend, idle_link(), p);
  CHECK(r.totals.issued == r.totals.completed + cfg.workload.total_concurrency());
  CHECK(r.totals.cache_completions + r.totals.backend_completions == r.totals.completed);
}

TEST_CASE("backend rate is clipped by its link share") {
  auto cache = flat_device("cache", 1000.0);
  auto backend = flat_device("backend", 100000.0);
  // Capacity admits exactly half the backend demand: 50000 * 65536 bytes/s.
  auto link = idle_link(3.2768e9);
  BackendOnlyPolicy p;
  auto r = run_simulation(base_config(10.0), cache, backend, link, p);
  CHECK(static_cast<double>(r.totals.completed) ==
        doctest::Approx(500000.0).epsilon(0.02));
}

TEST_CASE("a competing flow halves the backend mid-run and releases it") {
  auto cache = flat_device("cache", 1000.0);
  auto backend = flat_device("backend", 100000.0);
  auto link = idle_link(6.5536e9);  // exactly the backend demand
  link.flows.push_back({0.5, 1.0, 6.5536e9});
  BackendOnlyPolicy p;
  auto r = run_simulation(base_config(1.5), cache, backend, link, p);
  REQUIRE(r.epochs.size() == 15);
  // 100000 req/s before, 50000 during [0.5, 1), 100000 after.
  CHECK(std::llabs(static_cast<long long>(r.epochs[2].backend_completions) - 10000) <= 10);
  CHECK(std::llabs(static_cast<long long>(r.epochs[6].backend_completions) - 5000) <= 10);
  CHECK(std::llabs(static_cast<long long>(r.epochs[12].backend_completions) - 10000) <= 10);
  CHECK(std::llabs(static_cast<long long>(r.totals.completed) - 125000) <= 10);
}

TEST_CASE("per-record latency is service plus delivery extras, independent of occupancy") {
  auto cache = flat_device("cache", 100000.0, 2e-6);
  auto backend = flat_device("backend", 1000.0);
  CacheOnlyPolicy p1, p32;

  std::vector<double> lat1, lat32;
  SimConfig cfg = base_config(0.5);
  cfg.workload = WorkloadKey{65536, 1, 1};
  run_simulation(cfg, cache, backend, idle_link(), p1,
                 [&](const CompletionRecord& r) { lat1.push_back(r.complete_time_s - r.submit_time_s); });
  cfg.workload = WorkloadKey{65536, 32, 1};
  run_simulation(cfg, cache, backend, idle_link(), p32,
                 [&](const CompletionRecord& r) { lat32.push_back(r.complete_time_s - r.submit_time_s); });

  REQUIRE(!lat1.empty());
  REQUIRE(!lat32.empty());
  // Every record: 1/100000 service + 2us delivery = 12us.
  for (double l : lat1) CHECK(l == doctest::Approx(1.2e-5).epsilon(1e-9));
  for (double l : lat32) CHECK(l == doctest::Approx(1.2e-5).epsilon(1e-9));
}

TEST_CASE("link rtt is added to backend deliveries only") {
  auto cache = flat_device("cache", 100000.0);
  auto backend = flat_device("backend", 100000.0, 5e-6);
  auto link = idle_link();
  link.base_rtt_s = 5e-6;
  StaticSplitPolicy p(0.5);
  std::vector<CompletionRecord> recs;
  SimConfig cfg = base_config(0.3);
  run_simulation(cfg, cache, backend, link, p,
                 [&](const CompletionRecord& r) { recs.push_back(r); });
  REQUIRE(!recs.empty());
  for (const auto& r : recs) {
    double lat = r.complete_time_s - r.submit_time_s;
    if (r.device == Device::Cache) {
      CHECK(lat == doctest::Approx(1e-5).epsilon(1e-9));
    } else {
      CHECK(lat == doctest::Approx(2e-5).epsilon(1e-9));  // service + 5us + 5us
    }
  }
}

TEST_CASE("epoch grid: one stat per closed epoch with t_begin on the grid") {
  auto cache = flat_device("cache", 10000.0);
  auto backend = flat_device("backend", 1000.0);
  CacheOnlyPolicy p;
  auto r = run_simulation(base_config(1.05, 0.1), cache, backend, idle_link(), p);
  REQUIRE(r.epochs.size() == 10);
  for (std::size_t i = 0; i < r.epochs.size(); ++i) {
    CHECK(r.epochs[i].index == i);
    CHECK(r.epochs[i].t_begin_s == doctest::Approx(0.1 * static_cast<double>(i)).epsilon(1e-12));
  }
  CHECK(r.epochs.back().t_begin_s == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("epoch completions sum to the totals when the duration is a whole grid") {
  auto cache = flat_device("cache", 30000.0, 0.0, 0.3);
  auto backend = flat_device("backend", 10000.0, 0.0, 0.3);
  StaticSplitPolicy p(0.75);
  SimConfig cfg = base_config(1.0);
  auto r = run_simulation(cfg, cache, backend, idle_link(), p);
  std::uint64_t cache_sum = 0, backend_sum = 0;
  for (const auto& e : r.epochs) {
    cache_sum += e.cache_completions;
    backend_sum += e.backend_completions;
    CHECK(e.total_completions() == e.cache_completions + e.backend_completions);
  }
  CHECK(cache_sum == r.totals.cache_completions);
  CHECK(backend_sum == r.totals.backend_completions);
}

TEST_CASE("epoch backend samples agree with the epoch counters") {
  auto cache = flat_device("cache", 30000.0);
  auto backend = flat_device("backend", 10000.0, 0.0, 0.2);
  StaticSplitPolicy p(0.5);
  auto r = run_simulation(base_config(2.0), cache, backend, idle_link(), p);
  for (const auto& e : r.epochs) {
    CHECK(e.backend_sample.completions == e.backend_completions);
    CHECK(e.backend_sample.bytes_per_s ==
          doctest::Approx(static_cast<double>(e.backend_completions) * 65536.0 / 0.1)
              .epsilon(1e-12));
  }
}

TEST_CASE("identical config and seed reproduce the run bit for bit") {
  auto cache = flat_device("cache", 80000.0, 2e-6, 0.3);
  auto backend = flat_device("backend", 30000.0, 1e-5, 0.3);
  auto link = idle_link(2e9);
  link.flows.push_back({0.4, 0.8, 2e9});
  SimConfig cfg = base_config(1.2);
  cfg.workload = WorkloadKey{65536, 8, 2};
  cfg.rng_seed = 77;

  auto run_once = [&](std::vector<CompletionRecord>& recs) {
    StaticSplitPolicy p(0.6);
    return run_simulation(cfg, cache, backend, link, p,
                          [&](const CompletionRecord& r) { recs.push_back(r); });
  };
  std::vector<CompletionRecord> recs_a, recs_b;
  SimResult a = run_once(recs_a);
  SimResult b = run_once(recs_b);

  REQUIRE(a.epochs.size() == b.epochs.size());
  for (std::size_t i = 0; i < a.epochs.size(); ++i) {
    CHECK(a.epochs[i].cache_completions == b.epochs[i].cache_completions);
    CHECK(a.epochs[i].backend_completions == b.epochs[i].backend_completions);
    CHECK(a.epochs[i].mean_latency_s == b.epochs[i].mean_latency_s);
  }
  REQUIRE(recs_a.size() == recs_b.size());
  for (std::size_t i = 0; i < recs_a.size(); ++i) {
    CHECK(recs_a[i].req_id == recs_b[i].req_id);
    CHECK(recs_a[i].device == recs_b[i].device);
    CHECK(recs_a[i].submit_time_s == recs_b[i].submit_time_s);
    CHECK(recs_a[i].complete_time_s == recs_b[i].complete_time_s);
  }

  cfg.rng_seed = 78;
  std::vector<CompletionRecord> recs_c;
  StaticSplitPolicy p(0.6);
  run_simulation(cfg, cache, backend, link, p,
                 [&](const CompletionRecord& r) { recs_c.push_back(r); });
  bool any_diff = recs_c.size() != recs_a.size();
  for (std::size_t i = 0; !any_diff && i < recs_c.size(); ++i) {
    any_diff = recs_c[i].complete_time_s != recs_a[i].complete_time_s;
  }
  CHECK(any_diff);
}

TEST_CASE("record stream matches the totals split by device") {
  auto cache = flat_device("cache", 30000.0);
  auto backend = flat_device("backend", 10000.0);
  StaticSplitPolicy p(0.75);
  std::uint64_t cache_recs = 0, backend_recs = 0;
  auto r = run_simulation(base_config(1.0), cache, backend, idle_link(), p,
                          [&](const CompletionRecord& rec) {
                            (rec.device == Device::Cache ? cache_recs : backend_recs)++;
                          });
  CHECK(cache_recs == r.totals.cache_completions);
  CHECK(backend_recs == r.totals.backend_completions);
}

TEST_CASE("concurrency scaling curves shape the device rate") {
  auto cache = flat_device("cache", 100000.0);
  cache.scaling = PiecewiseCurve({{1.0, 0.1}, {8.0, 0.5}, {32.0, 0.9}, {64.0, 1.0}});
  auto backend = flat_device("backend", 1000.0);
  CacheOnlyPolicy p;

  SimConfig cfg = base_config(2.0);
  cfg.workload = WorkloadKey{65536, 1, 1};  // multiplier 0.1 -> 10000 req/s
  auto low = run_simulation(cfg, cache, backend, idle_link(), p);
  cfg.workload = WorkloadKey{65536, 16, 4};  // multiplier 1.0
  auto high = run_simulation(cfg, cache, backend, idle_link(), p);
  CHECK(static_cast<double>(low.totals.completed) == doctest::Approx(20000.0).epsilon(0.01));
  CHECK(static_cast<double>(high.totals.completed) == doctest::Approx(200000.0).epsilon(0.01));
}

TEST_CASE("netcas without a profile boots in no_table and stays on the cache") {
  auto cache = flat_device("cache", 30000.0);
  auto backend = flat_device("backend", 10000.0);
  netcas::NetCasParams params;
  auto policy = netcas::make_policy(netcas::PolicySpec{netcas::PolicyKind::NetCas, 1.0, false, true},
                                    params, std::nullopt, 1);
  auto r = run_simulation(base_config(1.0), cache, backend, idle_link(), *policy);
  CHECK(r.totals.backend_completions == 0);
  CHECK(r.totals.completed > 0);
  for (const auto& e : r.epochs) {
    CHECK(e.policy.mode == netcas::RunMode::NoTable);
    CHECK(e.policy.rho == 1.0);
  }
}

TEST_CASE("simulation validates its configuration") {
  auto cache = flat_device("cache", 1000.0);
  auto backend = flat_device("backend", 1000.0);
  CacheOnlyPolicy p;
  SimConfig cfg = base_config(0.05, 0.1);  // duration <= epoch
  CHECK_THROWS_AS(run_simulation(cfg, cache, backend, idle_link(), p), ConfigError);
  cfg = base_config(1.0);
  cfg.workload.inflight = 0;
  CHECK_THROWS_AS(run_simulation(cfg, cache, backend, idle_link(), p), ConfigError);
  cfg = base_config(1.0);
  auto bad_cache = flat_device("cache", 0.0);
  CHECK_THROWS_AS(run_simulation(cfg, bad_cache, backend, idle_link(), p), ConfigError);
  auto bad_link = idle_link(0.0);
  CHECK_THROWS_AS(run_simulation(cfg, cache, backend, bad_link, p), ConfigError);
}
