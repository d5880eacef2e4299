#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "netcas/device_model.hpp"
#include "netcas/error.hpp"
#include "netcas/link_model.hpp"
#include "netcas/rng.hpp"

using netcas::ConfigError;
using netcas::DeviceModel;
using netcas::LinkModel;
using netcas::WorkloadKey;

namespace {

// Independent max-min oracle: bisect the water level L where
// sum_i min(d_i, L) == capacity; each flow then receives min(d_i, L).
double waterfill_share(double capacity, const std::vector<double>& demands, std::size_t idx) {
  double total = 0.0;
  for (double d : demands) total += d;
  if (total <= capacity) return demands[idx];
  double lo = 0.0;
  double hi = *std::max_element(demands.begin(), demands.end());
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double used = 0.0;
    for (double d : demands) used += std::min(d, mid);
    if (used > capacity) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::min(demands[idx], lo);
}

double share_of_first(double capacity, const std::vector<double>& demands) {
  std::span<const double> others(demands.data() + 1, demands.size() - 1);
  return netcas::max_min_share(capacity, demands[0], others);
}

}  // namespace

TEST_CASE("max-min hand cases") {
  // Uncontended: everyone fits.
  CHECK(share_of_first(100.0, {10.0, 20.0}) == 10.0);
  // Small demand is fully satisfied even against a hog.
  CHECK(share_of_first(100.0, {10.0, 200.0}) == 10.0);
  // The hog gets everything the small flow left behind.
  CHECK(share_of_first(100.0, {200.0, 10.0}) == doctest::Approx(90.0).epsilon(1e-12));
  // Three equal elephants split evenly.
  CHECK(share_of_first(100.0, {50.0, 50.0, 50.0}) ==
        doctest::Approx(100.0 / 3.0).epsilon(1e-12));
  // Zero or negative demand gets nothing.
  std::vector<double> others{50.0};
  CHECK(netcas::max_min_share(100.0, 0.0, others) == 0.0);
  CHECK(netcas::max_min_share(100.0, -5.0, others) == 0.0);
}

TEST_CASE("max-min matches an independent water-filling oracle") {
  netcas::Rng rng(2024);
  for (int c = 0; c < 500; ++c) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.uniform01() * 8.0);
    std::vector<double> demands(n);
    for (auto& d : demands) d = std::pow(10.0, rng.uniform01() * 10.0);
    double capacity = std::pow(10.0, rng.uniform01() * 10.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> rotated(demands);
      std::swap(rotated[0], rotated[i]);
      double got = share_of_first(capacity, rotated);
      double want = waterfill_share(capacity, rotated, 0);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("allocations never exceed demand or capacity and fill the link") {
  netcas::Rng rng(77);
  for (int c = 0; c < 200; ++c) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 6.0);
    std::vector<double> demands(n);
    for (auto& d : demands) d = 1.0 + rng.uniform01() * 1000.0;
    double capacity = 1.0 + rng.uniform01() * 2000.0;
    double total_alloc = 0.0, total_demand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> rotated(demands);
      std::swap(rotated[0], rotated[i]);
      double a = share_of_first(capacity, rotated);
      CHECK(a <= rotated[0] + 1e-9);
      total_alloc += a;
      total_demand += demands[i];
    }
    CHECK(total_alloc <= capacity + 1e-6);
    // Work-conserving: either all demand fits or the link is saturated.
    CHECK(std::min(total_demand, capacity) == doctest::Approx(total_alloc).epsilon(1e-9));
  }
}

TEST_CASE("adding a competitor never increases our share") {
  netcas::Rng rng(31);
  for (int c = 0; c < 200; ++c) {
    double capacity = 10.0 + rng.uniform01() * 1000.0;
    double mine = 1.0 + rng.uniform01() * 500.0;
    std::vector<double> others;
    double prev = netcas::max_min_share(capacity, mine, others);
    for (int k = 0; k < 5; ++k) {
      others.push_back(1.0 + rng.uniform01() * 500.0);
      double cur = netcas::max_min_share(capacity, mine, others);
      CHECK(cur <= prev + 1e-9);
      prev = cur;
    }
  }
}

TEST_CASE("ten capped flows leave the storage flow the exact remainder") {
  // 40 Gbit/s link (5e9 B/s) against ten competitors pinned at 2.5 Gbit/s
  // (3.125e8 B/s) each: the greedy storage flow keeps 15 Gbit/s = 1.875e9 B/s.
  std::vector<double> others(10, 3.125e8);
  double share = netcas::max_min_share(5e9, 1e15, others);
  CHECK(share == 1.875e9);
}

TEST_CASE("effective backend throughput converts an even split to requests") {
  DeviceModel dev;
  dev.name = "backend";
  dev.base_iops = 1e9;  // device never the bottleneck here
  LinkModel link;
  link.capacity_bytes_per_s = 4294967296.0;  // 4 GiB/s
  link.flows.push_back({0.0, 100.0, 2684354560.0});  // competitor wants 2.5 GiB/s
  WorkloadKey key{65536, 16, 4};
  // Both flows exceed the fair level, so each gets exactly half the link:
  // 2 GiB/s over 64 KiB blocks is exactly 32768 requests/s.
  CHECK(netcas::effective_backend_throughput(dev, link, key, 1.0) == 32768.0);
}

TEST_CASE("effective backend throughput is device-bound when the link is idle") {
  DeviceModel dev;
  dev.name = "backend";
  dev.base_iops = 100000.0;
  LinkModel link;
  link.capacity_bytes_per_s = 1e12;
  WorkloadKey key{65536, 16, 4};
  CHECK(netcas::effective_backend_throughput(dev, link, key, 0.0) == 100000.0);
}

TEST_CASE("storage_link_share treats flow intervals as half-open") {
  LinkModel link;
  link.capacity_bytes_per_s = 100.0;
  link.flows.push_back({1.0, 2.0, 1000.0});
  // Before the flow and at its end the storage demand is alone on the link.
  CHECK(netcas::storage_link_share(link, 80.0, 0.999) == 80.0);
  CHECK(netcas::storage_link_share(link, 80.0, 2.0) == 80.0);
  // At the start instant and inside the interval the hog squeezes us to half.
  CHECK(netcas::storage_link_share(link, 80.0, 1.0) == 50.0);
  CHECK(netcas::storage_link_share(link, 80.0, 1.5) == 50.0);
}

TEST_CASE("backend_rate_timeline cuts segments at flow boundaries") {
  DeviceModel dev;
  dev.name = "backend";
  dev.base_iops = 100000.0;
  LinkModel link;
  link.capacity_bytes_per_s = 6.5536e9;  // exactly 100000 req/s of 64 KiB
  link.flows.push_back({10.0, 30.0, 6.5536e9});
  link.flows.push_back({10.0, 30.0, 6.5536e9});
  link.flows.push_back({10.0, 30.0, 6.5536e9});
  WorkloadKey key{65536, 16, 4};

  auto segs = netcas::backend_rate_timeline(dev, link, key, 36.0);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].t_begin == 0.0);
  CHECK(segs[1].t_begin == 10.0);
  CHECK(segs[2].t_begin == 30.0);
  // Storage demand is 100000*65536 == capacity; four greedy flows split the
  // link evenly while the competitors are up: 25% of 100000.
  CHECK(segs[0].rate == 100000.0);
  CHECK(segs[1].rate == doctest::Approx(25000.0).epsilon(1e-12));
  CHECK(segs[2].rate == 100000.0);
}

TEST_CASE("backend_rate_timeline drops cuts outside the run window") {
  DeviceModel dev;
  dev.name = "backend";
  dev.base_iops = 50000.0;
  LinkModel link;
  link.capacity_bytes_per_s = 1e12;
  link.flows.push_back({10.0, 30.0, 1e9});
  auto segs = netcas::backend_rate_timeline(dev, link, WorkloadKey{}, 5.0);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].t_begin == 0.0);
  CHECK(segs[0].rate == 50000.0);
}

TEST_CASE("link validation rejects bad configurations") {
  LinkModel link;
  link.capacity_bytes_per_s = 0.0;
  CHECK_THROWS_AS(netcas::validate_link(link), ConfigError);
  link.capacity_bytes_per_s = 1e9;
  link.base_rtt_s = -1e-6;
  CHECK_THROWS_AS(netcas::validate_link(link), ConfigError);
  link.base_rtt_s = 0.0;
  link.flows.push_back({5.0, 5.0, 100.0});  // empty interval
  CHECK_THROWS_AS(netcas::validate_link(link), ConfigError);
  link.flows[0] = {5.0, 6.0, 0.0};  // no demand
  CHECK_THROWS_AS(netcas::validate_link(link), ConfigError);
  link.flows[0] = {5.0, 6.0, 100.0};
  CHECK_NOTHROW(netcas::validate_link(link));
}

TEST_CASE("device throughput applies both scaling curves") {
  DeviceModel dev;
  dev.name = "cache";
  dev.base_iops = 300000.0;
  dev.scaling = netcas::PiecewiseCurve({{1.0, 0.1}, {8.0, 0.5}, {32.0, 0.9}, {64.0, 1.0}});
  // At 16*4 = 64 outstanding the concurrency multiplier is exactly 1.
  CHECK(netcas::device_throughput(dev, WorkloadKey{65536, 16, 4}) == 300000.0);
  // At 8 outstanding it is exactly 0.5.
  CHECK(netcas::device_throughput(dev, WorkloadKey{65536, 8, 1}) == 150000.0);
  // Block-size curve multiplies in.
  dev.block_scaling = netcas::PiecewiseCurve({{4096.0, 1.0}, {1048576.0, 0.25}});
  CHECK(netcas::device_throughput(dev, WorkloadKey{1048576, 16, 4}) == 75000.0);
}

TEST_CASE("device throughput validates the workload key") {
  DeviceModel dev;
  dev.name = "d";
  dev.base_iops = 1000.0;
  CHECK_THROWS_AS(netcas::device_throughput(dev, WorkloadKey{65537, 1, 1}), ConfigError);
  CHECK_THROWS_AS(netcas::device_throughput(dev, WorkloadKey{2048, 1, 1}), ConfigError);
  CHECK_THROWS_AS(netcas::device_throughput(dev, WorkloadKey{65536, 0, 1}), ConfigError);
  CHECK_THROWS_AS(netcas::device_throughput(dev, WorkloadKey{65536, 1, 0}), ConfigError);
}

TEST_CASE("device validation") {
  DeviceModel dev;
  dev.name = "d";
  dev.base_iops = 0.0;
  CHECK_THROWS_AS(netcas::validate_device(dev), ConfigError);
  dev.base_iops = 100.0;
  dev.base_latency_s = -1.0;
  CHECK_THROWS_AS(netcas::validate_device(dev), ConfigError);
  dev.base_latency_s = 0.0;
  dev.service_jitter_cv = -0.1;
  CHECK_THROWS_AS(netcas::validate_device(dev), ConfigError);
  dev.service_jitter_cv = 0.0;
  CHECK_NOTHROW(netcas::validate_device(dev));
}
