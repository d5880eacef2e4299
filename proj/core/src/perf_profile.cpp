#include "netcas/perf_profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "netcas/error.hpp"
#include "netcas/policies.hpp"
#include "netcas/rng.hpp"
#include "netcas/sim.hpp"

namespace netcas {

void validate_grid(const ProfileGrid& grid) {
  if (grid.block_sizes.empty() || grid.inflights.empty() || grid.threads.empty()) {
    throw ConfigError("profile grid axes must be non-empty");
  }
  auto sorted_unique = [](const auto& v) {
    return std::is_sorted(v.begin(), v.end()) &&
           std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!sorted_unique(grid.block_sizes) || !sorted_unique(grid.inflights) ||
      !sorted_unique(grid.threads)) {
    throw ConfigError("profile grid axes must be sorted and unique");
  }
  for (auto bs : grid.block_sizes) {
    if (!is_valid_block_size(bs)) {
      throw ConfigError("grid block size " + std::to_string(bs) + " outside supported domain");
    }
  }
  for (auto v : grid.inflights) {
    if (v < 1) throw ConfigError("grid inflight values must be >= 1");
  }
  for (auto v : grid.threads) {
    if (v < 1) throw ConfigError("grid thread values must be >= 1");
  }
}

namespace {

bool on_grid(const ProfileGrid& g, const WorkloadKey& k) {
  auto has = [](const auto& v, auto x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  return has(g.block_sizes, k.block_size) && has(g.inflights, k.inflight) &&
         has(g.threads, k.threads);
}

}  // namespace

PerfProfile::PerfProfile(ProfileGrid grid, std::map<WorkloadKey, ProfileEntry> entries)
    : grid_(std::move(grid)), entries_(std::move(entries)) {
  validate_grid(grid_);
  for (const auto& [key, entry] : entries_) {
    if (!on_grid(grid_, key)) {
      throw ProfileError("profile entry " + key_label(key) + " is off the declared grid");
    }
    if (entry.i_cache <= 0.0 || entry.i_back <= 0.0) {
      throw ProfileError("profile entry " + key_label(key) + " has non-positive throughput");
    }
  }
}

PerfProfile::Lookup PerfProfile::lookup(const WorkloadKey& key) const {
  if (entries_.empty()) throw ProfileError("profile is empty (no table)");
  validate_key(key);
  if (auto it = entries_.find(key); it != entries_.end()) {
    return {it->second.i_cache, it->second.i_back, true, key};
  }

  // Nearest neighbor under normalized L1 over (log2 block, inflight, threads).
  // A degenerate axis (single grid value) contributes nothing. Iterating the
  // ordered map with a strict '<' keeps ties on the smaller key.
  auto axis_range = [](double lo, double hi) { return hi > lo ? hi - lo : 0.0; };
  double bs_lo = std::log2(static_cast<double>(grid_.block_sizes.front()));
  double bs_hi = std::log2(static_cast<double>(grid_.block_sizes.back()));
  double r_bs = axis_range(bs_lo, bs_hi);
  double r_if = axis_range(grid_.inflights.front(), grid_.inflights.back());
  double r_th = axis_range(grid_.threads.front(), grid_.threads.back());

  auto dist = [&](const WorkloadKey& a, const WorkloadKey& b) {
    double d = 0.0;
    if (r_bs > 0.0) {
      d += std::abs(std::log2(static_cast<double>(a.block_size)) -
                    std::log2(static_cast<double>(b.block_size))) / r_bs;
    }
    if (r_if > 0.0) {
      d += std::abs(static_cast<double>(a.inflight) - static_cast<double>(b.inflight)) / r_if;
    }
    if (r_th > 0.0) {
      d += std::abs(static_cast<double>(a.threads) - static_cast<double>(b.threads)) / r_th;
    }
    return d;
  };

  const std::pair<const WorkloadKey, ProfileEntry>* best = nullptr;
  double best_d = 0.0;
  for (const auto& kv : entries_) {
    double d = dist(kv.first, key);
    if (!best || d < best_d) {
      best = &kv;
      best_d = d;
    }
  }
  return {best->second.i_cache, best->second.i_back, false, best->first};
}

PerfProfile build_profile(const ProfileGrid& grid, const DeviceModel& cache,
                          const DeviceModel& backend, const LinkModel& link,
                          double per_point_s, std::uint64_t seed) {
  validate_grid(grid);
  validate_device(cache);
  validate_device(backend);
  validate_link(link);
  if (per_point_s <= 0.0) throw ConfigError("per_point_s must be positive");

  LinkModel quiet_link = link;
  quiet_link.flows.clear();  // profiling assumes an uncongested path

  std::map<WorkloadKey, ProfileEntry> entries;
  std::size_t point = 0;
  for (auto bs : grid.block_sizes) {
    for (auto inflight : grid.inflights) {
      for (auto threads : grid.threads) {
        WorkloadKey key{bs, inflight, threads};
        SimConfig cfg;
        cfg.workload = key;
        cfg.duration_s = per_point_s;
        cfg.epoch_s = per_point_s / 4.0;

        auto measure = [&](PolicyKind kind, std::uint64_t stream) {
          cfg.policy = {kind, kind == PolicyKind::CacheOnly ? 1.0 : 0.0, false};
          cfg.rng_seed = derive_seed(seed, point * 2 + stream);
          CacheOnlyPolicy cache_only;
          BackendOnlyPolicy backend_only;
          DispatchPolicy& pol = kind == PolicyKind::CacheOnly
                                    ? static_cast<DispatchPolicy&>(cache_only)
                                    : static_cast<DispatchPolicy&>(backend_only);
          SimResult r = run_simulation(cfg, cache, backend, quiet_link, pol);
          std::uint64_t n = kind == PolicyKind::CacheOnly ? r.totals.cache_completions
                                                          : r.totals.backend_completions;
          double t_last = kind == PolicyKind::CacheOnly ? r.totals.last_cache_complete_s
                                                        : r.totals.last_backend_complete_s;
          if (n == 0 || t_last <= 0.0) {
            throw ProfileError("profile point " + key_label(key) + " measured zero throughput");
          }
          return static_cast<double>(n) / t_last;
        };

        ProfileEntry e;
        e.i_cache = measure(PolicyKind::CacheOnly, 0);
        e.i_back = measure(PolicyKind::BackendOnly, 1);
        e.measured_s = per_point_s;
        entries.emplace(key, e);
        ++point;
      }
    }
  }
  return PerfProfile(grid, std::move(entries));
}

double total_build_cost_s(const PerfProfile& profile) {
  double total = 0.0;
  for (const auto& [key, e] : profile.entries()) total += 2.0 * e.measured_s;
  return total;
}

std::string profile_to_json(const PerfProfile& profile) {
  nlohmann::ordered_json doc;
  doc["version"] = kProfileVersion;
  doc["grid"] = {{"block_sizes", profile.grid().block_sizes},
                 {"inflights", profile.grid().inflights},
                 {"threads", profile.grid().threads}};
  auto& entries = doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, e] : profile.entries()) {
    entries.push_back({{"block_size", key.block_size},
                       {"inflight", key.inflight},
                       {"threads", key.threads},
                       {"i_cache", e.i_cache},
                       {"i_back", e.i_back},
                       {"measured_s", e.measured_s}});
  }
  return doc.dump(2) + "\n";
}

PerfProfile profile_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed profile document: ") + e.what());
  }
  try {
    if (!doc.contains("version")) throw ProfileError("profile document has no version field");
    if (doc.at("version").get<int>() != kProfileVersion) {
      throw ProfileError("unsupported profile version " + doc.at("version").dump());
    }
    ProfileGrid grid;
    const auto& g = doc.at("grid");
    grid.block_sizes = g.at("block_sizes").get<std::vector<std::uint64_t>>();
    grid.inflights = g.at("inflights").get<std::vector<std::uint32_t>>();
    grid.threads = g.at("threads").get<std::vector<std::uint32_t>>();

    std::map<WorkloadKey, ProfileEntry> entries;
    for (const auto& je : doc.at("entries")) {
      WorkloadKey key{je.at("block_size").get<std::uint64_t>(),
                      je.at("inflight").get<std::uint32_t>(),
                      je.at("threads").get<std::uint32_t>()};
      ProfileEntry e{je.at("i_cache").get<double>(), je.at("i_back").get<double>(),
                     je.at("measured_s").get<double>()};
      if (!entries.emplace(key, e).second) {
        throw ProfileError("duplicate profile entry " + key_label(key));
      }
    }
    return PerfProfile(std::move(grid), std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed profile document: ") + e.what());
  }
}

void save_profile(const PerfProfile& profile, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << profile_to_json(profile);
    if (!out.flush()) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("failed to move " + tmp.string() + " into place: " + ec.message());
}

PerfProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open profile " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return profile_from_json(text);
}

}  // namespace netcas
