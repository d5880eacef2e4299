#include "netcas/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "netcas/error.hpp"

namespace netcas {

namespace {

using nlohmann::json;

// In strict mode any key outside `allowed` is an error; otherwise unknown
// keys are ignored (forward compatibility for tooling-added fields).
void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context, bool strict) {
  if (!strict || !obj.is_object()) return;
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigError("unknown field '" + key + "' in " + context);
    }
  }
}

PiecewiseCurve parse_curve(const json& j, const std::string& context) {
  std::vector<PiecewiseCurve::Knot> knots;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) {
      throw ParseError(context + ": curve knots must be [x, y] pairs");
    }
    knots.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return PiecewiseCurve(std::move(knots));
}

DeviceModel parse_device(const json& j, const std::string& context, bool strict) {
  check_keys(j, {"name", "base_iops", "scaling", "block_scaling", "base_latency_s",
                 "service_jitter_cv"},
             context, strict);
  DeviceModel dev;
  dev.name = j.value("name", context);
  dev.base_iops = j.at("base_iops").get<double>();
  if (j.contains("scaling")) dev.scaling = parse_curve(j.at("scaling"), context);
  if (j.contains("block_scaling")) dev.block_scaling = parse_curve(j.at("block_scaling"), context);
  dev.base_latency_s = j.value("base_latency_s", 0.0);
  dev.service_jitter_cv = j.value("service_jitter_cv", 0.0);
  validate_device(dev);
  return dev;
}

PolicySpec parse_policy(const json& j, bool strict) {
  std::string type;
  PolicySpec spec;
  if (j.is_string()) {
    type = j.get<std::string>();
  } else {
    check_keys(j, {"type", "rho"}, "policy", strict);
    type = j.at("type").get<std::string>();
  }

  if (type == "cache_only") {
    spec.kind = PolicyKind::CacheOnly;
    spec.rho = 1.0;
  } else if (type == "backend_only") {
    spec.kind = PolicyKind::BackendOnly;
    spec.rho = 0.0;
  } else if (type == "static_split" || type == "random_split") {
    spec.kind = type == "static_split" ? PolicyKind::StaticSplit : PolicyKind::RandomSplit;
    if (!j.is_object() || !j.contains("rho")) {
      throw ConfigError(type + " policy needs a rho (number or \"base\")");
    }
    const auto& r = j.at("rho");
    if (r.is_string()) {
      if (r.get<std::string>() != "base") {
        throw ConfigError("policy rho must be a number or \"base\"");
      }
      spec.rho_is_base = true;
    } else {
      spec.rho = r.get<double>();
    }
  } else if (type == "netcas") {
    spec.kind = PolicyKind::NetCas;
  } else if (type == "netcas_no_table") {
    spec.kind = PolicyKind::NetCas;
    spec.no_table = true;
  } else {
    throw ConfigError("unknown policy type '" + type + "'");
  }
  validate_policy_spec(spec);
  return spec;
}

}  // namespace

std::string policy_label(const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicyKind::CacheOnly: return "cache_only";
    case PolicyKind::BackendOnly: return "backend_only";
    case PolicyKind::StaticSplit:
    case PolicyKind::RandomSplit: {
      std::string base = spec.kind == PolicyKind::StaticSplit ? "static_split" : "random_split";
      if (spec.rho_is_base) return base + "_base";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "_r%.3f", spec.rho);
      for (char& c : buf) {
        if (c == '.') c = 'p';  // keep file names dot-free before the extension
      }
      return base + buf;
    }
    case PolicyKind::NetCas: return spec.no_table ? "netcas_no_table" : "netcas";
  }
  return "?";
}

Scenario scenario_from_json(const std::string& text, bool strict) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario document: ") + e.what());
  }

  try {
    if (!doc.contains("schema") || doc.at("schema").get<std::string>() != kScenarioSchema) {
      throw ConfigError(std::string("scenario schema must be \"") + kScenarioSchema + "\"");
    }
    check_keys(doc,
               {"schema", "name", "devices", "link", "congestion_schedule", "workloads",
                "policies", "duration_s", "epoch_s", "seeds", "profile_grid", "netcas", "bwrr",
                "contention_sweep"},
               "scenario", strict);

    Scenario sc;
    sc.name = doc.value("name", "scenario");

    const auto& devs = doc.at("devices");
    check_keys(devs, {"cache", "backend"}, "devices", strict);
    sc.cache = parse_device(devs.at("cache"), "cache", strict);
    sc.backend = parse_device(devs.at("backend"), "backend", strict);

    const auto& link = doc.at("link");
    check_keys(link, {"capacity_bytes_per_s", "base_rtt_s"}, "link", strict);
    sc.link.capacity_bytes_per_s = link.at("capacity_bytes_per_s").get<double>();
    sc.link.base_rtt_s = link.value("base_rtt_s", 0.0);

    if (doc.contains("congestion_schedule")) {
      for (const auto& jf : doc.at("congestion_schedule")) {
        check_keys(jf, {"start_s", "end_s", "demand_bytes_per_s", "count"},
                   "congestion_schedule entry", strict);
        CompetingFlow f;
        f.start_s = jf.at("start_s").get<double>();
        f.end_s = jf.at("end_s").get<double>();
        f.demand_bytes_per_s = jf.at("demand_bytes_per_s").get<double>();
        int count = jf.value("count", 1);
        if (count < 1) throw ConfigError("congestion_schedule count must be >= 1");
        for (int i = 0; i < count; ++i) sc.link.flows.push_back(f);
      }
    }
    validate_link(sc.link);

    for (const auto& jw : doc.at("workloads")) {
      check_keys(jw, {"block_size", "inflight", "threads"}, "workload", strict);
      WorkloadKey key{jw.at("block_size").get<std::uint64_t>(),
                      jw.at("inflight").get<std::uint32_t>(),
                      jw.at("threads").get<std::uint32_t>()};
      validate_key(key);
      sc.workloads.push_back(key);
    }
    if (sc.workloads.empty()) throw ConfigError("scenario needs at least one workload");

    for (const auto& jp : doc.at("policies")) sc.policies.push_back(parse_policy(jp, strict));
    if (sc.policies.empty()) throw ConfigError("scenario needs at least one policy");

    sc.duration_s = doc.value("duration_s", 10.0);
    sc.epoch_s = doc.value("epoch_s", 0.1);
    if (sc.duration_s <= sc.epoch_s) {
      throw ConfigError("duration_s must exceed the warm-up epoch (epoch_s)");
    }

    if (doc.contains("seeds")) {
      sc.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
      if (sc.seeds.empty()) throw ConfigError("seeds must be non-empty");
    }

    if (doc.contains("profile_grid")) {
      const auto& g = doc.at("profile_grid");
      check_keys(g, {"block_sizes", "inflights", "threads"}, "profile_grid", strict);
      sc.profile_grid.block_sizes = g.at("block_sizes").get<std::vector<std::uint64_t>>();
      sc.profile_grid.inflights = g.at("inflights").get<std::vector<std::uint32_t>>();
      sc.profile_grid.threads = g.at("threads").get<std::vector<std::uint32_t>>();
    } else {
      // Default grid: the axes the workload list spans.
      std::set<std::uint64_t> bs;
      std::set<std::uint32_t> ifl, th;
      for (const auto& w : sc.workloads) {
        bs.insert(w.block_size);
        ifl.insert(w.inflight);
        th.insert(w.threads);
      }
      sc.profile_grid.block_sizes.assign(bs.begin(), bs.end());
      sc.profile_grid.inflights.assign(ifl.begin(), ifl.end());
      sc.profile_grid.threads.assign(th.begin(), th.end());
    }
    validate_grid(sc.profile_grid);

    if (doc.contains("netcas")) {
      const auto& n = doc.at("netcas");
      check_keys(n,
                 {"enter_permil", "exit_permil", "recalc_every_epochs", "window_len",
                  "max_cache_share", "beta_b", "beta_l", "baseline_decay"},
                 "netcas", strict);
      sc.netcas.mode.enter_permil = n.value("enter_permil", sc.netcas.mode.enter_permil);
      sc.netcas.mode.exit_permil = n.value("exit_permil", sc.netcas.mode.exit_permil);
      sc.netcas.mode.recalc_every_epochs =
          n.value("recalc_every_epochs", sc.netcas.mode.recalc_every_epochs);
      sc.netcas.mode.max_cache_share = n.value("max_cache_share", sc.netcas.mode.max_cache_share);
      sc.netcas.window_len = n.value("window_len", sc.netcas.window_len);
      sc.netcas.detector.beta_b = n.value("beta_b", sc.netcas.detector.beta_b);
      sc.netcas.detector.beta_l = n.value("beta_l", sc.netcas.detector.beta_l);
      sc.netcas.detector.baseline_decay =
          n.value("baseline_decay", sc.netcas.detector.baseline_decay);
    }
    validate_mode_config(sc.netcas.mode);

    if (doc.contains("bwrr")) {
      const auto& b = doc.at("bwrr");
      check_keys(b, {"window", "batch", "guard"}, "bwrr", strict);
      sc.netcas.bwrr.window_size = b.value("window", sc.netcas.bwrr.window_size);
      sc.netcas.bwrr.batch_size = b.value("batch", sc.netcas.bwrr.batch_size);
      if (b.contains("guard")) {
        std::string g = b.at("guard").get<std::string>();
        if (g == "ge") {
          sc.netcas.bwrr.guard = BwrrGuard::GreaterEqual;
        } else if (g == "gt") {
          sc.netcas.bwrr.guard = BwrrGuard::Greater;
        } else {
          throw ConfigError("bwrr guard must be \"ge\" or \"gt\"");
        }
      }
    }
    validate_bwrr_config(sc.netcas.bwrr);

    if (doc.contains("contention_sweep")) {
      const auto& cs = doc.at("contention_sweep");
      check_keys(cs, {"counts", "demand_bytes_per_s", "start_s", "end_s"}, "contention_sweep",
                 strict);
      ContentionSweep sweep;
      sweep.counts = cs.at("counts").get<std::vector<int>>();
      sweep.demand_bytes_per_s = cs.at("demand_bytes_per_s").get<double>();
      sweep.start_s = cs.at("start_s").get<double>();
      sweep.end_s = cs.at("end_s").get<double>();
      if (sweep.counts.empty()) throw ConfigError("contention_sweep counts must be non-empty");
      for (int c : sweep.counts) {
        if (c < 0) throw ConfigError("contention_sweep counts must be >= 0");
      }
      if (sweep.end_s <= sweep.start_s || sweep.demand_bytes_per_s <= 0.0) {
        throw ConfigError("contention_sweep needs end_s > start_s and positive demand");
      }
      sc.contention_sweep = sweep;
    }

    return sc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario document: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return scenario_from_json(text, strict);
}

}  // namespace netcas
