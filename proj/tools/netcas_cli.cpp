#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netcas/error.hpp"
#include "netcas/report.hpp"
#include "netcas/runner.hpp"

namespace {

std::optional<netcas::BwrrGuard> parse_guard(const std::string& g) {
  if (g.empty()) return std::nullopt;
  return g == "gt" ? netcas::BwrrGuard::Greater : netcas::BwrrGuard::GreaterEqual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network-aware cache/backend I/O splitting experiments"};
  app.require_subcommand(1);

  std::string scenario_path, profile_path, run_dir;
  std::string out_dir = "out";
  std::string guard;
  std::optional<std::uint64_t> seed;
  double per_point_s = 2.0;
  int steps = 20;
  bool strict = false, records = false, trace = false;

  auto add_common = [&](CLI::App* cmd, bool with_scenario) {
    if (with_scenario) {
      cmd->add_option("--scenario", scenario_path, "scenario JSON")->required();
      cmd->add_flag("--strict", strict, "reject unknown scenario fields and profile fallbacks");
    }
    cmd->add_option("--out", out_dir, "output directory");
  };

  CLI::App* c_profile = app.add_subcommand("profile", "measure the standalone throughput grid");
  add_common(c_profile, true);
  c_profile->add_option("--per-point-s", per_point_s,
                        "simulated seconds per device per grid point");
  c_profile->add_option("--seed", seed, "RNG seed override");

  CLI::App* c_run = app.add_subcommand("run", "run every policy/workload/seed combination");
  add_common(c_run, true);
  c_run->add_option("--profile", profile_path, "profile JSON from the profile step");
  c_run->add_option("--seed", seed, "run only this seed");
  c_run->add_option("--bwrr-guard", guard, "pattern guard: ge (default) or gt")
      ->check(CLI::IsMember({"ge", "gt"}));
  c_run->add_flag("--records", records, "also write per-request completion CSVs");
  c_run->add_flag("--dispatch-trace", trace, "also write per-decision dispatch CSVs");

  CLI::App* c_sweep = app.add_subcommand("sweep-ratio", "static-split throughput vs ratio");
  add_common(c_sweep, true);
  c_sweep->add_option("--profile", profile_path, "profile JSON from the profile step")
      ->required();
  c_sweep->add_option("--steps", steps, "ratio grid resolution (>= 11)");
  c_sweep->add_option("--seed", seed, "run only this seed");
  c_sweep->add_option("--bwrr-guard", guard, "pattern guard: ge (default) or gt")
      ->check(CLI::IsMember({"ge", "gt"}));

  CLI::App* c_report = app.add_subcommand("report", "aggregate run CSVs into tables and charts");
  c_report->add_option("--run-dir", run_dir, "directory holding run__*.csv files")->required();
  c_report->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);

    if (c_profile->parsed()) {
      netcas::Scenario sc = netcas::load_scenario(scenario_path, strict);
      netcas::PerfProfile prof = netcas::cmd_profile(sc, out_dir, per_point_s, seed);
      std::printf("measured %zu grid points, simulated build cost %.3f s\n", prof.size(),
                  netcas::total_build_cost_s(prof));
      std::printf("wrote %s\n", (std::filesystem::path(out_dir) / "profile.json").c_str());
      std::printf("wrote %s\n", (std::filesystem::path(out_dir) / "break_even.csv").c_str());
    } else if (c_run->parsed() || c_sweep->parsed()) {
      netcas::Scenario sc = netcas::load_scenario(scenario_path, strict);
      std::optional<netcas::PerfProfile> prof;
      if (!profile_path.empty()) prof = netcas::load_profile(profile_path);

      netcas::RunOptions opts;
      opts.strict = strict;
      opts.guard_override = parse_guard(guard);
      opts.seed_override = seed;
      opts.write_records = records;
      opts.write_dispatch_trace = trace;

      const auto paths = c_run->parsed()
                             ? netcas::cmd_run(sc, prof ? &*prof : nullptr, out_dir, opts)
                             : netcas::cmd_sweep_ratio(sc, prof ? &*prof : nullptr, steps,
                                                       out_dir, opts);
      for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
    } else if (c_report->parsed()) {
      netcas::cmd_report(run_dir, out_dir);
      std::printf("wrote %s\n", (std::filesystem::path(out_dir) / "aggregate.csv").c_str());
      std::printf("charts in %s\n", out_dir.c_str());
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const netcas::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
