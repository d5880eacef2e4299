#include "netcas/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "netcas/csv.hpp"
#include "netcas/error.hpp"

namespace netcas {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

struct RunInfo {
  std::string run;       // file stem without the run__ prefix
  std::string policy;
  std::string workload;
  std::uint64_t seed = 0;
  int level = -1;        // contention level, -1 when the run had no __f suffix
  double mean_iops = 0.0;
  double mean_cache = 0.0;
  double mean_backend = 0.0;
  double mean_latency = 0.0;
  double mean_rho = 0.0;
  std::vector<double> t;
  std::vector<double> iops;
};

std::vector<std::string> split2(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t at = s.find("__", start);
    if (at == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 2;
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct Series {
  std::string label;
  const char* color;
  const std::vector<double>* x;
  const std::vector<double>* y;
};

void write_timeline_svg(const std::filesystem::path& path, const std::string& title,
                        const std::vector<Series>& series) {
  const double x0 = 70, x1 = 640, y0 = 40, y1 = 380;
  double max_x = 1e-9, max_y = 1e-9;
  for (const auto& s : series) {
    for (double v : *s.x) max_x = std::max(max_x, v);
    for (double v : *s.y) max_y = std::max(max_y, v);
  }
  max_y *= 1.05;

  auto px = [&](double t) { return x0 + (t / max_x) * (x1 - x0); };
  auto py = [&](double v) { return y1 - (v / max_y) * (y1 - y0); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"430\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"880\" height=\"430\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"14\">" + title + "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double vy = max_y * i / 5, gy = py(vy);
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(gy) + "\" x2=\"" + num(x1) + "\" y2=\"" +
           num(gy) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(gy + 4) +
           "\" text-anchor=\"end\">" + tick_label(vy) + "</text>\n";
    const double vx = max_x * i / 5, gx = px(vx);
    svg += "<line x1=\"" + num(gx) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(gx) + "\" y2=\"" +
           num(y1 + 5) + "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + num(gx) + "\" y=\"" + num(y1 + 20) +
           "\" text-anchor=\"middle\">" + tick_label(vx) + "</text>\n";
  }
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" +
         num(y1) + "\" stroke=\"#333333\"/>\n";
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x1) + "\" y2=\"" +
         num(y1) + "\" stroke=\"#333333\"/>\n";
  svg += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(y1 + 38) +
         "\" text-anchor=\"middle\">time (s)</text>\n";
  svg += "<text x=\"16\" y=\"" + num((y0 + y1) / 2) + "\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 " + num((y0 + y1) / 2) + ")\">requests/s</text>\n";

  double ly = y0;
  for (const auto& s : series) {
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(s.color) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x->size(); ++i) {
      if (i) svg += ' ';
      svg += num(px((*s.x)[i])) + "," + num(py((*s.y)[i]));
    }
    svg += "\"/>\n";
    svg += "<line x1=\"" + num(x1 + 14) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(x1 + 34) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(x1 + 40) + "\" y=\"" + num(ly + 4) + "\">" + s.label +
           "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  write_text_atomic(path, svg);
}

void write_bar_svg(const std::filesystem::path& path, const std::string& title,
                   const std::vector<std::string>& groups,
                   const std::vector<std::string>& bars,
                   const std::vector<std::vector<double>>& values) {
  const double x0 = 70, x1 = 640, y0 = 40, y1 = 380;
  double max_y = 1e-9;
  for (const auto& g : values) {
    for (double v : g) max_y = std::max(max_y, v);
  }
  max_y *= 1.1;
  auto py = [&](double v) { return y1 - (v / max_y) * (y1 - y0); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"430\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"880\" height=\"430\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"14\">" + title + "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double vy = max_y * i / 5, gy = py(vy);
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(gy) + "\" x2=\"" + num(x1) + "\" y2=\"" +
           num(gy) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(gy + 4) +
           "\" text-anchor=\"end\">" + tick_label(vy) + "</text>\n";
  }
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" +
         num(y1) + "\" stroke=\"#333333\"/>\n";
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x1) + "\" y2=\"" +
         num(y1) + "\" stroke=\"#333333\"/>\n";
  svg += "<text x=\"16\" y=\"" + num((y0 + y1) / 2) + "\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 " + num((y0 + y1) / 2) + ")\">mean requests/s</text>\n";

  const double group_w = (x1 - x0) / groups.size();
  const double bar_w = group_w / (bars.size() + 1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double gx = x0 + group_w * g;
    for (std::size_t b = 0; b < bars.size(); ++b) {
      const double v = values[g][b];
      if (v <= 0.0) continue;
      svg += "<rect x=\"" + num(gx + bar_w * (b + 0.5)) + "\" y=\"" + num(py(v)) +
             "\" width=\"" + num(bar_w * 0.9) + "\" height=\"" + num(y1 - py(v)) +
             "\" fill=\"" + kPalette[b % kPaletteSize] + "\"/>\n";
    }
    svg += "<text x=\"" + num(gx + group_w / 2) + "\" y=\"" + num(y1 + 20) +
           "\" text-anchor=\"middle\">" + groups[g] + "</text>\n";
  }
  double ly = y0;
  for (std::size_t b = 0; b < bars.size(); ++b) {
    svg += "<rect x=\"" + num(x1 + 14) + "\" y=\"" + num(ly - 8) +
           "\" width=\"20\" height=\"10\" fill=\"" + kPalette[b % kPaletteSize] + "\"/>\n";
    svg += "<text x=\"" + num(x1 + 40) + "\" y=\"" + num(ly + 2) + "\">" + bars[b] +
           "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  write_text_atomic(path, svg);
}

}  // namespace

void cmd_report(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir) {
  if (!std::filesystem::is_directory(run_dir)) {
    throw ConfigError("run directory " + run_dir.string() + " does not exist");
  }

  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(run_dir)) {
    if (!e.is_regular_file()) continue;
    const std::string name = e.path().filename().string();
    if (name.rfind("run__", 0) != 0 || e.path().extension() != ".csv") continue;
    if (name.size() > 13 && name.compare(name.size() - 13, 13, "_splitter.csv") == 0) continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw ConfigError("no run CSVs (run__*.csv) in " + run_dir.string());
  }

  std::vector<RunInfo> runs;
  for (const auto& path : files) {
    const std::string stem = path.stem().string().substr(5);
    auto parts = split2(stem);
    if (parts.size() < 3 || parts.size() > 4 || parts[2].size() < 2 || parts[2][0] != 's') {
      throw ParseError("unrecognized run file name " + path.filename().string());
    }
    RunInfo info;
    info.run = stem;
    info.policy = parts[0];
    info.workload = parts[1];
    info.seed = std::strtoull(parts[2].c_str() + 1, nullptr, 10);
    if (parts.size() == 4) {
      if (parts[3].size() < 2 || parts[3][0] != 'f') {
        throw ParseError("unrecognized run file name " + path.filename().string());
      }
      info.level = std::atoi(parts[3].c_str() + 1);
    }

    CsvTable table = read_csv(path);
    const std::size_t ct = table.col("t"), ci = table.col("iops_total");
    const std::size_t cc = table.col("iops_cache"), cb = table.col("iops_backend");
    const std::size_t cl = table.col("mean_latency_s"), cr = table.col("rho");
    if (table.rows.empty()) throw ParseError("run CSV " + path.string() + " has no data rows");
    for (const auto& row : table.rows) {
      info.t.push_back(csv_double(row[ct]));
      info.iops.push_back(csv_double(row[ci]));
      info.mean_iops += csv_double(row[ci]);
      info.mean_cache += csv_double(row[cc]);
      info.mean_backend += csv_double(row[cb]);
      info.mean_latency += csv_double(row[cl]);
      info.mean_rho += csv_double(row[cr]);
    }
    const double n = static_cast<double>(table.rows.size());
    info.mean_iops /= n;
    info.mean_cache /= n;
    info.mean_backend /= n;
    info.mean_latency /= n;
    info.mean_rho /= n;
    runs.push_back(std::move(info));
  }

  std::sort(runs.begin(), runs.end(), [](const RunInfo& a, const RunInfo& b) {
    return std::tie(a.workload, a.policy, a.level, a.seed) <
           std::tie(b.workload, b.policy, b.level, b.seed);
  });

  std::filesystem::create_directories(out_dir);
  CsvWriter agg(out_dir / "aggregate.csv",
                {"run", "policy", "workload", "seed", "level", "mean_iops_total",
                 "mean_iops_cache", "mean_iops_backend", "mean_latency_s", "mean_rho"});
  for (const auto& r : runs) {
    agg.row({r.run, r.policy, r.workload, std::to_string(r.seed), std::to_string(r.level),
             fmt_double(r.mean_iops), fmt_double(r.mean_cache), fmt_double(r.mean_backend),
             fmt_double(r.mean_latency), fmt_double(r.mean_rho)});
  }
  agg.commit();

  std::set<std::string> workloads;
  for (const auto& r : runs) workloads.insert(r.workload);
  for (const auto& w : workloads) {
    std::vector<Series> series;
    std::size_t color = 0;
    for (const auto& r : runs) {
      if (r.workload != w) continue;
      std::string label = r.policy + "_s" + std::to_string(r.seed);
      if (r.level >= 0) label += "_f" + std::to_string(r.level);
      series.push_back({label, kPalette[color++ % kPaletteSize], &r.t, &r.iops});
    }
    write_timeline_svg(out_dir / ("timeline_" + w + ".svg"), "throughput over time: " + w,
                       series);
  }

  // Grouped bars: one group per workload, one bar per policy(+level), mean
  // of the per-run means across seeds.
  std::set<std::string> bar_names;
  for (const auto& r : runs) {
    bar_names.insert(r.level >= 0 ? r.policy + "_f" + std::to_string(r.level) : r.policy);
  }
  std::vector<std::string> groups(workloads.begin(), workloads.end());
  std::vector<std::string> bars(bar_names.begin(), bar_names.end());
  std::vector<std::vector<double>> values(groups.size(), std::vector<double>(bars.size(), 0.0));
  std::vector<std::vector<int>> counts(groups.size(), std::vector<int>(bars.size(), 0));
  for (const auto& r : runs) {
    const std::string bar =
        r.level >= 0 ? r.policy + "_f" + std::to_string(r.level) : r.policy;
    const auto g = static_cast<std::size_t>(
        std::find(groups.begin(), groups.end(), r.workload) - groups.begin());
    const auto b =
        static_cast<std::size_t>(std::find(bars.begin(), bars.end(), bar) - bars.begin());
    values[g][b] += r.mean_iops;
    counts[g][b] += 1;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t b = 0; b < bars.size(); ++b) {
      if (counts[g][b]) values[g][b] /= counts[g][b];
    }
  }
  write_bar_svg(out_dir / "policy_bars.svg", "mean throughput by policy", groups, bars, values);
}

}  // namespace netcas
