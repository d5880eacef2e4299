#include "netcas/detector.hpp"

#include <algorithm>
#include <cmath>

#include "netcas/error.hpp"

namespace netcas {

Detector::Detector(DetectorConfig cfg) : cfg_(cfg) {
  if (cfg.beta_b < 0.0 || cfg.beta_l < 0.0) {
    throw ConfigError("detector weights must be >= 0");
  }
  if (cfg.baseline_decay < 0.0 || cfg.baseline_decay >= 1.0) {
    throw ConfigError("baseline_decay must be in [0, 1)");
  }
}

void Detector::update_baselines(const ThroughputSample& s) {
  if (s.empty()) throw StateError("empty samples must not reach the detector");
  if (!initialized_) {
    b_bar_ = s.bytes_per_s;
    l_bar_ = s.mean_latency_s;
    initialized_ = true;
    return;
  }
  if (cfg_.baseline_decay > 0.0) {
    // Optional forgetting: relax each baseline toward the current sample so
    // a drifting steady state is eventually re-learned. Off by default.
    b_bar_ += cfg_.baseline_decay * (s.bytes_per_s - b_bar_);
    l_bar_ += cfg_.baseline_decay * (s.mean_latency_s - l_bar_);
  }
  b_bar_ = std::max(b_bar_, s.bytes_per_s);
  l_bar_ = std::min(l_bar_, s.mean_latency_s);
}

int Detector::drop_permil(const ThroughputSample& s) {
  if (!initialized_) throw StateError("detector baselines are uninitialized");
  if (s.empty()) throw StateError("empty samples must not reach the detector");
  double delta_b = (b_bar_ - s.bytes_per_s) / b_bar_;
  double delta_l = (s.mean_latency_s - l_bar_) / l_bar_;
  long raw = std::llround(1000.0 * (cfg_.beta_b * delta_b + cfg_.beta_l * delta_l));
  last_drop_ = static_cast<int>(std::clamp(raw, 0l, 1000l));
  return last_drop_;
}

int Detector::observe(const ThroughputSample& s) {
  update_baselines(s);
  return drop_permil(s);
}

}  // namespace netcas
