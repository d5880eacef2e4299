#pragma once

#include "netcas/monitor.hpp"

namespace netcas {

struct DetectorConfig {
  double beta_b = 0.5;          // weight of the throughput drop term
  double beta_l = 0.5;          // weight of the latency inflation term
  double baseline_decay = 0.0;  // 0 = baselines never forget (default)
};

// Scores congestion per epoch in permil (0..1000) against the best conditions
// seen so far: baseline throughput = max observed, baseline latency = min
// observed. Empty samples must not be fed in.
class Detector {
 public:
  explicit Detector(DetectorConfig cfg = {});

  // Fold a sample into the baselines. With baseline_decay > 0 the baselines
  // relax toward the current sample by that fraction first.
  void update_baselines(const ThroughputSample& s);

  // Weighted relative degradation vs the baselines, rounded to permil and
  // clamped to [0, 1000]; stored as last_drop_permil. Throws StateError if no
  // baseline sample has been seen yet.
  int drop_permil(const ThroughputSample& s);

  // update_baselines + drop_permil in the order the control loop uses.
  int observe(const ThroughputSample& s);

  bool initialized() const { return initialized_; }
  int last_drop_permil() const { return last_drop_; }
  double throughput_baseline() const { return b_bar_; }
  double latency_baseline() const { return l_bar_; }
  const DetectorConfig& config() const { return cfg_; }

 private:
  DetectorConfig cfg_;
  bool initialized_ = false;
  double b_bar_ = 0.0;
  double l_bar_ = 0.0;
  int last_drop_ = 0;
};

}  // namespace netcas
