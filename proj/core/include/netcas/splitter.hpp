#pragma once

#include <optional>

namespace netcas {

// Completion time of one unit batch split rho : (1-rho) across devices with
// standalone rates i_cache and i_back, both sides in flight concurrently.
double predict_completion(double rho, double i_cache, double i_back);

// Ratio minimizing predict_completion: i_cache / (i_cache + i_back).
double base_ratio(double i_cache, double i_back);

// Ratio rebalanced for a congested backend path whose usable rate shrinks to
// i_back * (1 - drop_permil/1000). drop_permil = 1000 yields 1.0.
double adjusted_ratio(double i_cache, double i_back, int drop_permil);

enum class Mode { NoTable, Warmup, Stable, Congestion };

const char* to_string(Mode m);

struct ModeConfig {
  int enter_permil = 100;        // Stable -> Congestion threshold
  int exit_permil = 50;          // must stay at/below this to leave Congestion
  int recalc_every_epochs = 5;   // Congestion recalc cadence and exit streak
  double max_cache_share = 0.95; // routing floor so the backend keeps probing
};

void validate_mode_config(const ModeConfig& cfg);

struct ModeEvents {
  bool profile_ready = false;   // a usable profile entry exists
  bool window_filled = false;   // monitoring window has stabilized
  int drop_permil = 0;          // latest congestion score
};

// Mode state machine driving the scheduler ratio. step() is called once per
// closed epoch; new_rho is set only on transitions and Congestion recalcs, so
// the scheduler ratio never changes outside those points.
class ModeMachine {
 public:
  explicit ModeMachine(ModeConfig cfg = {});

  struct Step {
    Mode mode;
    std::optional<double> new_rho;
  };

  Step step(const ModeEvents& ev, double i_cache, double i_back);

  Mode mode() const { return mode_; }

 private:
  ModeConfig cfg_;
  Mode mode_ = Mode::NoTable;
  int epochs_in_congestion_ = 0;
  int below_exit_streak_ = 0;
};

}  // namespace netcas
