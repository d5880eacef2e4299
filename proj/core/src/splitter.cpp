#include "netcas/splitter.hpp"

#include <algorithm>
#include <cmath>

#include "netcas/error.hpp"

namespace netcas {

double predict_completion(double rho, double i_cache, double i_back) {
  if (i_cache <= 0.0 || i_back <= 0.0) throw ConfigError("device rates must be positive");
  if (rho < 0.0 || rho > 1.0) throw ConfigError("rho must be in [0, 1]");
  // Both sides work concurrently; the batch is done when the slower side is.
  return std::max(rho / i_cache, (1.0 - rho) / i_back);
}

double base_ratio(double i_cache, double i_back) {
  if (i_cache <= 0.0 || i_back <= 0.0) throw ConfigError("device rates must be positive");
  return i_cache / (i_cache + i_back);
}

double adjusted_ratio(double i_cache, double i_back, int drop_permil) {
  if (i_cache <= 0.0 || i_back <= 0.0) throw ConfigError("device rates must be positive");
  if (drop_permil < 0 || drop_permil > 1000) throw ConfigError("drop_permil must be in [0, 1000]");
  double usable = i_back * (1.0 - static_cast<double>(drop_permil) / 1000.0);
  return i_cache / (i_cache + usable);
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::NoTable: return "no_table";
    case Mode::Warmup: return "warmup";
    case Mode::Stable: return "stable";
    case Mode::Congestion: return "congestion";
  }
  return "?";
}

void validate_mode_config(const ModeConfig& cfg) {
  if (cfg.enter_permil < 0 || cfg.enter_permil > 1000) {
    throw ConfigError("enter_permil must be in [0, 1000]");
  }
  if (cfg.exit_permil < 0 || cfg.exit_permil >= cfg.enter_permil) {
    throw ConfigError("exit_permil must be in [0, enter_permil)");
  }
  if (cfg.recalc_every_epochs < 1) throw ConfigError("recalc_every_epochs must be >= 1");
  if (cfg.max_cache_share <= 0.0 || cfg.max_cache_share > 1.0) {
    throw ConfigError("max_cache_share must be in (0, 1]");
  }
}

ModeMachine::ModeMachine(ModeConfig cfg) : cfg_(cfg) {
  validate_mode_config(cfg);
}

ModeMachine::Step ModeMachine::step(const ModeEvents& ev, double i_cache, double i_back) {
  std::optional<double> new_rho;
  switch (mode_) {
    case Mode::NoTable:
      if (ev.profile_ready) {
        mode_ = Mode::Warmup;
        new_rho = base_ratio(i_cache, i_back);
      }
      break;

    case Mode::Warmup:
      if (ev.window_filled) mode_ = Mode::Stable;
      break;

    case Mode::Stable:
      if (ev.drop_permil >= cfg_.enter_permil) {
        mode_ = Mode::Congestion;
        epochs_in_congestion_ = 0;
        below_exit_streak_ = 0;
        new_rho = std::min(adjusted_ratio(i_cache, i_back, ev.drop_permil),
                           cfg_.max_cache_share);
      }
      break;

    case Mode::Congestion:
      ++epochs_in_congestion_;
      below_exit_streak_ = ev.drop_permil <= cfg_.exit_permil ? below_exit_streak_ + 1 : 0;
      if (below_exit_streak_ >= cfg_.recalc_every_epochs) {
        mode_ = Mode::Stable;
        new_rho = base_ratio(i_cache, i_back);
      } else if (epochs_in_congestion_ % cfg_.recalc_every_epochs == 0) {
        new_rho = std::min(adjusted_ratio(i_cache, i_back, ev.drop_permil),
                           cfg_.max_cache_share);
      }
      break;
  }
  return {mode_, new_rho};
}

}  // namespace netcas
