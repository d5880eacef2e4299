#include "netcas/monitor.hpp"

#include "netcas/error.hpp"

namespace netcas {

Monitor::Monitor(double epoch_s, std::size_t window_len)
    : epoch_s_(epoch_s), window_len_(window_len) {
  if (epoch_s <= 0.0) throw ConfigError("monitor epoch_s must be positive");
  if (window_len < 1) throw ConfigError("monitor window_len must be >= 1");
}

void Monitor::ingest(const CompletionRecord& rec) {
  if (rec.device != Device::Backend) {
    throw StateError("monitor only ingests backend-path records");
  }
  if (rec.complete_time_s <= rec.submit_time_s) {
    throw StateError("completion must be after submission");
  }
  ++acc_count_;
  acc_bytes_ += static_cast<double>(rec.bytes);
  acc_latency_ += rec.complete_time_s - rec.submit_time_s;
  total_bytes_ += static_cast<double>(rec.bytes);
}

ThroughputSample Monitor::close_epoch() {
  ThroughputSample s;
  s.epoch_index = epochs_closed_;
  s.completions = acc_count_;
  if (acc_count_ > 0) {
    s.bytes_per_s = acc_bytes_ / epoch_s_;
    s.mean_latency_s = acc_latency_ / static_cast<double>(acc_count_);
  }
  acc_count_ = 0;
  acc_bytes_ = 0.0;
  acc_latency_ = 0.0;
  ++epochs_closed_;

  window_.push_back(s);
  if (window_.size() > window_len_) window_.pop_front();
  return s;
}

}  // namespace netcas
