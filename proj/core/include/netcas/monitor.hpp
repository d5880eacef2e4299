#pragma once

#include <cstdint>
#include <deque>

#include "netcas/types.hpp"

namespace netcas {

// Backend-path throughput/latency over one epoch. Epochs with no backend
// completions are emitted as empty markers (completions == 0) so the sample
// sequence stays gap-free; consumers must skip them.
struct ThroughputSample {
  std::size_t epoch_index = 0;
  double bytes_per_s = 0.0;
  double mean_latency_s = 0.0;
  std::uint64_t completions = 0;

  bool empty() const { return completions == 0; }
};

// Aggregates backend completion records into per-epoch samples and keeps a
// sliding window of the most recent window_len of them. Cache-path records
// are accounted by the simulator directly; only backend records feed the
// congestion signal, so ingest() accepts backend records exclusively.
class Monitor {
 public:
  Monitor(double epoch_s, std::size_t window_len);

  void ingest(const CompletionRecord& rec);

  // Finalize the currently open epoch and open the next one.
  ThroughputSample close_epoch();

  double epoch_s() const { return epoch_s_; }
  std::size_t window_len() const { return window_len_; }
  const std::deque<ThroughputSample>& window() const { return window_; }
  std::size_t epochs_closed() const { return epochs_closed_; }
  double total_backend_bytes() const { return total_bytes_; }

 private:
  double epoch_s_;
  std::size_t window_len_;
  std::deque<ThroughputSample> window_;
  std::size_t epochs_closed_ = 0;

  // accumulators for the open epoch
  std::uint64_t acc_count_ = 0;
  double acc_bytes_ = 0.0;
  double acc_latency_ = 0.0;
  double total_bytes_ = 0.0;
};

}  // namespace netcas
