#pragma once

#include <cstdint>
#include <vector>

#include "mirage/core.hpp"
#include "mirage/rng.hpp"

namespace mirage {

// Read channel between shelf and reader. Per-tag read success degrades
// linearly once the shelf is crowded enough for RF collisions to bite;
// the defaults are calibrated to measured averages of 0.82 at ~150 tags
// and 0.56 at ~450 tags. Latencies are sampled uniformly inside the
// measured bounds.
struct ChannelParams {
  double base_read_probability = 0.82;            // below degradation_start
  double degradation_start = 150.0;               // tag count where loss begins
  double degradation_slope = 0.26 / 300.0;        // probability lost per tag
  double min_read_probability = 0.10;
  double read_latency_low_ms = 10.0;
  double read_latency_high_ms = 150.0;
  double write_latency_low_ms = 90.0;
  double write_latency_high_ms = 350.0;

  void validate() const;  // throws std::invalid_argument naming the field

  // All tags read, zero latency; handy for exact-accounting runs.
  static ChannelParams perfect() {
    ChannelParams p;
    p.base_read_probability = 1.0;
    p.min_read_probability = 1.0;
    p.degradation_slope = 0.0;
    return p;
  }
};

// One reader pass over the shelf.
struct ScanResult {
  uint64_t step = 0;
  std::vector<uint64_t> observed;  // packed tag ids, sorted
  uint64_t missed = 0;
  double read_time_ms = 0.0;  // sum over all observed tags
  // Latency of each observed honeytoken read, the overhead the defense adds.
  std::vector<double> honeytoken_read_latencies_ms;
};

double read_probability(uint64_t n_tags, const ChannelParams& params);

// Each shelved tag (real, active or deactivated honeytoken) is captured
// independently with read_probability(total tag count).
ScanResult scan(const ShelfState& shelf, const ChannelParams& params,
                uint64_t step, Rng& rng);

double sample_read_latency(const ChannelParams& params, Rng& rng);
double sample_write_latency(const ChannelParams& params, Rng& rng);

}  // namespace mirage
