#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mirage {

// Sample autocorrelation coefficients for lags 1..L.
struct Correlogram {
  std::vector<double> coefficients;  // coefficients[k-1] = r_k
};

struct FlatnessReport {
  double mean = 0.0;
  double coefficient_of_variation = 0.0;
  double max_abs_deviation = 0.0;
  bool cv_undefined = false;  // zero mean but non-zero spread
};

enum class OverheadKind { Read, Write };

struct OverheadEvent {
  uint64_t step = 0;
  OverheadKind kind = OverheadKind::Read;
  double latency_ms = 0.0;
};

// Extra reader time spent on honeytokens: tag reads plus reprogramming
// writes, totalled and aligned per scan step.
struct OverheadReport {
  double total_read_ms = 0.0;
  double total_write_ms = 0.0;
  uint64_t reads_count = 0;
  uint64_t writes_count = 0;
  std::vector<double> per_step_overhead_ms;
};

// r_k with the full-series (biased) denominator; a zero-variance series
// has all coefficients defined as 0. Throws "insufficient data" when the
// series is shorter than max_lag + 1.
Correlogram autocorrelation(std::span<const double> series, uint32_t max_lag);
double autocorrelation_at(std::span<const double> series, uint32_t lag);

double mean_abs_acf(const Correlogram& correlogram);

FlatnessReport flatness(std::span<const double> series);  // throws on empty

OverheadReport overhead_summary(std::span<const OverheadEvent> events,
                                size_t n_steps);

std::vector<double> to_doubles(std::span<const uint64_t> series);

// min(10, len/4), at least 1.
uint32_t default_max_lag(size_t series_length);

}  // namespace mirage
