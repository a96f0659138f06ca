#include "mirage/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mirage {

namespace {

double series_mean(std::span<const double> series) {
  double sum = 0.0;
  for (double v : series) sum += v;
  return sum / static_cast<double>(series.size());
}

}  // namespace

double autocorrelation_at(std::span<const double> series, uint32_t lag) {
  if (series.size() < lag + 1) {
    throw std::invalid_argument("insufficient data: series shorter than lag + 1");
  }
  const double mean = series_mean(series);
  double denominator = 0.0;
  for (double v : series) {
    denominator += (v - mean) * (v - mean);
  }
  if (denominator == 0.0) return 0.0;  // flat series: no structure by convention
  double numerator = 0.0;
  for (size_t t = 0; t + lag < series.size(); ++t) {
    numerator += (series[t] - mean) * (series[t + lag] - mean);
  }
  return numerator / denominator;
}

Correlogram autocorrelation(std::span<const double> series, uint32_t max_lag) {
  if (max_lag < 1) {
    throw std::invalid_argument("autocorrelation: max_lag must be >= 1");
  }
  if (series.size() < static_cast<size_t>(max_lag) + 1) {
    throw std::invalid_argument("insufficient data: series shorter than max_lag + 1");
  }
  Correlogram result;
  result.coefficients.reserve(max_lag);
  for (uint32_t lag = 1; lag <= max_lag; ++lag) {
    result.coefficients.push_back(autocorrelation_at(series, lag));
  }
  return result;
}

double mean_abs_acf(const Correlogram& correlogram) {
  if (correlogram.coefficients.empty()) return 0.0;
  double sum = 0.0;
  for (double r : correlogram.coefficients) sum += std::fabs(r);
  return sum / static_cast<double>(correlogram.coefficients.size());
}

FlatnessReport flatness(std::span<const double> series) {
  if (series.empty()) {
    throw std::invalid_argument("flatness: empty series");
  }
  FlatnessReport report;
  report.mean = series_mean(series);
  double sq = 0.0;
  for (double v : series) {
    sq += (v - report.mean) * (v - report.mean);
    report.max_abs_deviation = std::max(report.max_abs_deviation, std::fabs(v - report.mean));
  }
  double stddev = std::sqrt(sq / static_cast<double>(series.size()));
  if (report.mean != 0.0) {
    report.coefficient_of_variation = stddev / std::fabs(report.mean);
  } else if (stddev > 0.0) {
    report.cv_undefined = true;
  }
  return report;
}

OverheadReport overhead_summary(std::span<const OverheadEvent> events,
                                size_t n_steps) {
  OverheadReport report;
  report.per_step_overhead_ms.assign(n_steps, 0.0);
  for (const OverheadEvent& e : events) {
    if (e.kind == OverheadKind::Read) {
      report.total_read_ms += e.latency_ms;
      ++report.reads_count;
    } else {
      report.total_write_ms += e.latency_ms;
      ++report.writes_count;
    }
    if (e.step < n_steps) {
      report.per_step_overhead_ms[e.step] += e.latency_ms;
    }
  }
  return report;
}

std::vector<double> to_doubles(std::span<const uint64_t> series) {
  return std::vector<double>(series.begin(), series.end());
}

uint32_t default_max_lag(size_t series_length) {
  return static_cast<uint32_t>(std::max<size_t>(1, std::min<size_t>(10, series_length / 4)));
}

}  // namespace mirage
