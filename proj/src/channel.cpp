#include "mirage/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace mirage {

void ChannelParams::validate() const {
  if (base_read_probability < 0.0 || base_read_probability > 1.0) {
    throw std::invalid_argument("channel: base_read_probability out of [0,1]");
  }
  if (min_read_probability < 0.0 || min_read_probability > base_read_probability) {
    throw std::invalid_argument(
        "channel: min_read_probability must lie in [0, base_read_probability]");
  }
  if (degradation_slope < 0.0) {
    throw std::invalid_argument("channel: degradation_slope must be >= 0");
  }
  if (degradation_start < 0.0) {
    throw std::invalid_argument("channel: degradation_start must be >= 0");
  }
  if (read_latency_low_ms > read_latency_high_ms || read_latency_low_ms < 0.0) {
    throw std::invalid_argument("channel: read latency bounds out of order");
  }
  if (write_latency_low_ms > write_latency_high_ms || write_latency_low_ms < 0.0) {
    throw std::invalid_argument("channel: write latency bounds out of order");
  }
}

double read_probability(uint64_t n_tags, const ChannelParams& params) {
  double excess = std::max(0.0, static_cast<double>(n_tags) - params.degradation_start);
  double p = params.base_read_probability - params.degradation_slope * excess;
  return std::clamp(p, params.min_read_probability, params.base_read_probability);
}

ScanResult scan(const ShelfState& shelf, const ChannelParams& params,
                uint64_t step, Rng& rng) {
  ScanResult result;
  result.step = step;
  const double p = read_probability(shelf.total_tag_count(), params);

  auto try_read = [&](const Tag& tag, bool honeytoken) {
    if (!rng.bernoulli(p)) {
      ++result.missed;
      return;
    }
    result.observed.push_back(pack_tag_id(tag.id));
    double latency = sample_read_latency(params, rng);
    result.read_time_ms += latency;
    if (honeytoken) {
      result.honeytoken_read_latencies_ms.push_back(latency);
    }
  };

  for (const Tag& tag : shelf.real_tags) try_read(tag, false);
  for (const Tag& tag : shelf.active_tokens) try_read(tag, true);
  for (const Tag& tag : shelf.inactive_pool) try_read(tag, true);

  std::sort(result.observed.begin(), result.observed.end());
  return result;
}

double sample_read_latency(const ChannelParams& params, Rng& rng) {
  return rng.uniform_range(params.read_latency_low_ms, params.read_latency_high_ms);
}

double sample_write_latency(const ChannelParams& params, Rng& rng) {
  return rng.uniform_range(params.write_latency_low_ms, params.write_latency_high_ms);
}

}  // namespace mirage
