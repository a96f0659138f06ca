#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mirage/core.hpp"
#include "mirage/rng.hpp"

namespace mirage {

struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceEvent {
  uint64_t step = 0;  // 1-based
  uint64_t sales = 0;
  uint64_t restock = 0;
};

// Ground-truth per-step sales and restocking for one item type, the
// database view a simulation replays. Within a step, sales are drawn
// from stock before the restock arrives.
struct Trace {
  ItemType item_type;
  uint64_t initial_stock = 0;
  std::vector<TraceEvent> steps;

  // Throws TraceError on stock underflow, naming the step.
  void validate() const;
  uint64_t final_stock() const;

  // Stock level after each step (index 0 = initial stock).
  std::vector<uint64_t> inventory_levels() const;
};

// CSV format: a sidecar line `# initial_stock=<n> epc_type=<hex>`, a
// `step,sales,restock` header, one row per step.
Trace load_trace(const std::filesystem::path& path);
void save_trace(const std::filesystem::path& path, const Trace& trace);

struct DiscountCycleParams {
  uint64_t base_sales = 2;
  uint64_t spike_sales = 20;
  uint64_t period = 30;
  uint64_t steps = 90;
  // Default: exactly one period's worth of sales, so the shelf is
  // replenished to its initial level at every spike.
  std::optional<uint64_t> initial_stock;
};

struct ThresholdRestockParams {
  uint64_t threshold = 10;
  uint64_t restock_amount = 50;
  uint64_t steps = 60;
  uint64_t max_sale = 6;  // per-step sales drawn uniformly from [0, max_sale]
  std::optional<uint64_t> initial_stock;
};

struct CompetingProductsParams {
  uint64_t steps = 36;
  uint64_t sales_low = 2;
  uint64_t sales_high = 120;
  uint64_t drift = 1;  // net inventory change per step (down for the
                       // rising product, up for the fading one)
  uint64_t noise = 2;  // uniform jitter applied to each step's sales
  std::optional<uint64_t> initial_stock;
};

// Steady sales with a periodic discount spike, restocked to the initial
// level after each spike.
Trace gen_discount_cycle(const DiscountCycleParams& params, EpcType epc);

// Stochastic sales with a bulk restock whenever stock dips below the
// threshold.
Trace gen_threshold_restock(const ThresholdRestockParams& params, EpcType epc,
                            Rng& rng);

// Two products with smooth opposing sales trends plus noise; the first
// trends up in sales (inventory draining), the second down (overstocking).
std::pair<Trace, Trace> gen_competing_products(
    const CompetingProductsParams& params, EpcType epc_first,
    EpcType epc_second, Rng& rng);

}  // namespace mirage
