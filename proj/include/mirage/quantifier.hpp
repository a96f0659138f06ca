#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mirage/core.hpp"
#include "mirage/rng.hpp"

namespace mirage {

enum class GoalMode {
  FlatSales,
  FlatRestock,
  FlatInventory,
  RandomSales,
  RandomRestock,
  RandomInventory,
};

// Bounds a goal near x + y when only x honeytokens are on hand and at
// most y real items are ever shelved.
struct CapacityClamp {
  uint64_t available_honeytokens = 0;
  uint64_t max_real_items = 0;
};

struct GoalPolicy {
  GoalMode mode = GoalMode::FlatInventory;
  double flat_multiplier = 1.10;  // flat goal = multiplier * window max
  uint32_t window = 30;           // steps of history the max is taken over
  // Jitter added to the window max under random modes; when unset the
  // engine fills it with the honeytoken budget.
  std::optional<uint64_t> random_jitter_max;
  std::optional<CapacityClamp> capacity_clamp;
  uint64_t bootstrap_goal = 0;  // returned while history is empty
};

struct GoalValue {
  uint64_t goal = 0;
  bool cold_start = false;
};

struct StepObservation {
  uint64_t step = 0;
  uint64_t actual_sales = 0;
  uint64_t actual_restock = 0;
};

// Per-step decision: which active tokens get a fresh identity, which are
// turned off, and how many pooled tokens come online. Counts are chosen
// so the apparent sales/restocking seen over the scan equal the goals
// whenever the shelf allows it; shortfalls record any residual gap.
struct HoneytokenPlan {
  std::vector<Serial> reprogram;   // aged actives kept alive under new ids
  std::vector<Serial> deactivate;  // actives turned off this step
  uint64_t activate_count = 0;
  uint64_t sales_shortfall = 0;    // |goal - apparent sales|
  uint64_t restock_shortfall = 0;  // |goal - apparent restocking|
  uint64_t goal_sales = 0;
  uint64_t goal_restock = 0;
};

// ceil(multiplier * max of the last `window` entries); empty history
// yields the bootstrap goal with the cold-start flag set.
GoalValue compute_flat_goal(std::span<const uint64_t> history,
                            const GoalPolicy& policy);

// window max plus a uniform draw in [0, random_jitter_max].
GoalValue compute_random_goal(std::span<const uint64_t> history,
                              const GoalPolicy& policy, Rng& rng);

// Mean age of shelved real tags. Falls back to the running mean of past
// per-step values when the shelf is empty, then to `fallback_default`.
double average_real_age(const ShelfState& shelf,
                        std::span<const double> past_averages,
                        double fallback_default);

// Active honeytokens whose age has reached the real-tag average.
uint64_t count_aged_active(const ShelfState& shelf, double average_age);

HoneytokenPlan plan_step(const ShelfState& shelf, const StepObservation& obs,
                         uint64_t goal_sales, uint64_t goal_restock,
                         double average_age, Rng& rng);

}  // namespace mirage
