#include "mirage/quantifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mirage {

namespace {

uint64_t window_max(std::span<const uint64_t> history, uint32_t window) {
  size_t first = history.size() > window ? history.size() - window : 0;
  uint64_t max_value = 0;
  for (size_t i = first; i < history.size(); ++i) {
    max_value = std::max(max_value, history[i]);
  }
  return max_value;
}

// ceil with a relative epsilon so that e.g. 1.1 * 40 lands on 44, not 45.
uint64_t scaled_ceil(double multiplier, uint64_t value) {
  double v = multiplier * static_cast<double>(value);
  double eps = 1e-9 * std::max(1.0, std::fabs(v));
  return static_cast<uint64_t>(std::ceil(v - eps));
}

uint64_t apply_clamp(uint64_t goal, const std::optional<CapacityClamp>& clamp) {
  if (!clamp) return goal;
  return std::min(goal, clamp->available_honeytokens + clamp->max_real_items);
}

void validate_policy(const GoalPolicy& policy) {
  if (policy.flat_multiplier < 1.0) {
    throw std::invalid_argument("goal policy: flat_multiplier must be >= 1");
  }
  if (policy.window < 1) {
    throw std::invalid_argument("goal policy: window must be >= 1");
  }
}

}  // namespace

GoalValue compute_flat_goal(std::span<const uint64_t> history,
                            const GoalPolicy& policy) {
  validate_policy(policy);
  if (history.empty()) {
    return {policy.bootstrap_goal, true};
  }
  uint64_t goal = scaled_ceil(policy.flat_multiplier, window_max(history, policy.window));
  return {apply_clamp(goal, policy.capacity_clamp), false};
}

GoalValue compute_random_goal(std::span<const uint64_t> history,
                              const GoalPolicy& policy, Rng& rng) {
  validate_policy(policy);
  if (history.empty()) {
    return {policy.bootstrap_goal, true};
  }
  uint64_t jitter_max = policy.random_jitter_max.value_or(0);
  uint64_t goal = window_max(history, policy.window) + rng.uniform_u64(jitter_max + 1);
  return {apply_clamp(goal, policy.capacity_clamp), false};
}

double average_real_age(const ShelfState& shelf,
                        std::span<const double> past_averages,
                        double fallback_default) {
  if (!shelf.real_tags.empty()) {
    double sum = 0.0;
    for (const Tag& t : shelf.real_tags) sum += static_cast<double>(t.age);
    return sum / static_cast<double>(shelf.real_tags.size());
  }
  if (!past_averages.empty()) {
    double sum = 0.0;
    for (double v : past_averages) sum += v;
    return sum / static_cast<double>(past_averages.size());
  }
  return fallback_default;
}

uint64_t count_aged_active(const ShelfState& shelf, double average_age) {
  uint64_t n = 0;
  for (const Tag& t : shelf.active_tokens) {
    if (static_cast<double>(t.age) >= average_age) ++n;
  }
  return n;
}

HoneytokenPlan plan_step(const ShelfState& shelf, const StepObservation& obs,
                         uint64_t goal_sales, uint64_t goal_restock,
                         double average_age, Rng& rng) {
  // Every aged active token is retired this step: either its identity is
  // scrambled for good (a deactivation) or it is immediately re-programmed
  // under a fresh id (one apparent sale plus one apparent restock). The
  // restocking goal decides the split; deactivation always consumes aged
  // tokens before younger ones.
  std::vector<Serial> aged;
  std::vector<Serial> young;
  for (const Tag& t : shelf.active_tokens) {
    if (static_cast<double>(t.age) >= average_age) {
      aged.push_back(t.id.serial);
    } else {
      young.push_back(t.id.serial);
    }
  }
  rng.shuffle(aged);
  rng.shuffle(young);

  const int64_t aged_count = static_cast<int64_t>(aged.size());
  const int64_t sales = static_cast<int64_t>(obs.actual_sales);
  const int64_t restock = static_cast<int64_t>(obs.actual_restock);

  // Deactivations of young tokens needed beyond the aged ones (each aged
  // token already contributes one apparent sale whichever way it goes).
  int64_t deactivate_young = std::clamp<int64_t>(
      static_cast<int64_t>(goal_sales) - sales - aged_count, 0,
      static_cast<int64_t>(young.size()));

  // Restocking headroom decides how many aged tokens survive as
  // reprograms (each contributing one apparent restock) versus being
  // deactivated outright.
  int64_t restock_room = static_cast<int64_t>(goal_restock) - restock;
  int64_t deactivate_aged;
  int64_t activate;
  if (restock_room >= aged_count) {
    deactivate_aged = 0;
    activate = std::min<int64_t>(restock_room - aged_count,
                                 static_cast<int64_t>(shelf.inactive_pool.size()));
  } else {
    deactivate_aged = aged_count - std::clamp<int64_t>(restock_room, 0, aged_count);
    activate = 0;
  }

  HoneytokenPlan plan;
  plan.goal_sales = goal_sales;
  plan.goal_restock = goal_restock;
  plan.deactivate.assign(aged.begin(), aged.begin() + deactivate_aged);
  plan.deactivate.insert(plan.deactivate.end(), young.begin(),
                         young.begin() + deactivate_young);
  plan.reprogram.assign(aged.begin() + deactivate_aged, aged.end());
  plan.activate_count = static_cast<uint64_t>(activate);

  const int64_t reprogram_count = static_cast<int64_t>(plan.reprogram.size());
  int64_t apparent_sales =
      sales + reprogram_count + static_cast<int64_t>(plan.deactivate.size());
  int64_t apparent_restock = restock + reprogram_count + activate;
  auto gap = [](int64_t goal, int64_t apparent) {
    int64_t d = goal - apparent;
    return static_cast<uint64_t>(d < 0 ? -d : d);
  };
  plan.sales_shortfall = gap(static_cast<int64_t>(goal_sales), apparent_sales);
  plan.restock_shortfall = gap(static_cast<int64_t>(goal_restock), apparent_restock);
  return plan;
}

}  // namespace mirage
