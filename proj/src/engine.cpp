#include "mirage/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "mirage/programmer.hpp"

namespace mirage {

namespace {

struct StepGoals {
  uint64_t goal_sales = 0;
  uint64_t goal_restock = 0;
  bool cold_start = false;
};

// Per-step goals for the attacker-visible sales/restocking counts.
//
// Sales/restock modes apply one goal value to both sides, so the token
// pool recycles: deactivations feed the sales goal, activations the
// restocking goal. Inventory modes treat the goal as a level to hold and
// derive the two sides from the gap between that level and the current
// apparent inventory (stock plus live tokens); aged-token reprograms are
// neutral either way. Cold-start steps fall back to the do-nothing goals
// (actuals plus the unavoidable reprogram events).
StepGoals derive_goals(const GoalPolicy& policy,
                       const std::vector<uint64_t>& sales_history,
                       const std::vector<uint64_t>& restock_history,
                       const std::vector<uint64_t>& inventory_history,
                       const ShelfState& shelf, uint64_t stock,
                       const TraceEvent& event, double average_age, Rng& rng) {
  const uint64_t aged = count_aged_active(shelf, average_age);
  const StepGoals idle{event.sales + aged, event.restock + aged, true};

  auto one_sided = [&](GoalValue value) -> StepGoals {
    if (value.cold_start) return idle;
    return {value.goal, value.goal, false};
  };

  switch (policy.mode) {
    case GoalMode::FlatSales:
      return one_sided(compute_flat_goal(sales_history, policy));
    case GoalMode::RandomSales:
      return one_sided(compute_random_goal(sales_history, policy, rng));
    case GoalMode::FlatRestock:
      return one_sided(compute_flat_goal(restock_history, policy));
    case GoalMode::RandomRestock:
      return one_sided(compute_random_goal(restock_history, policy, rng));
    case GoalMode::FlatInventory:
    case GoalMode::RandomInventory: {
      GoalValue level = policy.mode == GoalMode::FlatInventory
                            ? compute_flat_goal(inventory_history, policy)
                            : compute_random_goal(inventory_history, policy, rng);
      if (level.cold_start) return idle;
      const int64_t apparent = static_cast<int64_t>(stock) +
                               static_cast<int64_t>(shelf.active_tokens.size());
      const int64_t delta = static_cast<int64_t>(level.goal) - apparent;
      if (delta >= 0) {
        return {event.sales + aged,
                event.restock + aged + static_cast<uint64_t>(delta), false};
      }
      const uint64_t drop = static_cast<uint64_t>(-delta);
      return {event.sales + aged + (drop > aged ? drop - aged : 0),
              event.restock + (aged > drop ? aged - drop : 0), false};
    }
  }
  return idle;
}

void check_invariants(const ShelfState& shelf, uint64_t budget,
                      const IdRegistry& registry) {
  if (!shelf.serials_distinct()) {
    throw std::logic_error("engine invariant violated: duplicate serial on shelf");
  }
  if (shelf.honeytoken_count() != budget) {
    throw std::logic_error("engine invariant violated: honeytoken count drifted");
  }
  if (registry.size() != shelf.total_tag_count()) {
    throw std::logic_error("engine invariant violated: registry out of sync");
  }
}

Correlogram acf_or_empty(const std::vector<uint64_t>& series) {
  const uint32_t max_lag = default_max_lag(series.size());
  if (series.size() < static_cast<size_t>(max_lag) + 1) return {};
  return autocorrelation(to_doubles(series), max_lag);
}

// Flatness past the bootstrap window; short series are taken whole.
FlatnessReport tail_flatness(const std::vector<uint64_t>& inventory,
                             uint32_t window) {
  std::vector<double> values = to_doubles(inventory);
  size_t start = window < values.size() ? window : 0;
  return flatness(std::span<const double>(values).subspan(start));
}

}  // namespace

SimulationReport run(const Trace& trace, const SimConfig& config) {
  trace.validate();
  config.channel.validate();
  if (trace.steps.empty()) {
    throw TraceError("simulation requires a non-empty trace");
  }

  GoalPolicy policy = config.goal;
  if (!policy.random_jitter_max) {
    policy.random_jitter_max = config.honeytoken_budget;
  }

  Rng rng(config.seed);
  IdRegistry registry(trace.item_type.epc_type);
  for (EpcType epc : config.extra_excluded_epcs) registry.exclude_epc(epc);

  ShelfState shelf;
  shelf.item_type = trace.item_type;
  for (uint64_t i = 0; i < trace.initial_stock; ++i) {
    shelf.real_tags.push_back(
        Tag{{trace.item_type.epc_type, registry.acquire(rng)}, TagKind::Real, 0, true});
  }
  for (uint64_t i = 0; i < config.honeytoken_budget; ++i) {
    shelf.inactive_pool.push_back(Tag{{registry.random_decoy_epc(rng), registry.acquire(rng)},
                                      TagKind::Honeytoken, 0, false});
  }

  std::vector<ObservedInventory> observations;
  std::vector<OverheadEvent> overhead_events;
  std::vector<double> read_success;
  std::vector<StepShortfall> shortfalls;
  std::vector<uint64_t> sales_history;
  std::vector<uint64_t> restock_history;
  std::vector<uint64_t> inventory_history{trace.initial_stock};
  std::vector<double> age_history;

  auto scan_step = [&](uint64_t step) {
    ScanResult result = scan(shelf, config.channel, step, rng);
    const size_t present = shelf.total_tag_count();
    read_success.push_back(
        present == 0 ? 1.0
                     : static_cast<double>(result.observed.size()) /
                           static_cast<double>(present));
    for (double latency : result.honeytoken_read_latencies_ms) {
      overhead_events.push_back({step, OverheadKind::Read, latency});
    }
    observations.push_back(filter_observation(result, trace.item_type));
  };

  auto log_write = [&](uint64_t step) {
    overhead_events.push_back(
        {step, OverheadKind::Write, sample_write_latency(config.channel, rng)});
  };

  // Baseline scan of the untouched shelf; every trace step is then
  // bracketed by two scans, so each diff lines up with one step.
  scan_step(0);

  uint64_t stock = trace.initial_stock;
  for (const TraceEvent& event : trace.steps) {
    // 1. Real mutations: sales leave oldest-first, restocks arrive fresh.
    for (uint64_t i = 0; i < event.sales; ++i) {
      registry.release(shelf.real_tags[i].id.serial);
    }
    shelf.real_tags.erase(shelf.real_tags.begin(),
                          shelf.real_tags.begin() + static_cast<int64_t>(event.sales));
    for (uint64_t i = 0; i < event.restock; ++i) {
      shelf.real_tags.push_back(Tag{{trace.item_type.epc_type, registry.acquire(rng)},
                                    TagKind::Real, 0, true});
    }
    stock = stock - event.sales + event.restock;

    // 2. One scan step of age for everything on the shelf.
    for (Tag& t : shelf.real_tags) ++t.age;
    for (Tag& t : shelf.active_tokens) ++t.age;
    for (Tag& t : shelf.inactive_pool) ++t.age;

    // 3. Plan.
    const double average_age = average_real_age(shelf, age_history, config.av_default);
    age_history.push_back(average_age);
    StepGoals goals = derive_goals(policy, sales_history, restock_history,
                                   inventory_history, shelf, stock, event,
                                   average_age, rng);
    StepObservation observation{event.step, event.sales, event.restock};
    HoneytokenPlan plan = plan_step(shelf, observation, goals.goal_sales,
                                    goals.goal_restock, average_age, rng);

    // 4. Program tokens. A reprogram is two tag writes (scramble the old
    // id, write the new one); activations and deactivations are one each.
    {
      std::unordered_set<Serial> reprogram_set(plan.reprogram.begin(),
                                               plan.reprogram.end());
      std::unordered_set<Serial> deactivate_set(plan.deactivate.begin(),
                                                plan.deactivate.end());
      std::vector<Tag> still_active;
      still_active.reserve(shelf.active_tokens.size());
      for (const Tag& token : shelf.active_tokens) {
        if (reprogram_set.count(token.id.serial)) {
          still_active.push_back(reprogram_token(token, registry, rng));
          log_write(event.step);
          log_write(event.step);
        } else if (deactivate_set.count(token.id.serial)) {
          shelf.inactive_pool.push_back(deactivate_token(token, registry, rng));
          log_write(event.step);
        } else {
          still_active.push_back(token);
        }
      }
      shelf.active_tokens = std::move(still_active);
      for (uint64_t i = 0; i < plan.activate_count; ++i) {
        size_t pick = rng.uniform_u64(shelf.inactive_pool.size());
        Tag pool_tag = shelf.inactive_pool[pick];
        shelf.inactive_pool.erase(shelf.inactive_pool.begin() +
                                  static_cast<int64_t>(pick));
        shelf.active_tokens.push_back(activate_token(pool_tag, registry, rng));
        log_write(event.step);
      }
    }

    // 5 + 6. Scan and record the attacker's view.
    scan_step(event.step);

    sales_history.push_back(event.sales);
    restock_history.push_back(event.restock);
    inventory_history.push_back(stock);
    shortfalls.push_back(
        {event.step, plan.sales_shortfall, plan.restock_shortfall, goals.cold_start});

    check_invariants(shelf, config.honeytoken_budget, registry);
  }

  SimulationReport report;
  report.ground_truth.first_step = 0;
  report.ground_truth.inventory = trace.inventory_levels();
  for (const TraceEvent& event : trace.steps) {
    report.ground_truth.apparent_sales.push_back(event.sales);
    report.ground_truth.apparent_restock.push_back(event.restock);
  }
  report.attacker_view = build_series(observations);
  report.raw_sales_acf = acf_or_empty(report.ground_truth.apparent_sales);
  report.attacker_sales_acf = acf_or_empty(report.attacker_view.apparent_sales);
  report.raw_inventory_flatness =
      tail_flatness(report.ground_truth.inventory, policy.window);
  report.attacker_inventory_flatness =
      tail_flatness(report.attacker_view.inventory, policy.window);
  report.overhead = overhead_summary(overhead_events, trace.steps.size() + 1);
  report.shortfalls = std::move(shortfalls);
  report.read_success = std::move(read_success);
  report.honeytoken_budget = config.honeytoken_budget;
  report.seed = config.seed;
  return report;
}

std::vector<SimulationReport> run_batch(const Trace& trace,
                                        const SimConfig& config,
                                        size_t n_runs) {
  std::vector<SimulationReport> reports;
  reports.reserve(n_runs);
  for (size_t i = 0; i < n_runs; ++i) {
    SimConfig child = config;
    child.seed = Rng::derive(config.seed, i);
    reports.push_back(run(trace, child));
  }
  return reports;
}

}  // namespace mirage
