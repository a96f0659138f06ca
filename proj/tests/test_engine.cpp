#include <chrono>

#include "doctest.h"
#include "mirage/engine.hpp"
#include "mirage/report_io.hpp"

using namespace mirage;

namespace {

Trace constant_sales_trace(uint64_t steps) {
  Trace trace;
  trace.item_type = {0xAB, "steady"};
  trace.initial_stock = 30;
  for (uint64_t t = 1; t <= steps; ++t) {
    trace.steps.push_back({t, 3, 3});
  }
  return trace;
}

}  // namespace

TEST_CASE("disabled defense over a perfect channel reproduces the trace") {
  Trace trace = gen_discount_cycle(DiscountCycleParams{}, 0xAB);
  SimConfig config;
  config.honeytoken_budget = 0;
  config.channel = ChannelParams::perfect();
  config.seed = 5;

  SimulationReport report = run(trace, config);
  CHECK(report.attacker_view.inventory == report.ground_truth.inventory);
  CHECK(report.attacker_view.apparent_sales == report.ground_truth.apparent_sales);
  CHECK(report.attacker_view.apparent_restock ==
        report.ground_truth.apparent_restock);

  // and the ground truth is the trace itself
  CHECK(report.ground_truth.inventory == trace.inventory_levels());
  REQUIRE(report.ground_truth.apparent_sales.size() == trace.steps.size());
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    CHECK(report.ground_truth.apparent_sales[i] == trace.steps[i].sales);
    CHECK(report.ground_truth.apparent_restock[i] == trace.steps[i].restock);
  }

  // nothing to program, nothing to read
  CHECK(report.overhead.writes_count == 0);
  CHECK(report.overhead.reads_count == 0);

  SUBCASE("a lossy channel can only undercount the real inventory") {
    config.channel = ChannelParams{};  // default, p < 1
    SimulationReport lossy = run(trace, config);
    auto truth = trace.inventory_levels();
    REQUIRE(lossy.attacker_view.inventory.size() == truth.size());
    for (size_t i = 0; i < truth.size(); ++i) {
      CHECK(lossy.attacker_view.inventory[i] <= truth[i]);
    }
  }
}

TEST_CASE("flat inventory holds the apparent level on the discount trace") {
  Trace trace = gen_discount_cycle(DiscountCycleParams{}, 0xAB);
  SimConfig config;
  config.honeytoken_budget = trace.initial_stock;  // 1x items
  config.goal.mode = GoalMode::FlatInventory;
  config.channel = ChannelParams::perfect();
  config.seed = 11;

  SimulationReport report = run(trace, config);
  // level = ceil(1.1 * 78); held exactly from the first planned step on
  for (size_t i = 1; i < report.attacker_view.inventory.size(); ++i) {
    CHECK(report.attacker_view.inventory[i] == 86);
  }
  CHECK(report.attacker_inventory_flatness.coefficient_of_variation ==
        doctest::Approx(0.0));
  CHECK(report.raw_inventory_flatness.coefficient_of_variation > 0.25);

  SUBCASE("no shortfalls after the cold start") {
    for (const StepShortfall& s : report.shortfalls) {
      CHECK(s.sales_shortfall == 0);
      CHECK(s.restock_shortfall == 0);
    }
  }

  SUBCASE("every programming write stayed within the latency bounds") {
    CHECK(report.overhead.writes_count > 0);
    double n = static_cast<double>(report.overhead.writes_count);
    CHECK(report.overhead.total_write_ms >= 90.0 * n);
    CHECK(report.overhead.total_write_ms <= 350.0 * n);
  }
}

TEST_CASE("flat sales pins the apparent sales series at the goal") {
  Trace trace = constant_sales_trace(60);
  SimConfig config;
  config.honeytoken_budget = 20;
  config.goal.mode = GoalMode::FlatSales;
  config.channel = ChannelParams::perfect();
  config.seed = 3;

  SimulationReport report = run(trace, config);
  REQUIRE(report.attacker_view.apparent_sales.size() == 60);
  // goal settles at ceil(1.1 * 3) = 4 once a token is in circulation
  for (size_t i = 4; i < report.attacker_view.apparent_sales.size(); ++i) {
    CHECK(report.attacker_view.apparent_sales[i] == 4);
  }
}

TEST_CASE("runs are deterministic given the seed") {
  Trace trace = gen_discount_cycle(DiscountCycleParams{}, 0xAB);
  SimConfig config;
  config.honeytoken_budget = 40;
  config.goal.mode = GoalMode::RandomSales;
  config.seed = 99;

  SimulationReport a = run(trace, config);
  SimulationReport b = run(trace, config);
  CHECK(a.attacker_view.inventory == b.attacker_view.inventory);
  CHECK(a.attacker_view.apparent_sales == b.attacker_view.apparent_sales);
  CHECK(a.read_success == b.read_success);
  CHECK(summary_text(a, trace, config) == summary_text(b, trace, config));

  SUBCASE("different seeds diverge") {
    config.seed = 100;
    SimulationReport c = run(trace, config);
    CHECK(a.attacker_view.apparent_sales != c.attacker_view.apparent_sales);
  }
}

TEST_CASE("report bookkeeping under an imperfect channel") {
  ThresholdRestockParams params;
  params.steps = 80;
  Rng gen_rng(1);
  Trace trace = gen_threshold_restock(params, 0xAB, gen_rng);

  SimConfig config;
  config.honeytoken_budget = 50;
  config.goal.mode = GoalMode::RandomInventory;
  config.seed = 17;

  SimulationReport report = run(trace, config);
  CHECK(report.read_success.size() == trace.steps.size() + 1);
  for (double v : report.read_success) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(report.shortfalls.size() == trace.steps.size());
  CHECK(report.attacker_view.inventory.size() == trace.steps.size() + 1);
  const uint64_t population = trace.initial_stock + params.restock_amount + 50;
  for (uint64_t v : report.attacker_view.inventory) CHECK(v <= population);
  for (uint64_t v : report.attacker_view.apparent_sales) CHECK(v <= population);
  for (uint64_t v : report.attacker_view.apparent_restock) CHECK(v <= population);
  CHECK(report.overhead.per_step_overhead_ms.size() == trace.steps.size() + 1);

  double per_step_total = 0;
  for (double v : report.overhead.per_step_overhead_ms) per_step_total += v;
  CHECK(per_step_total ==
        doctest::Approx(report.overhead.total_read_ms + report.overhead.total_write_ms));
}

TEST_CASE("batch runs derive distinct seeds from the master") {
  Trace trace = constant_sales_trace(20);
  SimConfig config;
  config.honeytoken_budget = 15;
  config.goal.mode = GoalMode::RandomSales;
  config.seed = 7;

  auto reports = run_batch(trace, config, 5);
  REQUIRE(reports.size() == 5);
  for (size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].seed == Rng::derive(7, i));
  }

  auto again = run_batch(trace, config, 5);
  for (size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].attacker_view.apparent_sales ==
          again[i].attacker_view.apparent_sales);
  }
}

TEST_CASE("a 150-step run with 450 tags finishes quickly") {
  Trace trace;
  trace.item_type = {0xAB, "bulk"};
  trace.initial_stock = 150;
  for (uint64_t t = 1; t <= 150; ++t) trace.steps.push_back({t, 2, 2});

  SimConfig config;
  config.honeytoken_budget = 300;
  config.goal.mode = GoalMode::RandomInventory;
  config.seed = 1;

  auto start = std::chrono::steady_clock::now();
  SimulationReport report = run(trace, config);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  CHECK(elapsed.count() < 1.0);
  CHECK(report.attacker_view.inventory.size() == 151);
}

TEST_CASE("invalid traces are rejected before the first step") {
  Trace bad;
  bad.item_type = {0xAB, "bad"};
  bad.initial_stock = 1;
  bad.steps = {{1, 5, 0}};
  SimConfig config;
  CHECK_THROWS_AS(run(bad, config), TraceError);
}
