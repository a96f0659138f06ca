#pragma once

#include <cstdint>
#include <vector>

#include "mirage/analysis.hpp"
#include "mirage/attacker.hpp"
#include "mirage/channel.hpp"
#include "mirage/core.hpp"
#include "mirage/quantifier.hpp"
#include "mirage/trace.hpp"

namespace mirage {

struct SimConfig {
  uint64_t honeytoken_budget = 0;
  GoalPolicy goal;
  ChannelParams channel;
  uint64_t seed = 0;
  double av_default = 10.0;  // real-tag average age before any history exists
  // Type codes a scrambled token must additionally avoid (other products
  // simulated alongside this shelf).
  std::vector<EpcType> extra_excluded_epcs;
  static constexpr uint32_t scans_per_step = 1;
};

struct StepShortfall {
  uint64_t step = 0;
  uint64_t sales_shortfall = 0;
  uint64_t restock_shortfall = 0;
  bool cold_start = false;
};

// Everything one run produces: the database-side truth, the attacker's
// reconstruction, obfuscation metrics for both, and the read/write cost
// of running the defense. A trace of T steps yields T+1 scans (one
// baseline before the first step), so inventories have T+1 points and
// the diff series exactly T.
struct SimulationReport {
  TrendSeries ground_truth;
  TrendSeries attacker_view;
  Correlogram raw_sales_acf;
  Correlogram attacker_sales_acf;
  FlatnessReport raw_inventory_flatness;       // past the bootstrap window
  FlatnessReport attacker_inventory_flatness;  // past the bootstrap window
  OverheadReport overhead;
  std::vector<StepShortfall> shortfalls;
  std::vector<double> read_success;  // per scan, |observed| / tags present
  uint64_t honeytoken_budget = 0;
  uint64_t seed = 0;
};

// Replays the trace step by step: apply real sales/restocks, age every
// tag, plan and program honeytokens, scan, and record what the attacker
// sees. Deterministic given (trace, config).
SimulationReport run(const Trace& trace, const SimConfig& config);

// Independent runs with per-run seeds Rng::derive(config.seed, i).
std::vector<SimulationReport> run_batch(const Trace& trace,
                                        const SimConfig& config,
                                        size_t n_runs);

}  // namespace mirage
