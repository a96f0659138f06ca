// mirage command line: trace generation, simulation runs, trend analysis
// and budget sweeps for honeytoken-based inventory obfuscation.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mirage/analysis.hpp"
#include "mirage/engine.hpp"
#include "mirage/kvconfig.hpp"
#include "mirage/report_io.hpp"
#include "mirage/trace.hpp"

namespace {

using namespace mirage;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitTraceError = 2;

GoalMode parse_goal(const std::string& name) {
  if (name == "flat" || name == "flat-inventory") return GoalMode::FlatInventory;
  if (name == "flat-sales") return GoalMode::FlatSales;
  if (name == "flat-restock") return GoalMode::FlatRestock;
  if (name == "random" || name == "random-sales") return GoalMode::RandomSales;
  if (name == "random-restock") return GoalMode::RandomRestock;
  if (name == "random-inventory") return GoalMode::RandomInventory;
  throw ConfigError("unknown goal '" + name +
                    "' (expected flat-sales, flat-restock, flat-inventory, "
                    "random-sales, random-restock or random-inventory)");
}

EpcType parse_epc(const std::string& text) {
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(text, &pos, 16);
    if (pos != text.size() || v > 0xffffffffull) throw std::invalid_argument(text);
    return static_cast<EpcType>(v);
  } catch (const std::exception&) {
    throw ConfigError("bad epc_type '" + text + "' (expected hex, e.g. 0xab)");
  }
}

uint64_t resolve_seed(const std::optional<uint64_t>& flag, const KvConfig& cfg) {
  if (flag) return *flag;
  if (cfg.has("seed")) return cfg.get_u64("seed", 0);
  if (const char* env = std::getenv("MIRAGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("MIRAGE_SEED is not an integer");
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string trace_path;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::string> goal;
  std::optional<uint64_t> budget;
  std::optional<double> budget_mult;
  std::optional<uint64_t> window;
  std::optional<double> flat_mult;
  std::optional<uint64_t> jitter;
  std::optional<uint64_t> bootstrap_goal;
  std::optional<uint64_t> clamp_tokens;
  std::optional<uint64_t> clamp_items;
  std::optional<double> av_default;
  std::optional<uint64_t> seed;
  std::optional<double> p0, n0, slope, pmin;
  std::optional<double> read_lo, read_hi, write_lo, write_hi;
  std::vector<std::string> exclude_epcs;
};

SimConfig build_sim_config(const SimulateArgs& args, const KvConfig& cfg,
                           const Trace& trace) {
  SimConfig sim;
  sim.goal.mode = parse_goal(args.goal ? *args.goal : cfg.get_string("goal", "flat-inventory"));
  sim.goal.window = static_cast<uint32_t>(args.window ? *args.window : cfg.get_u64("window", 30));
  if (sim.goal.window < 1) throw ConfigError("field 'window' must be >= 1");
  sim.goal.flat_multiplier =
      args.flat_mult ? *args.flat_mult : cfg.get_double("flat_multiplier", 1.10);
  if (sim.goal.flat_multiplier < 1.0) {
    throw ConfigError("field 'flat_multiplier' must be >= 1");
  }
  if (args.jitter) {
    sim.goal.random_jitter_max = *args.jitter;
  } else if (cfg.has("jitter")) {
    sim.goal.random_jitter_max = cfg.get_u64("jitter", 0);
  }
  sim.goal.bootstrap_goal =
      args.bootstrap_goal ? *args.bootstrap_goal : cfg.get_u64("bootstrap_goal", 0);
  bool have_clamp_tokens = args.clamp_tokens || cfg.has("clamp.tokens");
  bool have_clamp_items = args.clamp_items || cfg.has("clamp.items");
  if (have_clamp_tokens != have_clamp_items) {
    throw ConfigError("capacity clamp needs both 'clamp.tokens' and 'clamp.items'");
  }
  if (have_clamp_tokens) {
    sim.goal.capacity_clamp = CapacityClamp{
        args.clamp_tokens ? *args.clamp_tokens : cfg.get_u64("clamp.tokens", 0),
        args.clamp_items ? *args.clamp_items : cfg.get_u64("clamp.items", 0)};
  }
  sim.av_default = args.av_default ? *args.av_default : cfg.get_double("av_default", 10.0);

  if (args.budget) {
    sim.honeytoken_budget = *args.budget;
  } else if (cfg.has("budget")) {
    sim.honeytoken_budget = cfg.get_u64("budget", 0);
  } else {
    double mult = args.budget_mult ? *args.budget_mult : cfg.get_double("budget_mult", 1.0);
    if (mult < 0.0) throw ConfigError("field 'budget_mult' must be >= 0");
    sim.honeytoken_budget =
        static_cast<uint64_t>(mult * static_cast<double>(trace.initial_stock) + 0.5);
  }

  ChannelParams& ch = sim.channel;
  ch.base_read_probability = args.p0 ? *args.p0 : cfg.get_double("channel.p0", ch.base_read_probability);
  ch.degradation_start = args.n0 ? *args.n0 : cfg.get_double("channel.n0", ch.degradation_start);
  ch.degradation_slope = args.slope ? *args.slope : cfg.get_double("channel.slope", ch.degradation_slope);
  ch.min_read_probability = args.pmin ? *args.pmin : cfg.get_double("channel.p_min", ch.min_read_probability);
  ch.read_latency_low_ms = args.read_lo ? *args.read_lo : cfg.get_double("channel.read_lo", ch.read_latency_low_ms);
  ch.read_latency_high_ms = args.read_hi ? *args.read_hi : cfg.get_double("channel.read_hi", ch.read_latency_high_ms);
  ch.write_latency_low_ms = args.write_lo ? *args.write_lo : cfg.get_double("channel.write_lo", ch.write_latency_low_ms);
  ch.write_latency_high_ms = args.write_hi ? *args.write_hi : cfg.get_double("channel.write_hi", ch.write_latency_high_ms);
  try {
    ch.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  for (const std::string& epc : args.exclude_epcs) {
    sim.extra_excluded_epcs.push_back(parse_epc(epc));
  }
  sim.seed = resolve_seed(args.seed, cfg);
  return sim;
}

int cmd_simulate(const SimulateArgs& args) {
  KvConfig cfg;
  if (!args.config_path.empty()) cfg = KvConfig::load(args.config_path);
  std::string trace_path =
      !args.trace_path.empty() ? args.trace_path : cfg.get_string("trace", "");
  if (trace_path.empty()) {
    throw ConfigError("missing required field 'trace'");
  }
  Trace trace = load_trace(trace_path);
  SimConfig sim = build_sim_config(args, cfg, trace);
  SimulationReport report = run(trace, sim);
  std::string out_dir = args.out_dir != "." ? args.out_dir : cfg.get_string("out_dir", ".");
  write_simulation_outputs(out_dir, report, trace, sim);
  std::cout << "wrote report.csv ground_truth.csv correlogram.csv overhead.csv "
               "summary.txt to "
            << out_dir << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen-trace

struct GenTraceArgs {
  std::string scenario;
  std::string out = "trace.csv";
  std::string epc = "0xab";
  std::string epc_second = "0xa2";
  std::optional<uint64_t> seed;
  // discount
  uint64_t base = 2, spike = 20, period = 30;
  // threshold
  uint64_t threshold = 10, restock = 50, max_sale = 6;
  // competing
  uint64_t lo = 2, hi = 120, drift = 1, noise = 2;
  uint64_t steps = 0;  // 0 = scenario default
  std::optional<uint64_t> initial;
};

int cmd_gen_trace(const GenTraceArgs& args) {
  Rng rng(resolve_seed(args.seed, KvConfig{}));
  try {
    if (args.scenario == "discount") {
      DiscountCycleParams p{args.base, args.spike, args.period,
                            args.steps ? args.steps : 90, args.initial};
      save_trace(args.out, gen_discount_cycle(p, parse_epc(args.epc)));
      std::cout << "wrote " << args.out << '\n';
    } else if (args.scenario == "threshold") {
      ThresholdRestockParams p{args.threshold, args.restock,
                               args.steps ? args.steps : 60, args.max_sale,
                               args.initial};
      save_trace(args.out, gen_threshold_restock(p, parse_epc(args.epc), rng));
      std::cout << "wrote " << args.out << '\n';
    } else if (args.scenario == "competing") {
      CompetingProductsParams p;
      p.steps = args.steps ? args.steps : 36;
      p.sales_low = args.lo;
      p.sales_high = args.hi;
      p.drift = args.drift;
      p.noise = args.noise;
      p.initial_stock = args.initial;
      auto [first, second] =
          gen_competing_products(p, parse_epc(args.epc), parse_epc(args.epc_second), rng);
      std::string stem = args.out;
      if (stem.size() > 4 && stem.ends_with(".csv")) stem.resize(stem.size() - 4);
      save_trace(stem + "_item1.csv", first);
      save_trace(stem + "_item2.csv", second);
      std::cout << "wrote " << stem << "_item1.csv " << stem << "_item2.csv\n";
    } else {
      throw ConfigError("unknown scenario '" + args.scenario +
                        "' (expected discount, threshold or competing)");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());  // bad generator parameters
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string series_path;
  std::string column = "sales";
  std::string out_prefix;
  std::optional<uint64_t> max_lag;
};

int cmd_analyze(const AnalyzeArgs& args) {
  TrendSeries series;
  try {
    series = load_trend_csv(args.series_path);
  } catch (const std::exception& e) {
    throw TraceError(e.what());
  }
  std::vector<uint64_t> values;
  if (args.column == "inventory") {
    values = series.inventory;
  } else if (args.column == "sales") {
    values = series.apparent_sales;
  } else if (args.column == "restock") {
    values = series.apparent_restock;
  } else {
    throw ConfigError("unknown column '" + args.column +
                      "' (expected inventory, sales or restock)");
  }

  uint32_t max_lag = args.max_lag ? static_cast<uint32_t>(*args.max_lag)
                                  : default_max_lag(values.size());
  Correlogram correlogram;
  FlatnessReport flat;
  try {
    correlogram = autocorrelation(to_doubles(values), max_lag);
    flat = flatness(to_doubles(values));
  } catch (const std::invalid_argument& e) {
    throw TraceError(e.what());  // insufficient data
  }
  save_correlogram_csv(args.out_prefix + "correlogram.csv", correlogram);
  save_flatness_csv(args.out_prefix + "flatness.csv", flat);
  std::cout << "wrote " << args.out_prefix << "correlogram.csv " << args.out_prefix
            << "flatness.csv\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string trace_path;
  std::string goal = "random-sales";
  std::string budgets = "1,1.5,3";
  uint64_t seeds = 30;
  std::optional<uint64_t> seed;
  std::string out = "tradeoff.csv";
};

std::vector<double> parse_budget_list(const std::string& text) {
  std::vector<double> budgets;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      size_t pos = 0;
      double v = std::stod(token, &pos);
      if (pos != token.size() || v < 0.0) throw std::invalid_argument(token);
      budgets.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("bad budget multiplier '" + token + "'");
    }
  }
  if (budgets.empty()) throw ConfigError("empty budget list");
  return budgets;
}

int cmd_sweep(const SweepArgs& args) {
  Trace trace = load_trace(args.trace_path);
  std::vector<double> budgets = parse_budget_list(args.budgets);
  uint64_t master_seed = resolve_seed(args.seed, KvConfig{});

  std::ostringstream out;
  out << "budget_mult,budget,mean_abs_acf_mean,mean_abs_acf_std,"
         "read_success_mean,per_step_overhead_ms_mean\n";
  for (double mult : budgets) {
    SimConfig sim;
    sim.goal.mode = parse_goal(args.goal);
    sim.honeytoken_budget =
        static_cast<uint64_t>(mult * static_cast<double>(trace.initial_stock) + 0.5);
    sim.seed = master_seed;
    auto reports = run_batch(trace, sim, args.seeds);

    double acf_sum = 0.0, acf_sq = 0.0, success_sum = 0.0, overhead_sum = 0.0;
    for (const SimulationReport& r : reports) {
      double acf = mean_abs_acf(r.attacker_sales_acf);
      acf_sum += acf;
      acf_sq += acf * acf;
      double s = 0.0;
      for (double v : r.read_success) s += v;
      success_sum += s / static_cast<double>(r.read_success.size());
      double o = 0.0;
      for (double v : r.overhead.per_step_overhead_ms) o += v;
      overhead_sum += o / static_cast<double>(r.overhead.per_step_overhead_ms.size());
    }
    const double n = static_cast<double>(reports.size());
    double acf_mean = acf_sum / n;
    double acf_var = n > 1 ? (acf_sq - n * acf_mean * acf_mean) / (n - 1) : 0.0;
    out << format_fixed(mult) << ',' << sim.honeytoken_budget << ','
        << format_fixed(acf_mean) << ','
        << format_fixed(acf_var > 0 ? std::sqrt(acf_var) : 0.0) << ','
        << format_fixed(success_sum / n) << ',' << format_fixed(overhead_sum / n)
        << '\n';
  }
  write_file_atomic(args.out, out.str());
  std::cout << "wrote " << args.out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

template <class T>
void add_opt(CLI::App* cmd, const std::string& name, std::optional<T>& target,
             const std::string& help) {
  cmd->add_option_function<T>(
         name, [&target](const T& v) { target = v; }, help)
      ->expected(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"honeytoken obfuscation simulator for RFID retail inventories"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "run one trace through the defense");
  sim->add_option("--trace", sim_args.trace_path, "trace CSV to replay");
  sim->add_option("--config", sim_args.config_path, "key = value config file");
  sim->add_option("--out-dir", sim_args.out_dir, "directory for the report files");
  add_opt(sim, "--goal", sim_args.goal, "flat-sales|flat-restock|flat-inventory|random-sales|random-restock|random-inventory");
  add_opt(sim, "--budget", sim_args.budget, "honeytoken count");
  add_opt(sim, "--budget-mult", sim_args.budget_mult, "honeytokens as a multiple of initial stock");
  add_opt(sim, "--window", sim_args.window, "history window (scan steps)");
  add_opt(sim, "--flat-mult", sim_args.flat_mult, "flat goal multiplier");
  add_opt(sim, "--jitter", sim_args.jitter, "random goal jitter (default: budget)");
  add_opt(sim, "--bootstrap-goal", sim_args.bootstrap_goal, "goal before history exists");
  add_opt(sim, "--clamp-tokens", sim_args.clamp_tokens,
          "capacity clamp: honeytokens on hand (goal capped near tokens+items)");
  add_opt(sim, "--clamp-items", sim_args.clamp_items,
          "capacity clamp: max real items ever shelved");
  add_opt(sim, "--av-default", sim_args.av_default, "average-age fallback");
  add_opt(sim, "--seed", sim_args.seed, "run seed (fallback: config, MIRAGE_SEED)");
  add_opt(sim, "--p0", sim_args.p0, "base read probability");
  add_opt(sim, "--n0", sim_args.n0, "tag count where read degradation starts");
  add_opt(sim, "--slope", sim_args.slope, "read probability lost per extra tag");
  add_opt(sim, "--pmin", sim_args.pmin, "read probability floor");
  add_opt(sim, "--read-lo", sim_args.read_lo, "read latency lower bound (ms)");
  add_opt(sim, "--read-hi", sim_args.read_hi, "read latency upper bound (ms)");
  add_opt(sim, "--write-lo", sim_args.write_lo, "write latency lower bound (ms)");
  add_opt(sim, "--write-hi", sim_args.write_hi, "write latency upper bound (ms)");
  sim->add_option("--exclude-epc", sim_args.exclude_epcs,
                  "extra type codes scrambled tokens must avoid (hex)");

  GenTraceArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-trace", "generate a synthetic trace");
  gen->add_option("scenario", gen_args.scenario, "discount|threshold|competing")
      ->required();
  gen->add_option("-o,--out", gen_args.out, "output CSV (or prefix for competing)");
  gen->add_option("--epc", gen_args.epc, "item type code (hex)");
  gen->add_option("--epc2", gen_args.epc_second, "second item type code (hex)");
  add_opt(gen, "--seed", gen_args.seed, "generator seed");
  gen->add_option("--steps", gen_args.steps, "trace length");
  add_opt(gen, "--initial", gen_args.initial, "initial stock override");
  gen->add_option("--base", gen_args.base, "discount: steady sales per step");
  gen->add_option("--spike", gen_args.spike, "discount: sales at the spike");
  gen->add_option("--period", gen_args.period, "discount: steps between spikes");
  gen->add_option("--threshold", gen_args.threshold, "threshold: restock trigger");
  gen->add_option("--restock", gen_args.restock, "threshold: restock amount");
  gen->add_option("--max-sale", gen_args.max_sale, "threshold: per-step sales cap");
  gen->add_option("--lo", gen_args.lo, "competing: sales ramp start");
  gen->add_option("--hi", gen_args.hi, "competing: sales ramp end");
  gen->add_option("--drift", gen_args.drift, "competing: net stock change per step");
  gen->add_option("--noise", gen_args.noise, "competing: sales jitter");

  AnalyzeArgs an_args;
  CLI::App* an = app.add_subcommand("analyze", "correlogram + flatness of a series");
  an->add_option("--series", an_args.series_path, "series CSV (report/ground truth)")
      ->required();
  an->add_option("--column", an_args.column, "inventory|sales|restock");
  an->add_option("--out-prefix", an_args.out_prefix, "prefix for output files");
  add_opt(an, "--max-lag", an_args.max_lag, "correlogram lag count");

  SweepArgs sw_args;
  CLI::App* sw = app.add_subcommand("sweep", "budget multipliers x seeds tradeoff table");
  sw->add_option("--trace", sw_args.trace_path, "trace CSV to replay")->required();
  sw->add_option("--goal", sw_args.goal, "goal mode (default random-sales)");
  sw->add_option("--budgets", sw_args.budgets, "comma list of budget multipliers");
  sw->add_option("--seeds", sw_args.seeds, "runs per budget");
  add_opt(sw, "--seed", sw_args.seed, "master seed");
  sw->add_option("-o,--out", sw_args.out, "output table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (gen->parsed()) return cmd_gen_trace(gen_args);
    if (an->parsed()) return cmd_analyze(an_args);
    if (sw->parsed()) return cmd_sweep(sw_args);
  } catch (const TraceError& e) {
    std::cerr << "trace error: " << e.what() << '\n';
    return kExitTraceError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}
