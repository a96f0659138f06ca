#include "mirage/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace mirage {

namespace {

std::string format_message(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return std::string(buf);
}

uint64_t parse_u64(const std::string& text, size_t line_no) {
  size_t pos = 0;
  uint64_t value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw TraceError(format_message("trace parse error at line %zu: bad number '%s'",
                                    line_no, text.c_str()));
  }
  if (pos != text.size()) {
    throw TraceError(format_message("trace parse error at line %zu: bad number '%s'",
                                    line_no, text.c_str()));
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void Trace::validate() const {
  uint64_t stock = initial_stock;
  for (const TraceEvent& e : steps) {
    if (e.sales > stock) {
      throw TraceError(format_message("stock underflow at step %llu",
                                      static_cast<unsigned long long>(e.step)));
    }
    stock = stock - e.sales + e.restock;
  }
}

uint64_t Trace::final_stock() const {
  uint64_t stock = initial_stock;
  for (const TraceEvent& e : steps) stock = stock - e.sales + e.restock;
  return stock;
}

std::vector<uint64_t> Trace::inventory_levels() const {
  std::vector<uint64_t> levels;
  levels.reserve(steps.size() + 1);
  uint64_t stock = initial_stock;
  levels.push_back(stock);
  for (const TraceEvent& e : steps) {
    stock = stock - e.sales + e.restock;
    levels.push_back(stock);
  }
  return levels;
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw TraceError("cannot open trace file: " + path.string());
  }

  Trace trace;
  bool have_sidecar = false;
  bool have_header = false;
  std::string line;
  size_t line_no = 0;
  uint64_t expected_step = 1;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string token;
      while (ss >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key == "initial_stock") {
          trace.initial_stock = parse_u64(value, line_no);
          have_sidecar = true;
        } else if (key == "epc_type") {
          trace.item_type.epc_type =
              static_cast<EpcType>(std::stoull(value, nullptr, 16));
        }
      }
      continue;
    }

    if (!have_header) {
      if (line != "step,sales,restock") {
        throw TraceError(format_message(
            "trace parse error at line %zu: expected header 'step,sales,restock'",
            line_no));
      }
      have_header = true;
      continue;
    }

    auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw TraceError(format_message(
          "trace parse error at line %zu: expected 3 fields, got %zu", line_no,
          fields.size()));
    }
    TraceEvent event;
    event.step = parse_u64(fields[0], line_no);
    event.sales = parse_u64(fields[1], line_no);
    event.restock = parse_u64(fields[2], line_no);
    if (event.step != expected_step) {
      throw TraceError(format_message(
          "trace parse error at line %zu: expected step %llu", line_no,
          static_cast<unsigned long long>(expected_step)));
    }
    ++expected_step;
    trace.steps.push_back(event);
  }

  if (!have_header || trace.steps.empty()) {
    throw TraceError("empty trace: " + path.string());
  }
  if (!have_sidecar) {
    throw TraceError("trace missing '# initial_stock=... epc_type=...' sidecar line: " +
                     path.string());
  }
  if (trace.item_type.label.empty()) {
    trace.item_type.label = path.stem().string();
  }
  trace.validate();
  return trace;
}

void save_trace(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) {
    throw TraceError("cannot write trace file: " + path.string());
  }
  char sidecar[96];
  std::snprintf(sidecar, sizeof(sidecar), "# initial_stock=%llu epc_type=0x%x\n",
                static_cast<unsigned long long>(trace.initial_stock),
                trace.item_type.epc_type);
  out << sidecar << "step,sales,restock\n";
  for (const TraceEvent& e : trace.steps) {
    out << e.step << ',' << e.sales << ',' << e.restock << '\n';
  }
}

Trace gen_discount_cycle(const DiscountCycleParams& params, EpcType epc) {
  if (params.period < 2) {
    throw std::invalid_argument("discount cycle: period must be >= 2");
  }
  if (params.steps < 1) {
    throw std::invalid_argument("discount cycle: steps must be >= 1");
  }
  if (params.spike_sales <= params.base_sales) {
    throw std::invalid_argument("discount cycle: spike must exceed base sales");
  }
  const uint64_t period_total =
      params.base_sales * (params.period - 1) + params.spike_sales;

  Trace trace;
  trace.item_type = {epc, "discount-cycle"};
  trace.initial_stock = params.initial_stock.value_or(period_total);
  for (uint64_t t = 1; t <= params.steps; ++t) {
    TraceEvent e;
    e.step = t;
    if (t % params.period == 0) {
      e.sales = params.spike_sales;
      e.restock = period_total;  // replenish back to the pre-period level
    } else {
      e.sales = params.base_sales;
      e.restock = 0;
    }
    trace.steps.push_back(e);
  }
  trace.validate();
  return trace;
}

Trace gen_threshold_restock(const ThresholdRestockParams& params, EpcType epc,
                            Rng& rng) {
  if (params.steps < 1 || params.restock_amount < 1 || params.threshold < 1) {
    throw std::invalid_argument(
        "threshold restock: steps, threshold and restock must be >= 1");
  }
  Trace trace;
  trace.item_type = {epc, "threshold-restock"};
  trace.initial_stock = params.initial_stock.value_or(params.threshold + params.restock_amount);
  uint64_t stock = trace.initial_stock;
  for (uint64_t t = 1; t <= params.steps; ++t) {
    TraceEvent e;
    e.step = t;
    e.sales = std::min<uint64_t>(rng.uniform_u64(params.max_sale + 1), stock);
    stock -= e.sales;
    if (stock < params.threshold) {
      e.restock = params.restock_amount;
      stock += e.restock;
    }
    trace.steps.push_back(e);
  }
  trace.validate();
  return trace;
}

std::pair<Trace, Trace> gen_competing_products(
    const CompetingProductsParams& params, EpcType epc_first,
    EpcType epc_second, Rng& rng) {
  if (params.steps < 2) {
    throw std::invalid_argument("competing products: steps must be >= 2");
  }
  if (params.sales_high < params.sales_low) {
    throw std::invalid_argument("competing products: sales_high must be >= sales_low");
  }

  auto ramp = [&](uint64_t t, bool rising) {
    const double span = static_cast<double>(params.sales_high - params.sales_low);
    const double frac = static_cast<double>(t - 1) / static_cast<double>(params.steps - 1);
    double base = rising ? params.sales_low + span * frac
                         : params.sales_high - span * frac;
    return static_cast<uint64_t>(base + 0.5);
  };

  auto jitter = [&](uint64_t base) -> uint64_t {
    if (params.noise == 0) return base;
    int64_t delta = static_cast<int64_t>(rng.uniform_u64(2 * params.noise + 1)) -
                    static_cast<int64_t>(params.noise);
    int64_t v = static_cast<int64_t>(base) + delta;
    return v < 0 ? 0 : static_cast<uint64_t>(v);
  };

  auto build = [&](EpcType epc, const char* label, bool rising_sales) {
    Trace trace;
    trace.item_type = {epc, label};
    // The rising-sales product drains `drift` per step; the fading one
    // accumulates `drift` per step (shipments outpace sales).
    const bool draining = rising_sales;
    uint64_t headroom = params.sales_high + 4 * params.noise + 16;
    uint64_t default_initial =
        draining ? params.steps * params.drift + headroom : headroom;
    trace.initial_stock = params.initial_stock.value_or(default_initial);
    uint64_t stock = trace.initial_stock;
    for (uint64_t t = 1; t <= params.steps; ++t) {
      TraceEvent e;
      e.step = t;
      e.sales = std::min<uint64_t>(jitter(ramp(t, rising_sales)), stock);
      e.restock = draining ? (e.sales > params.drift ? e.sales - params.drift : 0)
                           : e.sales + params.drift;
      stock = stock - e.sales + e.restock;
      trace.steps.push_back(e);
    }
    trace.validate();
    return trace;
  };

  return {build(epc_first, "competing-rising", true),
          build(epc_second, "competing-fading", false)};
}

}  // namespace mirage
