#include "mirage/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mirage {

namespace {

const char* goal_mode_name(GoalMode mode) {
  switch (mode) {
    case GoalMode::FlatSales: return "flat-sales";
    case GoalMode::FlatRestock: return "flat-restock";
    case GoalMode::FlatInventory: return "flat-inventory";
    case GoalMode::RandomSales: return "random-sales";
    case GoalMode::RandomRestock: return "random-restock";
    case GoalMode::RandomInventory: return "random-inventory";
  }
  return "unknown";
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<std::vector<std::string>> read_csv_rows(
    const std::filesystem::path& path, const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path.string());
  }
  std::string line;
  bool have_header = false;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      if (line != expected_header) {
        throw std::runtime_error("unexpected header in " + path.string() + ": " + line);
      }
      have_header = true;
      continue;
    }
    rows.push_back(split_fields(line));
  }
  if (!have_header) {
    throw std::runtime_error("empty file: " + path.string());
  }
  return rows;
}

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return std::string(buf);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write file: " + tmp.string());
    }
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void save_trend_csv(const std::filesystem::path& path, const TrendSeries& series) {
  std::ostringstream out;
  out << "step,inventory,apparent_sales,apparent_restock\n";
  for (size_t i = 0; i < series.inventory.size(); ++i) {
    out << (series.first_step + i) << ',' << series.inventory[i] << ',';
    if (i == 0) {
      out << ',';
    } else {
      out << series.apparent_sales[i - 1] << ',' << series.apparent_restock[i - 1];
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

TrendSeries load_trend_csv(const std::filesystem::path& path) {
  auto rows = read_csv_rows(path, "step,inventory,apparent_sales,apparent_restock");
  TrendSeries series;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 4) {
      throw std::runtime_error("malformed series row in " + path.string());
    }
    if (i == 0) {
      series.first_step = std::stoull(row[0]);
    }
    series.inventory.push_back(std::stoull(row[1]));
    if (i > 0) {
      if (row[2].empty() || row[3].empty()) {
        throw std::runtime_error("missing diff fields in " + path.string());
      }
      series.apparent_sales.push_back(std::stoull(row[2]));
      series.apparent_restock.push_back(std::stoull(row[3]));
    }
  }
  return series;
}

void save_correlogram_csv(const std::filesystem::path& path,
                          const Correlogram& correlogram) {
  std::ostringstream out;
  out << "lag,r\n";
  for (size_t k = 0; k < correlogram.coefficients.size(); ++k) {
    out << (k + 1) << ',' << format_fixed(correlogram.coefficients[k]) << '\n';
  }
  write_file_atomic(path, out.str());
}

Correlogram load_correlogram_csv(const std::filesystem::path& path) {
  auto rows = read_csv_rows(path, "lag,r");
  Correlogram result;
  for (const auto& row : rows) {
    if (row.size() != 2) {
      throw std::runtime_error("malformed correlogram row in " + path.string());
    }
    result.coefficients.push_back(std::stod(row[1]));
  }
  return result;
}

void save_correlogram_pair_csv(const std::filesystem::path& path,
                               const Correlogram& raw,
                               const Correlogram& mirage) {
  std::ostringstream out;
  out << "lag,raw,mirage\n";
  size_t lags = std::max(raw.coefficients.size(), mirage.coefficients.size());
  for (size_t k = 0; k < lags; ++k) {
    out << (k + 1) << ',';
    if (k < raw.coefficients.size()) out << format_fixed(raw.coefficients[k]);
    out << ',';
    if (k < mirage.coefficients.size()) out << format_fixed(mirage.coefficients[k]);
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

void save_overhead_csv(const std::filesystem::path& path,
                       const OverheadReport& report) {
  std::ostringstream out;
  out << "step,overhead_ms\n";
  for (size_t i = 0; i < report.per_step_overhead_ms.size(); ++i) {
    out << i << ',' << format_fixed(report.per_step_overhead_ms[i]) << '\n';
  }
  write_file_atomic(path, out.str());
}

void save_flatness_csv(const std::filesystem::path& path,
                       const FlatnessReport& report) {
  std::ostringstream out;
  out << "mean,coefficient_of_variation,max_abs_deviation,cv_undefined\n";
  out << format_fixed(report.mean) << ',' << format_fixed(report.coefficient_of_variation)
      << ',' << format_fixed(report.max_abs_deviation) << ','
      << (report.cv_undefined ? 1 : 0) << '\n';
  write_file_atomic(path, out.str());
}

std::string summary_text(const SimulationReport& report, const Trace& trace,
                         const SimConfig& config) {
  std::ostringstream out;
  out << "item=" << trace.item_type.label << '\n';
  out << "epc_type=0x" << std::hex << trace.item_type.epc_type << std::dec << '\n';
  out << "steps=" << trace.steps.size() << '\n';
  out << "initial_stock=" << trace.initial_stock << '\n';
  out << "honeytoken_budget=" << report.honeytoken_budget << '\n';
  out << "goal=" << goal_mode_name(config.goal.mode) << '\n';
  out << "window=" << config.goal.window << '\n';
  out << "seed=" << report.seed << '\n';

  double success_sum = 0.0;
  for (double v : report.read_success) success_sum += v;
  out << "read_success_mean="
      << format_fixed(report.read_success.empty()
                          ? 0.0
                          : success_sum / static_cast<double>(report.read_success.size()))
      << '\n';

  out << "raw_sales_mean_abs_acf=" << format_fixed(mean_abs_acf(report.raw_sales_acf))
      << '\n';
  out << "mirage_sales_mean_abs_acf="
      << format_fixed(mean_abs_acf(report.attacker_sales_acf)) << '\n';
  out << "raw_inventory_cv="
      << format_fixed(report.raw_inventory_flatness.coefficient_of_variation) << '\n';
  out << "mirage_inventory_cv="
      << format_fixed(report.attacker_inventory_flatness.coefficient_of_variation)
      << '\n';

  out << "honeytoken_read_ms=" << format_fixed(report.overhead.total_read_ms) << '\n';
  out << "honeytoken_reads=" << report.overhead.reads_count << '\n';
  out << "write_ms=" << format_fixed(report.overhead.total_write_ms) << '\n';
  out << "writes=" << report.overhead.writes_count << '\n';

  uint64_t sales_shortfall = 0;
  uint64_t restock_shortfall = 0;
  for (const StepShortfall& s : report.shortfalls) {
    sales_shortfall += s.sales_shortfall;
    restock_shortfall += s.restock_shortfall;
  }
  out << "sales_shortfall_total=" << sales_shortfall << '\n';
  out << "restock_shortfall_total=" << restock_shortfall << '\n';
  return out.str();
}

void write_simulation_outputs(const std::filesystem::path& out_dir,
                              const SimulationReport& report,
                              const Trace& trace, const SimConfig& config) {
  std::filesystem::create_directories(out_dir);
  save_trend_csv(out_dir / "report.csv", report.attacker_view);
  save_trend_csv(out_dir / "ground_truth.csv", report.ground_truth);
  save_correlogram_pair_csv(out_dir / "correlogram.csv", report.raw_sales_acf,
                            report.attacker_sales_acf);
  save_overhead_csv(out_dir / "overhead.csv", report.overhead);
  write_file_atomic(out_dir / "summary.txt", summary_text(report, trace, config));
}

}  // namespace mirage
