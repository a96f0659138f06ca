#pragma once

#include <filesystem>
#include <string>

#include "mirage/engine.hpp"

namespace mirage {

// Fixed six-decimal formatting so emitted files diff cleanly.
std::string format_fixed(double value);

// Writes via a temp file plus rename so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

// step,inventory,apparent_sales,apparent_restock; the first row carries
// empty diff fields (there is no preceding scan to diff against).
void save_trend_csv(const std::filesystem::path& path, const TrendSeries& series);
TrendSeries load_trend_csv(const std::filesystem::path& path);

// lag,r
void save_correlogram_csv(const std::filesystem::path& path,
                          const Correlogram& correlogram);
Correlogram load_correlogram_csv(const std::filesystem::path& path);

// lag,raw,mirage for side-by-side plotting.
void save_correlogram_pair_csv(const std::filesystem::path& path,
                               const Correlogram& raw,
                               const Correlogram& mirage);

// step,overhead_ms
void save_overhead_csv(const std::filesystem::path& path,
                       const OverheadReport& report);

// mean,coefficient_of_variation,max_abs_deviation,cv_undefined
void save_flatness_csv(const std::filesystem::path& path,
                       const FlatnessReport& report);

std::string summary_text(const SimulationReport& report, const Trace& trace,
                         const SimConfig& config);

// The standard output bundle of a simulation run: report.csv,
// ground_truth.csv, correlogram.csv, overhead.csv, summary.txt.
void write_simulation_outputs(const std::filesystem::path& out_dir,
                              const SimulationReport& report,
                              const Trace& trace, const SimConfig& config);

}  // namespace mirage
