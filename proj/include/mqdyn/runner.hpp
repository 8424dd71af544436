// runner.hpp: run configuration, figure presets, orchestration over the τ
// grid, and dataset emission.

#pragma once

#include "mqdyn/model.hpp"
#include "mqdyn/operator_core.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mqdyn {

enum class Preset { fig1, fig2, fig3, custom };
enum class OutputFormat { csv, json };

std::string_view to_string(Preset p) noexcept;
Preset parse_preset(std::string_view text);
std::string_view to_string(OutputFormat f) noexcept;
OutputFormat parse_format(std::string_view text);

// "1-2,1-3" -> {(1,2), (1,3)}. Empty text gives an empty list.
std::vector<SitePair> parse_pairs(std::string_view text);
// "0,2,-2" -> {0, 2, -2}.
std::vector<int> parse_orders(std::string_view text);
std::string pair_label(const SitePair& p);  // "1-2"

struct RunConfig {
  Preset preset = Preset::custom;
  int n_spins = 0;
  Geometry geometry = Geometry::chain;
  double d_nn = 1.0;
  ThermalConfig thermal{};
  std::optional<double> tau_max;  // default 10 / d_nn
  int tau_points = 500;
  std::vector<SitePair> pairs;
  std::vector<int> emit_orders;  // default: every even k in [0, N]
  std::filesystem::path output_path;
  OutputFormat format = OutputFormat::csv;
  int workers = 1;
  bool strict = true;
};

// System, pairs and extra orders fixed by a figure preset:
//   fig1  chain N=4,  pairs 1-2, 1-3, 1-4
//   fig2  ring  N=6,  pairs 1-2, 1-3, 1-4, plus J_6
//   fig3  chain N=10, pairs 1-2, 1-3, 1-10, plus J_10
RunConfig preset_config(Preset p);

// Applies the preset and defaults, then validates. Throws ConfigError.
RunConfig normalize(const RunConfig& config);

struct PairRecord {
  SitePair pair;
  double jred_0 = 0.0;
  double jred_plus2 = 0.0;
  double jred_minus2 = 0.0;
  double concurrence = 0.0;
  double entanglement_of_formation = 0.0;
};

struct RunRow {
  double tau = 0.0;
  std::vector<double> intensities;  // aligned with the emitted orders
  std::vector<PairRecord> pairs;    // aligned with config.pairs
};

struct RunMetadata {
  RunConfig config;  // normalized
  double exponent_b = 0.0;
  double trace_rho_eq_iz = 0.0;
  double wall_seconds = 0.0;
  std::string version;
  std::vector<std::string> warnings;  // lenient-mode invariant violations
};

struct RunResult {
  RunMetadata metadata;
  std::vector<RunRow> rows;
};

// Throws ConfigError or NumericalError. In strict mode every invariant
// violation is a NumericalError; with strict = false it becomes a warning.
RunResult run(const RunConfig& config);

// ------------------------------ emission ------------------------------------

std::vector<std::string> csv_columns(const RunResult& result);
// Scientific notation, 17 significant digits.
std::string format_value(double v);
void write_csv(const RunResult& result, std::ostream& out);
nlohmann::json metadata_json(const RunResult& result);
// Whole result (metadata, columns, rows) as one JSON document.
nlohmann::json result_json(const RunResult& result);

// csv: writes `path` plus the companion metadata `<stem>.meta.json`.
// json: writes `path` as result_json. Returns every file written.
// Throws IoError.
std::vector<std::filesystem::path> emit(const RunResult& result, OutputFormat format,
                                        const std::filesystem::path& path);
std::filesystem::path metadata_path_for(const std::filesystem::path& data_path);

// ------------------------------ CLI -----------------------------------------

// Entry point for the `mqdyn` tool. Returns the process exit status:
// 0 ok, 2 configuration, 3 numerical failure, 4 I/O.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mqdyn
