#include "mqdyn/errors.hpp"
#include "mqdyn/runner.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mqdyn {

std::vector<std::string> csv_columns(const RunResult& result) {
  const RunConfig& c = result.metadata.config;
  std::vector<std::string> cols{"tau"};
  for (int k : c.emit_orders) cols.push_back("J[" + std::to_string(k) + "]");
  for (const auto& p : c.pairs) {
    const std::string label = pair_label(p);
    cols.push_back("Jred[" + label + "][0]");
    cols.push_back("Jred[" + label + "][+2]");
    cols.push_back("Jred[" + label + "][-2]");
    cols.push_back("C[" + label + "]");
    cols.push_back("EF[" + label + "]");
  }
  return cols;
}

std::string format_value(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 16);
  return std::string(buf.data(), ptr);
}

namespace {

std::vector<double> row_values(const RunRow& row) {
  std::vector<double> out{row.tau};
  out.insert(out.end(), row.intensities.begin(), row.intensities.end());
  for (const auto& p : row.pairs) {
    out.insert(out.end(), {p.jred_0, p.jred_plus2, p.jred_minus2, p.concurrence, p.entanglement_of_formation});
  }
  return out;
}

}  // namespace

void write_csv(const RunResult& result, std::ostream& out) {
  const auto cols = csv_columns(result);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : result.rows) {
    const auto values = row_values(row);
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_value(values[i]);
    out << '\n';
  }
}

nlohmann::json metadata_json(const RunResult& result) {
  const RunMetadata& m = result.metadata;
  const RunConfig& c = m.config;
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : c.pairs) pairs.push_back(pair_label(p));
  return {
      {"tool", "mqdyn"},
      {"version", m.version},
      {"preset", to_string(c.preset)},
      {"n_spins", c.n_spins},
      {"geometry", to_string(c.geometry)},
      {"d_nn", c.d_nn},
      {"thermal_mode", c.thermal.mode == ThermalConfig::Mode::direct ? "direct" : "norm_target"},
      {"thermal_value", c.thermal.value},
      {"b", m.exponent_b},
      {"trace_rho_eq_iz", m.trace_rho_eq_iz},
      {"tau_max", c.tau_max.value_or(0.0)},
      {"tau_points", c.tau_points},
      {"pairs", pairs},
      {"orders", c.emit_orders},
      {"columns", csv_columns(result)},
      {"workers", c.workers},
      {"strict", c.strict},
      {"wall_time_s", m.wall_seconds},
      {"warnings", m.warnings},
  };
}

nlohmann::json result_json(const RunResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) rows.push_back(row_values(row));
  return {{"metadata", metadata_json(result)}, {"columns", csv_columns(result)}, {"rows", rows}};
}

std::filesystem::path metadata_path_for(const std::filesystem::path& data_path) {
  std::filesystem::path meta = data_path;
  meta.replace_extension(".meta.json");
  return meta;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << contents;
  f.flush();
  if (!f) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::vector<std::filesystem::path> emit(const RunResult& result, OutputFormat format,
                                        const std::filesystem::path& path) {
  if (path.empty()) throw IoError("no output path given");
  if (format == OutputFormat::json) {
    write_file(path, result_json(result).dump(2) + "\n");
    return {path};
  }
  std::ostringstream csv;
  write_csv(result, csv);
  write_file(path, csv.str());
  const auto meta = metadata_path_for(path);
  write_file(meta, metadata_json(result).dump(2) + "\n");
  return {path, meta};
}

}  // namespace mqdyn
