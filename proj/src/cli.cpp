#include "mqdyn/errors.hpp"
#include "mqdyn/runner.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace mqdyn {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct RunOptions {
  std::string preset = "custom";
  std::optional<int> n_spins;
  std::optional<std::string> geometry;
  double d_nn = 1.0;
  std::optional<double> beta_norm;
  std::optional<double> beta_b;
  std::optional<double> tau_max;
  int tau_points = 500;
  std::optional<std::string> pairs;
  std::string orders;
  std::string out;
  std::string format = "csv";
  int workers = 1;
  bool lenient = false;
};

RunConfig to_config(const RunOptions& o) {
  RunConfig c;
  c.preset = parse_preset(o.preset);
  if (c.preset != Preset::custom && (o.n_spins || o.geometry || o.pairs)) {
    throw ConfigError("--n, --geometry and --pairs are fixed by preset " + o.preset);
  }
  if (c.preset == Preset::custom && !o.n_spins) throw ConfigError("--n is required without a preset");
  if (o.n_spins) c.n_spins = *o.n_spins;
  if (o.geometry) {
    try {
      c.geometry = parse_geometry(*o.geometry);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (o.pairs) c.pairs = parse_pairs(*o.pairs);
  c.d_nn = o.d_nn;
  if (o.beta_b) c.thermal = ThermalConfig::direct(*o.beta_b);
  if (o.beta_norm) c.thermal = ThermalConfig::norm_target(*o.beta_norm);
  c.tau_max = o.tau_max;
  c.tau_points = o.tau_points;
  c.emit_orders = parse_orders(o.orders);
  c.output_path = o.out;
  c.format = parse_format(o.format);
  c.workers = o.workers;
  c.strict = !o.lenient;
  return c;
}

int execute_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = normalize(to_config(opts));
    const RunResult result = run(config);
    const auto files = emit(result, config.format, config.output_path);
    for (const auto& f : files) out << "wrote " << f.string() << '\n';
    for (const auto& w : result.metadata.warnings) err << "warning: " << w << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple-quantum coherence and pairwise entanglement dynamics of dipolar spin clusters",
               "mqdyn"};
  app.require_subcommand(1);

  RunOptions opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one system over a uniform tau grid");
  run_cmd->add_option("--preset", opts.preset, "fig1 | fig2 | fig3 | custom")->capture_default_str();
  run_cmd->add_option("--n", opts.n_spins, "Number of spins (custom preset)");
  run_cmd->add_option("--geometry", opts.geometry, "chain | ring (custom preset)");
  run_cmd->add_option("--dnn", opts.d_nn, "Nearest-neighbour coupling in 1/s")->capture_default_str();
  auto* norm = run_cmd->add_option("--beta-norm", opts.beta_norm, "beta*||omega0 Iz||, giving b = 2g/N");
  auto* direct = run_cmd->add_option("--beta-b", opts.beta_b, "Zeeman exponent b = beta*omega0 (default 10)");
  norm->excludes(direct);
  run_cmd->add_option("--tau-max", opts.tau_max, "Last grid point in s (default 10/dnn)");
  run_cmd->add_option("--tau-points", opts.tau_points, "Grid size (>= 2)")->capture_default_str();
  run_cmd->add_option("--pairs", opts.pairs, "Site pairs, e.g. \"1-2,1-3\" (custom preset)");
  run_cmd->add_option("--orders", opts.orders, "Integrated orders to emit, e.g. \"0,2,4\"");
  run_cmd->add_option("--out", opts.out, "Output data file")->required();
  run_cmd->add_option("--format", opts.format, "csv | json")->capture_default_str();
  run_cmd->add_option("--workers", opts.workers, "Worker threads")->capture_default_str();
  run_cmd->add_flag("--lenient", opts.lenient, "Report invariant violations as warnings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  return execute_run(opts, out, err);
}

}  // namespace mqdyn
