#include "mqdyn/runner.hpp"

#include "mqdyn/coherence.hpp"
#include "mqdyn/dynamics.hpp"
#include "mqdyn/entanglement.hpp"
#include "mqdyn/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#ifndef MQDYN_VERSION
#define MQDYN_VERSION "0.0.0"
#endif

namespace mqdyn {

std::string_view to_string(Preset p) noexcept {
  switch (p) {
    case Preset::fig1: return "fig1";
    case Preset::fig2: return "fig2";
    case Preset::fig3: return "fig3";
    case Preset::custom: return "custom";
  }
  return "custom";
}

Preset parse_preset(std::string_view text) {
  if (text == "fig1") return Preset::fig1;
  if (text == "fig2") return Preset::fig2;
  if (text == "fig3") return Preset::fig3;
  if (text == "custom") return Preset::custom;
  throw ConfigError("unknown preset '" + std::string(text) + "' (expected fig1, fig2, fig3 or custom)");
}

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::vector<SitePair> parse_pairs(std::string_view text) {
  std::vector<SitePair> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) {
    const auto parts = split(trim(item), '-');
    if (parts.size() != 2) throw ConfigError("pair '" + std::string(item) + "' is not of the form m-n");
    out.push_back({parse_int(parts[0], "site"), parse_int(parts[1], "site")});
  }
  return out;
}

std::vector<int> parse_orders(std::string_view text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) out.push_back(parse_int(item, "order"));
  return out;
}

std::string pair_label(const SitePair& p) {
  return std::to_string(p.m) + "-" + std::to_string(p.n);
}

RunConfig preset_config(Preset p) {
  RunConfig c;
  c.preset = p;
  switch (p) {
    case Preset::fig1:
      c.n_spins = 4;
      c.geometry = Geometry::chain;
      c.pairs = {{1, 2}, {1, 3}, {1, 4}};
      break;
    case Preset::fig2:
      c.n_spins = 6;
      c.geometry = Geometry::ring;
      c.pairs = {{1, 2}, {1, 3}, {1, 4}};
      c.emit_orders = {6};
      break;
    case Preset::fig3:
      c.n_spins = 10;
      c.geometry = Geometry::chain;
      c.pairs = {{1, 2}, {1, 3}, {1, 10}};
      c.emit_orders = {10};
      break;
    case Preset::custom:
      break;
  }
  return c;
}

RunConfig normalize(const RunConfig& config) {
  RunConfig c = config;
  if (c.preset != Preset::custom) {
    const RunConfig p = preset_config(c.preset);
    c.n_spins = p.n_spins;
    c.geometry = p.geometry;
    c.pairs = p.pairs;
    // Preset orders are extras on top of whatever was requested.
    for (int k : p.emit_orders) {
      if (!c.emit_orders.empty() && std::find(c.emit_orders.begin(), c.emit_orders.end(), k) == c.emit_orders.end()) {
        c.emit_orders.push_back(k);
      }
    }
  }

  if (c.n_spins < 2 || c.n_spins > kMaxSpins) {
    throw ConfigError("spin count must lie in [2, " + std::to_string(kMaxSpins) + "], got " +
                      std::to_string(c.n_spins));
  }
  if (!(c.d_nn > 0.0) || !std::isfinite(c.d_nn)) throw ConfigError("d_nn must be positive and finite");
  if (!std::isfinite(c.thermal.value)) throw ConfigError("thermal value must be finite");
  if (!c.tau_max) c.tau_max = 10.0 / c.d_nn;
  if (!(*c.tau_max > 0.0) || !std::isfinite(*c.tau_max)) throw ConfigError("tau_max must be positive and finite");
  if (c.tau_points < 2) throw ConfigError("tau_points must be at least 2");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");

  for (const auto& p : c.pairs) {
    try {
      validate_pair(p, c.n_spins);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < c.pairs.size(); ++j) {
      if (c.pairs[i] == c.pairs[j]) throw ConfigError("duplicate pair " + pair_label(c.pairs[i]));
    }
  }

  if (c.emit_orders.empty()) {
    for (int k = 0; k <= c.n_spins; k += 2) c.emit_orders.push_back(k);
  }
  std::set<int> seen;
  for (int k : c.emit_orders) {
    if (std::abs(k) > c.n_spins || k % 2 != 0) {
      throw ConfigError("order " + std::to_string(k) + " is not an even order in [-N, N]");
    }
    if (!seen.insert(k).second) throw ConfigError("duplicate order " + std::to_string(k));
  }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kOddOrderTol = 1e-12;
constexpr double kResidueTol = 1e-10;
constexpr double kSymmetryTol = 1e-10;
constexpr double kConservationTol = 1e-10;

struct Context {
  const RunConfig& config;
  const EigenbasisEvolution& rho;
  const EigenbasisEvolution& rho_z;
  double trace_ref;
};

class Checker {
 public:
  Checker(bool strict, double tau) : strict_(strict), tau_(tau) {}

  void require(bool ok, const std::string& what, double value) {
    if (ok) return;
    std::ostringstream msg;
    msg << what << " at tau=" << format_value(tau_) << " (" << value << ")";
    if (strict_) throw NumericalError(msg.str());
    warnings.push_back(msg.str());
  }

  std::vector<std::string> warnings;

 private:
  bool strict_;
  double tau_;
};

RunRow compute_row(const Context& ctx, double tau, std::vector<std::string>& warnings) {
  const RunConfig& c = ctx.config;
  Checker check(c.strict, tau);

  const DenseOperator rho = ctx.rho.at(tau);
  DenseOperator rho_z = ctx.rho_z.at(tau);
  if (!rho.all_finite() || !rho_z.all_finite()) {
    throw NumericalError("non-finite entries in evolved operators at tau=" + format_value(tau));
  }

  check.require(rho.hermiticity_defect() <= kHermitianTol, "rho(tau) not Hermitian", rho.hermiticity_defect());
  check.require(std::abs(rho.trace() - 1.0) <= kTraceTol, "Tr rho(tau) != 1", std::abs(rho.trace() - 1.0));
  check.require(rho_z.hermiticity_defect() <= kHermitianTol, "rho_z(tau) not Hermitian",
                rho_z.hermiticity_defect());

  const CoherenceDecomposition parts(std::move(rho_z));
  const double odd = parts.max_abs_odd();
  check.require(odd <= kOddOrderTol, "odd-order part of rho_z(tau)", odd);

  const CoherenceSpectrum spectrum = integrated_intensities(rho, parts, tau);
  check.require(spectrum.max_imag_residue <= kResidueTol, "imaginary residue of J_k", spectrum.max_imag_residue);
  check.require(spectrum.asymmetry() <= kSymmetryTol, "J_k != J_-k", spectrum.asymmetry());
  const double drift = std::abs(spectrum.total() - ctx.trace_ref);
  check.require(drift <= kConservationTol, "sum_k J_k != Tr[rho_eq I_z]", drift);

  RunRow row;
  row.tau = tau;
  for (int k : c.emit_orders) row.intensities.push_back(spectrum.at(k));

  for (const auto& pair : c.pairs) {
    const PairSpectrum ps = reduced_intensities(rho, parts, pair, tau);
    check.require(ps.max_imag_residue <= kResidueTol, "imaginary residue of J_k^mn " + pair_label(pair),
                  ps.max_imag_residue);
    const double pair_asym = std::abs(ps.at(2) - ps.at(-2));
    check.require(pair_asym <= kSymmetryTol, "J_2^mn != J_-2^mn " + pair_label(pair), pair_asym);

    double c_mn = 0.0;
    try {
      c_mn = concurrence(PairState(partial_trace_to_pair(rho, pair), pair, tau));
    } catch (const std::invalid_argument& e) {
      throw NumericalError("reduced state " + pair_label(pair) + " at tau=" + format_value(tau) + ": " + e.what());
    }
    row.pairs.push_back({pair, ps.at(0), ps.at(2), ps.at(-2), c_mn, entanglement_of_formation(c_mn)});
  }

  warnings = std::move(check.warnings);
  return row;
}

}  // namespace

RunResult run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.metadata.config = normalize(config);
  result.metadata.version = MQDYN_VERSION;
  const RunConfig& c = result.metadata.config;

  const SpinSystem sys = build_couplings(c.geometry, c.n_spins, c.d_nn);
  const SpectralForm sf = spectral_decompose(build_h_mq(sys));
  const DenseOperator rho_eq = thermal_state(c.n_spins, c.thermal);
  const DenseOperator iz = total_iz(c.n_spins);
  result.metadata.exponent_b = c.thermal.exponent(c.n_spins);
  result.metadata.trace_rho_eq_iz = (rho_eq * iz).trace().real();

  const EigenbasisEvolution rho_evolution(sf, rho_eq);
  const EigenbasisEvolution iz_evolution(sf, iz);
  const Context ctx{c, rho_evolution, iz_evolution, result.metadata.trace_rho_eq_iz};

  const int points = c.tau_points;
  const double tau_max = *c.tau_max;
  auto tau_at = [&](int i) { return i == points - 1 ? tau_max : tau_max * i / (points - 1); };

  std::vector<RunRow> rows(static_cast<std::size_t>(points));
  std::vector<std::vector<std::string>> row_warnings(static_cast<std::size_t>(points));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(points));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&]() {
    while (!failed.load()) {
      const int i = next.fetch_add(1);
      if (i >= points) break;
      const auto idx = static_cast<std::size_t>(i);
      try {
        rows[idx] = compute_row(ctx, tau_at(i), row_warnings[idx]);
      } catch (...) {
        errors[idx] = std::current_exception();
        failed.store(true);
      }
    }
  };

  const int n_workers = std::min(c.workers, points);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& w : row_warnings) {
    for (auto& msg : w) result.metadata.warnings.push_back(std::move(msg));
  }
  result.rows = std::move(rows);
  result.metadata.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace mqdyn
