// model.hpp: dipolar coupling geometry, the double-quantum Hamiltonian and
// the Zeeman thermal state.

#pragma once

#include "mqdyn/operator_core.hpp"

#include <string>
#include <string_view>

namespace mqdyn {

enum class Geometry { chain, ring };

std::string_view to_string(Geometry g) noexcept;
Geometry parse_geometry(std::string_view text);

// N spins with equal spacing and equal field angle. All couplings are in s^-1
// and scale with the nearest-neighbour constant d_nn:
//   chain  D_jk = d_nn / |j-k|^3
//   ring   D_jk = d_nn * [sin(pi/N) / sin(pi|j-k|/N)]^3
class SpinSystem {
 public:
  int n_spins() const noexcept { return n_spins_; }
  Geometry geometry() const noexcept { return geometry_; }
  double d_nn() const noexcept { return d_nn_; }

  // Symmetric in (j, k); throws std::invalid_argument for j == k or
  // out-of-range sites.
  double coupling(int j, int k) const;

  friend SpinSystem build_couplings(Geometry geometry, int n_spins, double d_nn);

 private:
  SpinSystem(int n_spins, Geometry geometry, double d_nn, Eigen::MatrixXd table);

  int n_spins_;
  Geometry geometry_;
  double d_nn_;
  Eigen::MatrixXd table_;  // zero on the diagonal
};

SpinSystem build_couplings(Geometry geometry, int n_spins, double d_nn = 1.0);

// H_MQ = -(1/4) Σ_{j<k} D_jk (I_j^+ I_k^+ + I_j^- I_k^-). Real symmetric.
DenseOperator build_h_mq(const SpinSystem& sys);

// Dimensionless Zeeman exponent b = beta * omega_0 in rho_eq ∝ exp(b I_z).
// In norm-target mode the value g is beta * ||omega_0 I_z|| with the spectral
// norm, so b = 2 g / N. The default b = 10 is the 1 mK / 5 T proton setting,
// beta * hbar * omega_0 ≈ 10.2.
struct ThermalConfig {
  enum class Mode { norm_target, direct };

  Mode mode = Mode::direct;
  double value = 10.0;

  static ThermalConfig direct(double b) { return {Mode::direct, b}; }
  static ThermalConfig norm_target(double g) { return {Mode::norm_target, g}; }

  double exponent(int n_spins) const;
};

// exp(b I_z) / Tr exp(b I_z), diagonal.
DenseOperator thermal_state(int n_spins, const ThermalConfig& tc);

}  // namespace mqdyn
