#include "mqdyn/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace mqdyn {

std::string_view to_string(Geometry g) noexcept {
  return g == Geometry::chain ? "chain" : "ring";
}

Geometry parse_geometry(std::string_view text) {
  if (text == "chain") return Geometry::chain;
  if (text == "ring") return Geometry::ring;
  throw std::invalid_argument("unknown geometry '" + std::string(text) + "' (expected chain or ring)");
}

SpinSystem::SpinSystem(int n_spins, Geometry geometry, double d_nn, Eigen::MatrixXd table)
    : n_spins_(n_spins), geometry_(geometry), d_nn_(d_nn), table_(std::move(table)) {}

double SpinSystem::coupling(int j, int k) const {
  if (j < 1 || k < 1 || j > n_spins_ || k > n_spins_ || j == k) {
    throw std::invalid_argument("SpinSystem::coupling: invalid site pair (" + std::to_string(j) +
                                "," + std::to_string(k) + ")");
  }
  return table_(j - 1, k - 1);
}

SpinSystem build_couplings(Geometry geometry, int n_spins, double d_nn) {
  if (n_spins < 2 || n_spins > kMaxSpins) {
    throw std::invalid_argument("build_couplings: spin count must lie in [2, " +
                                std::to_string(kMaxSpins) + "], got " + std::to_string(n_spins));
  }
  if (!(d_nn > 0.0) || !std::isfinite(d_nn)) {
    throw std::invalid_argument("build_couplings: nearest-neighbour coupling must be positive");
  }

  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n_spins, n_spins);
  const double pi = std::numbers::pi;
  for (int j = 1; j <= n_spins; ++j) {
    for (int k = j + 1; k <= n_spins; ++k) {
      const int sep = k - j;
      double d = 0.0;
      if (geometry == Geometry::chain) {
        d = d_nn / std::pow(static_cast<double>(sep), 3);
      } else {
        d = d_nn * std::pow(std::sin(pi / n_spins) / std::sin(pi * sep / n_spins), 3);
      }
      table(j - 1, k - 1) = d;
      table(k - 1, j - 1) = d;
    }
  }
  return SpinSystem(n_spins, geometry, d_nn, std::move(table));
}

DenseOperator build_h_mq(const SpinSystem& sys) {
  // I_j^+ I_k^+ connects |…down_j…down_k…> to the state with both flipped up,
  // with unit matrix element; the lowering term is its transpose.
  const int n = sys.n_spins();
  const BasisConvention basis(n);
  const Index dim = basis.dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const double amp = -0.25 * sys.coupling(j, k);
      const Index both = (Index{1} << (j - 1)) | (Index{1} << (k - 1));
      for (Index s = 0; s < dim; ++s) {
        if ((s & both) == both) {
          const Index r = s & ~both;
          h(r, s) += amp;
          h(s, r) += amp;
        }
      }
    }
  }
  return {n, std::move(h)};
}

double ThermalConfig::exponent(int n_spins) const {
  if (!std::isfinite(value)) throw std::invalid_argument("ThermalConfig: value must be finite");
  if (n_spins < 1) throw std::invalid_argument("ThermalConfig: spin count must be positive");
  return mode == Mode::direct ? value : 2.0 * value / n_spins;
}

DenseOperator thermal_state(int n_spins, const ThermalConfig& tc) {
  const BasisConvention basis(n_spins);
  const double b = tc.exponent(n_spins);
  // Shift by the largest exponent |b| N/2 so no weight overflows.
  const double shift = std::abs(b) * 0.5 * n_spins;
  Eigen::VectorXd w(basis.dim());
  for (Index i = 0; i < basis.dim(); ++i) w(i) = std::exp(b * basis.magnetization(i) - shift);
  w /= w.sum();
  return {n_spins, w.cast<Complex>().asDiagonal().toDenseMatrix()};
}

}  // namespace mqdyn
