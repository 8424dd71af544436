#include "mqdyn/coherence.hpp"

#include "mqdyn/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqdyn {

double CoherenceSpectrum::at(int k) const {
  const auto it = intensities.find(k);
  return it == intensities.end() ? 0.0 : it->second;
}

double CoherenceSpectrum::total() const {
  double sum = 0.0;
  for (const auto& [k, j] : intensities) sum += j;
  return sum;
}

double CoherenceSpectrum::asymmetry() const {
  double worst = 0.0;
  for (const auto& [k, j] : intensities) worst = std::max(worst, std::abs(j - at(-k)));
  return worst;
}

double PairSpectrum::at(int k) const {
  const auto it = intensities.find(k);
  return it == intensities.end() ? 0.0 : it->second;
}

namespace {

double checked_real(Complex value, const char* what, int k, double& worst_residue) {
  const double residue = std::abs(value.imag());
  worst_residue = std::max(worst_residue, residue);
  if (residue > kImagResidueAbort || !std::isfinite(value.real())) {
    throw NumericalError(std::string(what) + ": order " + std::to_string(k) +
                         " has imaginary residue " + std::to_string(residue));
  }
  return value.real();
}

void require_same_space(const DenseOperator& rho, const CoherenceDecomposition& parts) {
  if (rho.n_spins() != parts.n_spins()) {
    throw std::invalid_argument("coherence: state and decomposition act on different spin counts");
  }
}

}  // namespace

CoherenceSpectrum integrated_intensities(const DenseOperator& rho_tau,
                                         const CoherenceDecomposition& rhoz_parts, double tau) {
  require_same_space(rho_tau, rhoz_parts);
  const int n = rho_tau.n_spins();
  const Index dim = rho_tau.dim();
  const Matrix& rho = rho_tau.matrix();
  const Matrix& z = rhoz_parts.source().matrix();

  // Tr[ρ P_k] = Σ_{(r,s) of order k} ρ(s,r) A(r,s), accumulated for all k at once.
  std::vector<Complex> acc(static_cast<std::size_t>(2 * n + 1), Complex{});
  for (Index s = 0; s < dim; ++s) {
    for (Index r = 0; r < dim; ++r) {
      const int k = BasisConvention::coherence_order(r, s);
      acc[static_cast<std::size_t>(k + n)] += rho(s, r) * z(r, s);
    }
  }

  CoherenceSpectrum out;
  out.tau = tau;
  for (int k = -2 * (n / 2); k <= n; k += 2) {
    out.intensities[k] =
        checked_real(acc[static_cast<std::size_t>(k + n)], "integrated_intensities", k, out.max_imag_residue);
  }
  return out;
}

PairSpectrum reduced_intensities(const DenseOperator& rho_tau, const CoherenceDecomposition& rhoz_parts,
                                 const SitePair& pair, double tau) {
  require_same_space(rho_tau, rhoz_parts);
  const Matrix rho_mn = partial_trace_to_pair(rho_tau, pair).matrix();
  const auto parts = rhoz_parts.pair_parts(pair);

  PairSpectrum out;
  out.pair = pair;
  out.tau = tau;
  for (const auto& [k, part] : parts) {
    const Complex j = (rho_mn * part.matrix()).trace();
    if (std::abs(k) > 2) {
      out.high_order_residue = std::max(out.high_order_residue, std::abs(j));
      continue;
    }
    if (k % 2 != 0) continue;
    out.intensities[k] = checked_real(j, "reduced_intensities", k, out.max_imag_residue);
  }
  if (out.high_order_residue > kPairCutoffTolerance) {
    throw NumericalError("reduced_intensities: pair (" + std::to_string(pair.m) + "," +
                         std::to_string(pair.n) + ") carries order |k|>2 intensity " +
                         std::to_string(out.high_order_residue));
  }
  return out;
}

Complex reduced_intensity(const DenseOperator& rho_tau, const CoherenceDecomposition& rhoz_parts,
                          const SitePair& pair, int k) {
  require_same_space(rho_tau, rhoz_parts);
  const DenseOperator rho_mn = partial_trace_to_pair(rho_tau, pair);
  const DenseOperator part_mn = partial_trace_to_pair(rhoz_parts.part(k), pair);
  return (rho_mn * part_mn).trace();
}

}  // namespace mqdyn
