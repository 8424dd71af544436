// coherence.hpp: integrated and pair-reduced ("differentiated") multiple-
// quantum spectral intensities.
//
//   J_k(τ)      = Tr[ρ(τ) ρ^{zk}(τ)]
//   J_k^{mn}(τ) = Tr[Tr_mn ρ(τ) · Tr_mn ρ^{zk}(τ)]
//
// where ρ^{zk} is the order-k part of ρ_z(τ) = U I_z U†. Both traces are real
// for Hermitian inputs; the imaginary residue is measured before it is dropped.

#pragma once

#include "mqdyn/operator_core.hpp"

#include <map>

namespace mqdyn {

// Residues above this abort with NumericalError.
inline constexpr double kImagResidueAbort = 1e-8;
// Reduced intensities for |k| > 2 must vanish to this level.
inline constexpr double kPairCutoffTolerance = 1e-12;

struct CoherenceSpectrum {
  double tau = 0.0;
  std::map<int, double> intensities;  // even k in [-N, N]
  double max_imag_residue = 0.0;

  // 0 for orders that were not computed.
  double at(int k) const;
  double total() const;
  // max |J_k - J_{-k}|.
  double asymmetry() const;
};

struct PairSpectrum {
  SitePair pair;
  double tau = 0.0;
  std::map<int, double> intensities;  // k ∈ {-2, 0, +2}
  double max_imag_residue = 0.0;
  // Largest |J_k^{mn}| found for |k| > 2 before it was zeroed.
  double high_order_residue = 0.0;

  double at(int k) const;
};

CoherenceSpectrum integrated_intensities(const DenseOperator& rho_tau,
                                         const CoherenceDecomposition& rhoz_parts, double tau = 0.0);

// Throws NumericalError when any |k| > 2 intensity exceeds kPairCutoffTolerance.
PairSpectrum reduced_intensities(const DenseOperator& rho_tau, const CoherenceDecomposition& rhoz_parts,
                                 const SitePair& pair, double tau = 0.0);

// Single order, evaluated by materializing the order-k part and tracing it
// down. Slow; used for spot checks of arbitrary k.
Complex reduced_intensity(const DenseOperator& rho_tau, const CoherenceDecomposition& rhoz_parts,
                          const SitePair& pair, int k);

}  // namespace mqdyn
