// entanglement.hpp: Wootters concurrence and entanglement of formation of a
// two-spin density matrix in the fixed pair basis {uu, ud, du, dd}.

#pragma once

#include "mqdyn/operator_core.hpp"

namespace mqdyn {

using Matrix4 = Eigen::Matrix4cd;

// 4×4 Hermitian, unit-trace, positive-semidefinite pair density matrix.
class PairState {
 public:
  // Throws std::invalid_argument unless Hermitian (1e-10), trace 1 (1e-12)
  // and min eigenvalue >= -1e-10.
  explicit PairState(const Matrix4& rho, SitePair pair = {}, double tau = 0.0);
  PairState(const DenseOperator& rho, SitePair pair = {}, double tau = 0.0);

  const Matrix4& matrix() const noexcept { return rho_; }
  SitePair pair() const noexcept { return pair_; }
  double tau() const noexcept { return tau_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  Matrix4 rho_;
  SitePair pair_;
  double tau_;
  double min_eigenvalue_;
};

// σ_y ⊗ σ_y.
Matrix4 sigma_yy();

// R = ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y), ρ* the entrywise conjugate.
Matrix4 spin_flip(const PairState& rho);

// max{0, λ1 - λ2 - λ3 - λ4}, λ the descending square roots of the
// eigenvalues of R. Values below 1e-12 are returned as exactly 0.
double concurrence(const PairState& rho);

// Binary entropy of x = (1 + sqrt(1 - C²)) / 2.
double entanglement_of_formation(double c);

}  // namespace mqdyn
