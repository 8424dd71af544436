// dynamics.hpp: spectral decomposition of Hermitian generators and unitary
// evolution U(τ) = exp(-iτH).

#pragma once

#include "mqdyn/operator_core.hpp"

#include <optional>

namespace mqdyn {

// H = V diag(λ) V†, eigenvalues ascending. When the generator is real the
// eigenvectors are real as well and `real_eigenvectors` is populated; the
// evolution routines then run on real GEMMs.
class SpectralForm {
 public:
  int n_spins() const noexcept { return n_spins_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  const std::optional<Eigen::MatrixXd>& real_eigenvectors() const noexcept { return real_vectors_; }

  // V diag(λ) V†.
  DenseOperator reconstruct() const;

  friend SpectralForm spectral_decompose(const DenseOperator& h);

 private:
  SpectralForm(int n_spins, Eigen::VectorXd values, Matrix vectors,
               std::optional<Eigen::MatrixXd> real_vectors);

  int n_spins_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
  std::optional<Eigen::MatrixXd> real_vectors_;
};

// Symmetrizes (H + H†)/2 first. Throws std::invalid_argument when the
// anti-Hermitian part exceeds 1e-8 and NumericalError on solver failure.
SpectralForm spectral_decompose(const DenseOperator& h);

// V diag(exp(-iλτ)) V†.
DenseOperator propagator(const SpectralForm& sf, double tau);

// U A U†.
DenseOperator conjugate(const DenseOperator& u, const DenseOperator& a);

// Heisenberg-style evolution of one fixed operator A:
//   A(τ) = U(τ) A U†(τ) = V [ e^{-i(λ_a-λ_b)τ} (V† A V)_ab ] V†.
// The eigenbasis image of A is computed once; each τ costs two products.
// Immutable after construction, so concurrent at() calls are safe.
class EigenbasisEvolution {
 public:
  EigenbasisEvolution(const SpectralForm& sf, const DenseOperator& initial);

  DenseOperator at(double tau) const;

 private:
  int n_spins_;
  Eigen::VectorXd eigenvalues_;
  // Complex path.
  Matrix vectors_;
  Matrix in_eigenbasis_;
  // Real-arithmetic path: V real and V^T A V real.
  Eigen::MatrixXd real_vectors_;
  Eigen::MatrixXd real_in_eigenbasis_;
  bool real_path_ = false;
};

}  // namespace mqdyn
