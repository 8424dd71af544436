#include "mqdyn/dynamics.hpp"

#include "mqdyn/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mqdyn {

SpectralForm::SpectralForm(int n_spins, Eigen::VectorXd values, Matrix vectors,
                           std::optional<Eigen::MatrixXd> real_vectors)
    : n_spins_(n_spins),
      eigenvalues_(std::move(values)),
      eigenvectors_(std::move(vectors)),
      real_vectors_(std::move(real_vectors)) {}

DenseOperator SpectralForm::reconstruct() const {
  return {n_spins_, eigenvectors_ * eigenvalues_.cast<Complex>().asDiagonal() * eigenvectors_.adjoint()};
}

SpectralForm spectral_decompose(const DenseOperator& h) {
  const Matrix& a = h.matrix();
  const double anti = (0.5 * (a - a.adjoint())).cwiseAbs().maxCoeff();
  if (anti > 1e-8) {
    throw std::invalid_argument("spectral_decompose: generator is not Hermitian (anti-Hermitian part " +
                                std::to_string(anti) + ")");
  }
  const Matrix sym = 0.5 * (a + a.adjoint());

  if (sym.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym.real());
    if (solver.info() != Eigen::Success) {
      throw NumericalError("spectral_decompose: eigensolver did not converge");
    }
    Eigen::MatrixXd v = solver.eigenvectors();
    Matrix vc = v.cast<Complex>();
    return {h.n_spins(), solver.eigenvalues(), std::move(vc), std::move(v)};
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectral_decompose: eigensolver did not converge");
  }
  return {h.n_spins(), solver.eigenvalues(), solver.eigenvectors(), std::nullopt};
}

DenseOperator propagator(const SpectralForm& sf, double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("propagator: tau must be finite");
  const Eigen::VectorXd& lambda = sf.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, -lambda(i) * tau);
  const Matrix& v = sf.eigenvectors();
  Matrix u = (v * phases.asDiagonal()) * v.adjoint();
  return {sf.n_spins(), std::move(u)};
}

DenseOperator conjugate(const DenseOperator& u, const DenseOperator& a) {
  if (u.n_spins() != a.n_spins()) {
    throw std::invalid_argument("conjugate: dimension mismatch (" + std::to_string(u.dim()) + " vs " +
                                std::to_string(a.dim()) + ")");
  }
  Matrix tmp = u.matrix() * a.matrix();
  Matrix out = tmp * u.matrix().adjoint();
  return {a.n_spins(), std::move(out)};
}

// ---------------------------------------------------------------------------

EigenbasisEvolution::EigenbasisEvolution(const SpectralForm& sf, const DenseOperator& initial)
    : n_spins_(sf.n_spins()), eigenvalues_(sf.eigenvalues()) {
  if (sf.n_spins() != initial.n_spins()) {
    throw std::invalid_argument("EigenbasisEvolution: dimension mismatch");
  }
  const auto& rv = sf.real_eigenvectors();
  if (rv && initial.matrix().imag().cwiseAbs().maxCoeff() == 0.0) {
    real_path_ = true;
    real_vectors_ = *rv;
    const Eigen::MatrixXd a = initial.matrix().real();
    real_in_eigenbasis_ = real_vectors_.transpose() * a * real_vectors_;
  } else {
    vectors_ = sf.eigenvectors();
    in_eigenbasis_ = vectors_.adjoint() * initial.matrix() * vectors_;
  }
}

DenseOperator EigenbasisEvolution::at(double tau) const {
  if (!std::isfinite(tau)) throw std::invalid_argument("EigenbasisEvolution: tau must be finite");
  const Index dim = eigenvalues_.size();

  // e^{-i(λ_a - λ_b)τ} = p_a conj(p_b) with p_a = e^{-iλ_a τ}.
  Eigen::VectorXcd p(dim);
  for (Index a = 0; a < dim; ++a) p(a) = std::polar(1.0, -eigenvalues_(a) * tau);

  if (real_path_) {
    Eigen::MatrixXd re(dim, dim);
    Eigen::MatrixXd im(dim, dim);
    for (Index b = 0; b < dim; ++b) {
      const Complex pb = std::conj(p(b));
      for (Index a = 0; a < dim; ++a) {
        const Complex w = p(a) * pb;
        re(a, b) = w.real() * real_in_eigenbasis_(a, b);
        im(a, b) = w.imag() * real_in_eigenbasis_(a, b);
      }
    }
    Eigen::MatrixXd tmp(dim, dim);
    Eigen::MatrixXd part(dim, dim);
    Matrix out(dim, dim);
    tmp.noalias() = real_vectors_ * re;
    part.noalias() = tmp * real_vectors_.transpose();
    out.real() = part;
    tmp.noalias() = real_vectors_ * im;
    part.noalias() = tmp * real_vectors_.transpose();
    out.imag() = part;
    return {n_spins_, std::move(out)};
  }

  Matrix x(dim, dim);
  for (Index b = 0; b < dim; ++b) {
    const Complex pb = std::conj(p(b));
    for (Index a = 0; a < dim; ++a) x(a, b) = p(a) * pb * in_eigenbasis_(a, b);
  }
  Matrix tmp(dim, dim);
  Matrix out(dim, dim);
  tmp.noalias() = vectors_ * x;
  out.noalias() = tmp * vectors_.adjoint();
  return {n_spins_, std::move(out)};
}

}  // namespace mqdyn
