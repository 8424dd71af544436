#include "mqdyn/entanglement.hpp"

#include "mqdyn/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mqdyn {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kImagDiscard = 1e-9;
// Eigenvalues of R below this fraction of ||R||_F are roundoff; their square
// roots would otherwise inject ~1e-8 noise into C.
constexpr double kRelativeEigenFloor = 1e-14;
constexpr double kConcurrenceZero = 1e-12;

}  // namespace

PairState::PairState(const Matrix4& rho, SitePair pair, double tau)
    : rho_(rho), pair_(pair), tau_(tau), min_eigenvalue_(0.0) {
  if (!rho_.allFinite()) throw std::invalid_argument("PairState: non-finite entries");
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw std::invalid_argument("PairState: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("PairState: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const Matrix4 sym = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(sym, Eigen::EigenvaluesOnly);
  min_eigenvalue_ = solver.eigenvalues().minCoeff();
  if (min_eigenvalue_ < -kPsdTol) {
    throw std::invalid_argument("PairState: negative eigenvalue " + std::to_string(min_eigenvalue_));
  }
}

PairState::PairState(const DenseOperator& rho, SitePair pair, double tau)
    : PairState(
          [&rho]() -> Matrix4 {
            if (rho.n_spins() != 2) throw std::invalid_argument("PairState: expected a 4x4 operator");
            return rho.matrix();
          }(),
          pair, tau) {}

Matrix4 sigma_yy() {
  Eigen::Matrix2cd sy;
  sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  Matrix4 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + c, 2 * b + d) = sy(a, b) * sy(c, d);
  return out;
}

Matrix4 spin_flip(const PairState& rho) {
  const Matrix4 yy = sigma_yy();
  const Matrix4& r = rho.matrix();
  return r * yy * r.conjugate() * yy;
}

double concurrence(const PairState& rho) {
  const Matrix4 r = spin_flip(rho);
  Eigen::ComplexEigenSolver<Matrix4> solver(r, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("concurrence: eigensolver did not converge");
  }
  const double floor = kRelativeEigenFloor * std::max(1.0, r.norm());
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) {
    const Complex mu = solver.eigenvalues()(i);
    if (std::abs(mu.imag()) > kImagDiscard) {
      throw NumericalError("concurrence: spin-flip eigenvalue has imaginary part " +
                           std::to_string(mu.imag()));
    }
    lambda[static_cast<std::size_t>(i)] = mu.real() > floor ? std::sqrt(mu.real()) : 0.0;
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  if (c < kConcurrenceZero) return 0.0;
  return std::min(c, 1.0);
}

double entanglement_of_formation(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) {
    throw std::invalid_argument("entanglement_of_formation: concurrence " + std::to_string(c) +
                                " outside [0, 1]");
  }
  c = std::clamp(c, 0.0, 1.0);
  const double root = std::sqrt(1.0 - c * c);
  const double x = 0.5 * (1.0 + root);
  // 1 - x without cancellation for small C.
  const double y = 0.5 * c * c / (1.0 + root);
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(y);
}

}  // namespace mqdyn
