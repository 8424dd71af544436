#include "mqdyn/operator_core.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mqdyn {

int popcount(Index i) noexcept {
  return std::popcount(static_cast<std::uint64_t>(i));
}

BasisConvention::BasisConvention(int n_spins) : n_spins_(n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw std::invalid_argument("BasisConvention: spin count " + std::to_string(n_spins) +
                                " outside [1, " + std::to_string(kMaxSpins) + "]");
  }
}

int BasisConvention::twice_magnetization(Index i) const noexcept {
  return n_spins_ - 2 * popcount(i);
}

int BasisConvention::coherence_order(Index r, Index s) noexcept {
  return popcount(s) - popcount(r);
}

// ---------------------------------------------------------------------------

DenseOperator::DenseOperator(int n_spins, Matrix entries)
    : basis_(n_spins), entries_(std::move(entries)) {
  if (entries_.rows() != basis_.dim() || entries_.cols() != basis_.dim()) {
    throw std::invalid_argument("DenseOperator: expected " + std::to_string(basis_.dim()) + "x" +
                                std::to_string(basis_.dim()) + " matrix, got " +
                                std::to_string(entries_.rows()) + "x" +
                                std::to_string(entries_.cols()));
  }
}

DenseOperator DenseOperator::zero(int n_spins) {
  const BasisConvention basis(n_spins);
  return {n_spins, Matrix::Zero(basis.dim(), basis.dim())};
}

DenseOperator DenseOperator::identity(int n_spins) {
  const BasisConvention basis(n_spins);
  return {n_spins, Matrix::Identity(basis.dim(), basis.dim())};
}

double DenseOperator::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_same_space(const DenseOperator& a, const DenseOperator& b, const char* what) {
  if (a.n_spins() != b.n_spins()) {
    throw std::invalid_argument(std::string(what) + ": operators act on different spin counts");
  }
}

}  // namespace

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
  require_same_space(a, b, "operator+");
  return {a.n_spins(), a.entries_ + b.entries_};
}

DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
  require_same_space(a, b, "operator-");
  return {a.n_spins(), a.entries_ - b.entries_};
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  require_same_space(a, b, "operator*");
  return {a.n_spins(), a.entries_ * b.entries_};
}

DenseOperator operator*(Complex c, const DenseOperator& a) {
  return {a.n_spins(), c * a.entries_};
}

// ---------------------------------------------------------------------------

DenseOperator single_spin_operator(int n_spins, int site, SpinComponent kind) {
  const BasisConvention basis(n_spins);
  if (site < 1 || site > n_spins) {
    throw std::invalid_argument("single_spin_operator: site " + std::to_string(site) +
                                " outside [1, " + std::to_string(n_spins) + "]");
  }
  const Index dim = basis.dim();
  const Index bit = Index{1} << (site - 1);
  Matrix op = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const bool down = (i & bit) != 0;
    switch (kind) {
      case SpinComponent::z:
        op(i, i) = down ? -0.5 : 0.5;
        break;
      case SpinComponent::plus:
        if (down) op(i & ~bit, i) = 1.0;
        break;
      case SpinComponent::minus:
        if (!down) op(i | bit, i) = 1.0;
        break;
    }
  }
  return {n_spins, std::move(op)};
}

DenseOperator total_iz(int n_spins) {
  const BasisConvention basis(n_spins);
  Matrix op = Matrix::Zero(basis.dim(), basis.dim());
  for (Index i = 0; i < basis.dim(); ++i) op(i, i) = basis.magnetization(i);
  return {n_spins, std::move(op)};
}

// ---------------------------------------------------------------------------

void validate_pair(const SitePair& pair, int n_spins) {
  if (pair.m < 1 || pair.n > n_spins || pair.m >= pair.n) {
    throw std::invalid_argument("site pair (" + std::to_string(pair.m) + "," +
                                std::to_string(pair.n) + ") requires 1 <= m < n <= " +
                                std::to_string(n_spins));
  }
}

int pair_index(Index full_index, const SitePair& pair) noexcept {
  return 2 * static_cast<int>(BasisConvention::is_down(full_index, pair.m)) +
         static_cast<int>(BasisConvention::is_down(full_index, pair.n));
}

namespace {

// full[p][e]: basis index with the pair in local state p and the remaining
// N-2 sites in environment configuration e.
std::array<std::vector<Index>, 4> pair_embedding(int n_spins, const SitePair& pair) {
  const Index env_dim = Index{1} << (n_spins - 2);
  const Index bit_m = Index{1} << (pair.m - 1);
  const Index bit_n = Index{1} << (pair.n - 1);

  std::vector<Index> env_full(static_cast<std::size_t>(env_dim));
  for (Index e = 0; e < env_dim; ++e) {
    Index full = 0;
    int src = 0;
    for (int site = 1; site <= n_spins; ++site) {
      if (site == pair.m || site == pair.n) continue;
      if ((e >> src) & 1) full |= Index{1} << (site - 1);
      ++src;
    }
    env_full[static_cast<std::size_t>(e)] = full;
  }

  std::array<std::vector<Index>, 4> full;
  for (int p = 0; p < 4; ++p) {
    const Index pair_bits = ((p & 2) ? bit_m : 0) | ((p & 1) ? bit_n : 0);
    full[p].reserve(env_full.size());
    for (Index e : env_full) full[p].push_back(e | pair_bits);
  }
  return full;
}

}  // namespace

DenseOperator partial_trace_to_pair(const DenseOperator& a, const SitePair& pair) {
  validate_pair(pair, a.n_spins());
  const auto full = pair_embedding(a.n_spins(), pair);
  const Matrix& A = a.matrix();
  Matrix reduced = Matrix::Zero(4, 4);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      Complex sum{0.0, 0.0};
      for (std::size_t e = 0; e < full[p].size(); ++e) sum += A(full[p][e], full[q][e]);
      reduced(p, q) = sum;
    }
  }
  return {2, std::move(reduced)};
}

// ---------------------------------------------------------------------------

CoherenceDecomposition::CoherenceDecomposition(DenseOperator source) : source_(std::move(source)) {}

std::vector<int> CoherenceDecomposition::orders() const {
  std::vector<int> out;
  for (int k = -n_spins(); k <= n_spins(); ++k) out.push_back(k);
  return out;
}

DenseOperator CoherenceDecomposition::part(int k) const {
  const Index dim = source_.dim();
  const Matrix& A = source_.matrix();
  Matrix masked = Matrix::Zero(dim, dim);
  for (Index s = 0; s < dim; ++s) {
    for (Index r = 0; r < dim; ++r) {
      if (BasisConvention::coherence_order(r, s) == k) masked(r, s) = A(r, s);
    }
  }
  return {n_spins(), std::move(masked)};
}

double CoherenceDecomposition::max_abs_in_order(int k) const {
  const Index dim = source_.dim();
  const Matrix& A = source_.matrix();
  double worst = 0.0;
  for (Index s = 0; s < dim; ++s) {
    for (Index r = 0; r < dim; ++r) {
      if (BasisConvention::coherence_order(r, s) == k) worst = std::max(worst, std::abs(A(r, s)));
    }
  }
  return worst;
}

double CoherenceDecomposition::max_abs_odd() const {
  const Index dim = source_.dim();
  const Matrix& A = source_.matrix();
  double worst = 0.0;
  for (Index s = 0; s < dim; ++s) {
    for (Index r = 0; r < dim; ++r) {
      if (BasisConvention::coherence_order(r, s) % 2 != 0) worst = std::max(worst, std::abs(A(r, s)));
    }
  }
  return worst;
}

std::map<int, DenseOperator> CoherenceDecomposition::pair_parts(const SitePair& pair) const {
  validate_pair(pair, n_spins());
  const auto full = pair_embedding(n_spins(), pair);
  const Matrix& A = source_.matrix();

  std::map<int, Matrix> acc;
  for (int k : orders()) acc.emplace(k, Matrix::Zero(4, 4));
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      for (std::size_t e = 0; e < full[p].size(); ++e) {
        const Index r = full[p][e];
        const Index s = full[q][e];
        acc.at(BasisConvention::coherence_order(r, s))(p, q) += A(r, s);
      }
    }
  }

  std::map<int, DenseOperator> out;
  for (auto& [k, m] : acc) out.emplace(k, DenseOperator(2, std::move(m)));
  return out;
}

CoherenceDecomposition decompose_by_order(const DenseOperator& a) {
  return CoherenceDecomposition(a);
}

}  // namespace mqdyn
