// operator_core.hpp: Zeeman product basis, spin operators, pair partial trace,
// and coherence-order decomposition.
//
// Basis convention shared by every module: for N spins (sites 1..N) the basis
// index i ∈ [0, 2^N) stores spin j in bit (j-1). Bit 0 is "up" (m_j = +1/2),
// bit 1 is "down" (m_j = -1/2), so the total magnetization of basis state i is
// N/2 - popcount(i).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace mqdyn {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Dense storage is 4^N complex numbers; N = 12 is already 256 MiB per operator.
inline constexpr int kMaxSpins = 12;

// ------------------------------ basis ---------------------------------------

class BasisConvention {
 public:
  explicit BasisConvention(int n_spins);

  int n_spins() const noexcept { return n_spins_; }
  Index dim() const noexcept { return Index{1} << n_spins_; }

  // Total magnetization m(i), returned doubled so it stays integral.
  int twice_magnetization(Index i) const noexcept;
  double magnetization(Index i) const noexcept { return 0.5 * twice_magnetization(i); }

  // k = m(r) - m(s) for the matrix entry (r, s).
  static int coherence_order(Index r, Index s) noexcept;

  // True when spin `site` (1-based) is down in basis state i.
  static bool is_down(Index i, int site) noexcept { return (i >> (site - 1)) & 1; }

 private:
  int n_spins_;
};

int popcount(Index i) noexcept;

// ------------------------------ operators -----------------------------------

// Square complex matrix of dimension 2^N in the Zeeman product basis.
class DenseOperator {
 public:
  DenseOperator(int n_spins, Matrix entries);

  static DenseOperator zero(int n_spins);
  static DenseOperator identity(int n_spins);

  int n_spins() const noexcept { return basis_.n_spins(); }
  Index dim() const noexcept { return basis_.dim(); }
  const BasisConvention& basis() const noexcept { return basis_; }
  const Matrix& matrix() const noexcept { return entries_; }

  Complex operator()(Index r, Index s) const { return entries_(r, s); }

  Complex trace() const { return entries_.trace(); }
  DenseOperator adjoint() const { return {n_spins(), entries_.adjoint()}; }

  // Largest |A - A†| entry.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }
  bool all_finite() const { return entries_.allFinite(); }

  friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(Complex c, const DenseOperator& a);

 private:
  BasisConvention basis_;
  Matrix entries_;
};

enum class SpinComponent { z, plus, minus };

// Kronecker embedding 1 ⊗ … ⊗ op_j ⊗ … ⊗ 1 of a single-site spin operator.
DenseOperator single_spin_operator(int n_spins, int site, SpinComponent kind);

// Σ_j I_j^z; diagonal with entry m(i).
DenseOperator total_iz(int n_spins);

// ------------------------------ pair reduction ------------------------------

// Ordered site pair, 1 ≤ m < n.
struct SitePair {
  int m = 1;
  int n = 2;

  friend bool operator==(const SitePair&, const SitePair&) = default;
};

// Throws std::invalid_argument unless 1 ≤ m < n ≤ n_spins.
void validate_pair(const SitePair& pair, int n_spins);

// Index into the 4×4 pair space: (m up, n up), (m up, n down),
// (m down, n up), (m down, n down).
int pair_index(Index full_index, const SitePair& pair) noexcept;

// Trace over every site except m and n. The 4×4 result uses the pair ordering
// above, i.e. the Kronecker order (m ⊗ n) with m in the high bit. Magnetization
// and coherence order of the pair indices are unaffected by that choice.
DenseOperator partial_trace_to_pair(const DenseOperator& a, const SitePair& pair);

// ------------------------------ coherence orders ----------------------------

// Partition of an operator's entries by coherence order k = m(r) - m(s).
// Parts are materialized on demand; the decomposition holds only the source.
class CoherenceDecomposition {
 public:
  explicit CoherenceDecomposition(DenseOperator source);

  const DenseOperator& source() const noexcept { return source_; }
  int n_spins() const noexcept { return source_.n_spins(); }

  // Orders that carry at least one structurally allowed entry: -N..N.
  std::vector<int> orders() const;

  // Copy of the source with every entry outside order k zeroed.
  DenseOperator part(int k) const;

  // Largest |entry| among entries of the given order.
  double max_abs_in_order(int k) const;

  // Largest |entry| over all odd orders.
  double max_abs_odd() const;

  // partial_trace_to_pair(part(k)) for every k in orders(), built in a single
  // pass over the entries the reduction reads.
  std::map<int, DenseOperator> pair_parts(const SitePair& pair) const;

 private:
  DenseOperator source_;
};

CoherenceDecomposition decompose_by_order(const DenseOperator& a);

}  // namespace mqdyn
