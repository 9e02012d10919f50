#pragma once

// SU(2) machinery on r qubits: sector dimensions of the decomposition
// (C^2)^{⊗r} = ⊕_j M_j ⊗ N_j, the Casimir operator, total-spin projectors,
// and isometries into the multiplicity factor N_j.
//
// Qubit 0 is the leftmost tensor factor (most significant bit of a basis
// index) and |0⟩ is spin up.

#include <cstdint>
#include <span>
#include <vector>

#include "rotinv/half_integer.hpp"
#include "rotinv/operators.hpp"

namespace rotinv {

/// Largest r for the pure-arithmetic routines.
inline constexpr int kMaxArithmeticQubits = 60;
/// Largest r for which operators on the full 2^r space are built densely.
inline constexpr int kMaxDenseQubits = 12;
/// Largest global dimension for assembled sparse operators.
inline constexpr std::uint64_t kMaxSparseDimension = std::uint64_t{1} << 26;
/// Largest number of stored entries for an assembled sparse operator.
inline constexpr std::uint64_t kMaxSparseNonzeros = std::uint64_t{1} << 25;

/// C(n, k), zero when k < 0 or k > n.
std::uint64_t binomial(int n, int k);

/// |N_j| for r qubits.
std::uint64_t catalan_multiplicity(int r, HalfInteger j);

struct DfsSector {
  HalfInteger j;
  std::uint64_t dim_m = 0;   // |M_j| = 2j+1
  std::uint64_t mult_n = 0;  // |N_j|
};

struct DfsDecomposition {
  int r = 0;
  std::vector<DfsSector> sectors;  // increasing j

  /// Σ dim_m · mult_n, equal to 2^r.
  std::uint64_t total_dimension() const;
};

DfsDecomposition decompose(int r);

/// The admissible j with the largest multiplicity (smallest j on ties).
HalfInteger largest_multiplicity_spin(int r);

enum class Axis { x, y, z };

/// Pauli matrix σ_a.
Matrix pauli(Axis a);

/// J_a = ½ Σ_i σ_a^{(i)} on n qubits.
SparseOperator collective_spin(int n, Axis a);

/// J_+ = J_x + i J_y on n qubits.
SparseOperator raising_operator(int n);

/// J² = J_x² + J_y² + J_z² on r qubits.
DenseOperator casimir_operator(int r);

/// Orthogonal projector P^{r,j} onto the total-spin-j eigenspace.
DenseOperator total_spin_projector(int r, HalfInteger j);

/// P^{m,m/2}, the projector onto the fully symmetric subspace of m qubits.
DenseOperator symmetric_projector(int m);

/// Acts as `op` on `support` (listed order = tensor order of `op`) and as
/// identity elsewhere on n sites of dimension `local_dim`.
SparseOperator embed_on_support(const DenseOperator& op, std::span<const int> support, int n,
                                int local_dim = 2);
SparseOperator embed_on_support(const SparseOperator& op, std::span<const int> support, int n,
                                int local_dim = 2);

/// ‖P^{r,j} · P^{m,m/2}_{0..m-1}‖_max.
double check_sector_orthogonality(int r, HalfInteger j, int m);

/// ‖A_{support_a} · B_{support_b}‖_max with both embedded on n qubits.
double embedded_product_residual(const DenseOperator& a, std::span<const int> support_a,
                                 const DenseOperator& b, std::span<const int> support_b, int n);

/// Sequential-coupling paths ending at total spin j: each path lists the
/// twice-values of the intermediate spins after qubits 1..r. Paths come in
/// lexicographic order; their count is catalan_multiplicity(r, j).
std::vector<std::vector<int>> coupling_paths(int r, HalfInteger j);

/// Isometry from a d-level logical space into the N_j factor of r qubits.
struct EncodingMap {
  int r = 0;
  HalfInteger j;
  int logical_dim = 0;
  /// 2^r × d; column l is |j, m=j, α_l⟩ for the l-th coupling path.
  Matrix isometry;
};

EncodingMap subsystem_isometry(int r, HalfInteger j, int d);

/// The full set of M-labels for the first d multiplicity levels: entry μ is
/// the 2^r × d matrix whose columns are |j, m=j−μ, α_l⟩.
std::vector<Matrix> subsystem_frames(int r, HalfInteger j, int d);

}  // namespace rotinv
