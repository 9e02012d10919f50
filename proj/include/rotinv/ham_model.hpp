#pragma once

// k-local Hamiltonians on a 1D chain: data model, global assembly, the
// cyclic translation operator and translation/rotation invariance checks.
// Sites are 0-indexed; site 0 is the leftmost tensor factor.

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rotinv/operators.hpp"
#include "rotinv/spin_core.hpp"

namespace rotinv {

enum class Boundary { open, periodic };

const char* to_string(Boundary b);

struct LocalTerm {
  std::vector<int> support;  // tensor order of `matrix`
  SparseOperator matrix;

  static LocalTerm dense(std::vector<int> support, const Matrix& m) {
    return {std::move(support), DenseOperator(m).to_sparse()};
  }
};

struct SpinChainHamiltonian {
  int n_sites = 0;
  int local_dim = 2;
  Boundary boundary = Boundary::open;
  std::vector<LocalTerm> terms;
  std::string label;
  /// Free-form numeric annotations (k_prime, J_prime, penalty_offset, …).
  std::map<std::string, double> metadata;

  /// k: the largest support length (0 without terms).
  int locality() const;
  /// local_dim^n_sites; throws CapacityError above kMaxSparseDimension.
  std::uint64_t dimension() const;
  /// max_i ‖h_i‖ in operator norm.
  double max_term_norm() const;

  /// Throws std::invalid_argument naming the offending term.
  void validate() const;
};

/// Largest |eigenvalue| of a Hermitian operator (largest singular value
/// otherwise). Large sparse operators go through Lanczos.
double operator_norm(const DenseOperator& op);
double operator_norm(const SparseOperator& op);

/// A support "wraps" when its listed sites decrease somewhere, i.e. it
/// crosses the periodic seam. Open chains must list supports ascending.
bool support_wraps(const std::vector<int>& support);

SparseOperator build_global(const SpinChainHamiltonian& h);

/// Matrix-free H = Σ_i h_i.
class TermSumOperator {
 public:
  explicit TermSumOperator(const SpinChainHamiltonian& h);

  std::uint64_t dimension() const { return dim_; }

  /// y = H x
  void apply(const Complex* x, Complex* y) const;
  Vector apply(const Vector& x) const;

  /// H|x⟩ as (index, value) pairs sorted by index.
  std::vector<std::pair<std::uint64_t, Complex>> column(std::uint64_t x) const;

 private:
  struct CompiledTerm {
    std::vector<std::uint64_t> strides;  // per support site
    std::vector<std::uint64_t> offsets;  // global offset of each local basis index
    std::vector<std::vector<std::pair<std::uint32_t, Complex>>> columns;
  };
  std::uint64_t dim_ = 0;
  std::uint64_t local_dim_ = 2;
  std::vector<CompiledTerm> terms_;
};

/// Index of T^shift|x⟩ where T|i₁i₂…i_N⟩ = |i₂…i_N i₁⟩.
std::uint64_t translate_index(std::uint64_t x, int n_sites, int local_dim, int shift);

SparseOperator translation_operator(int n_sites, int local_dim);

enum class ResidualEstimator { exact, random_vectors, random_columns };

const char* to_string(ResidualEstimator e);

struct InvarianceReport {
  std::string check_name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string details;
  ResidualEstimator estimator = ResidualEstimator::exact;
  int samples = 0;
};

/// Dimension up to which checks assemble H and compute exact max-norms.
inline constexpr std::uint64_t kExactCheckDimension = std::uint64_t{1} << 16;
/// Dimension up to which sampled checks use dense random vectors.
inline constexpr std::uint64_t kVectorCheckDimension = std::uint64_t{1} << 22;

/// Residual ‖T^p H T^{−p} − H‖_max. Above kExactCheckDimension it is
/// estimated from `samples` seeded random unit vectors (Euclidean norm of
/// the residual applied to each), or above kVectorCheckDimension from
/// `samples` seeded random basis columns (exact max-norm of those columns).
InvarianceReport is_translation_invariant(const SpinChainHamiltonian& h, int period,
                                          double tolerance = kDerivedTol, std::uint64_t seed = 0,
                                          int samples = 64);

/// J_x, J_y, J_z on a qubit chain.
std::array<SparseOperator, 3> collective_generators(int n_qubits);

/// max_a ‖[H, J_a]‖_max, plus `samples` seeded Haar-random U checks of
/// ‖U^{⊗N} H U^{†⊗N} − H‖ reported in `details`.
InvarianceReport is_rotation_invariant(const SpinChainHamiltonian& h, int samples = 4,
                                       std::uint64_t seed = 0, double tolerance = kDerivedTol);

/// Haar-random 2×2 unitary.
Matrix haar_unitary_2x2(std::mt19937_64& rng);

/// Applies u to every qubit of an n-qubit state in place.
void apply_product_unitary(const Matrix& u, int n_qubits, Vector& state);

}  // namespace rotinv
