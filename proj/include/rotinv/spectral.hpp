#pragma once

// Eigenvalues and time evolution for the verification suites.
//
// Dense routines split H into the connected components of its sparsity graph
// (for rotation-invariant qubit Hamiltonians these refine the J_z sectors)
// and diagonalize each block exactly. Iterative routines are thick-restart
// Lanczos with full reorthogonalization and Krylov propagation on the same
// SIMD kernels.

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rotinv/operators.hpp"

namespace rotinv {

/// Eigenvalues closer than this (absolute) belong to one level.
inline constexpr double kDegeneracyTol = 1e-9;
/// Largest dimension accepted by the dense eigensolver.
inline constexpr Index kMaxDenseSpectrumDimension = Index{1} << 13;
/// Largest dimension evolved through a dense decomposition in automatic mode.
inline constexpr Index kMaxDenseEvolveDimension = Index{1} << 12;

enum class SolverMethod { dense, iterative };

const char* to_string(SolverMethod m);

struct Level {
  double energy = 0.0;
  std::size_t count = 0;
};

struct SpectralResult {
  std::vector<double> eigenvalues;  // ascending
  double ground_energy = 0.0;
  double gap = 0.0;  // lowest two distinct levels; 0 when only one level is known
  std::vector<Level> degeneracies;
  SolverMethod method = SolverMethod::dense;
  int iterations = 0;
  double max_residual = 0.0;
  std::uint64_t seed = 0;
};

/// Groups ascending eigenvalues into levels: a new level starts when the gap
/// to the previous eigenvalue exceeds `tol`.
std::vector<Level> cluster_levels(std::span<const double> ascending, double tol = kDegeneracyTol);

/// Fills ground_energy, gap and degeneracies from eigenvalues.
void summarize_spectrum(SpectralResult& r);

struct EigenBlock {
  std::vector<Index> indices;  // global basis indices of the block, ascending
  RealVector values;           // ascending
  Matrix vectors;              // columns; empty when not requested
};

struct DenseDecomposition {
  Index dimension = 0;
  std::vector<EigenBlock> blocks;

  std::vector<double> eigenvalues() const;  // all, ascending
};

/// Connected components of the sparsity graph of h.
std::vector<std::vector<Index>> connected_blocks(const SparseOperator& h);

/// Exact decomposition; throws CapacityError above kMaxDenseSpectrumDimension
/// and std::invalid_argument for non-Hermitian input.
DenseDecomposition dense_decomposition(const SparseOperator& h, bool with_vectors);

using LinearMap = std::function<void(const Complex* x, Complex* y)>;

struct LanczosOptions {
  int count = 1;
  double tolerance = 1e-11;  // residual ≤ tolerance · max(1, |θ|)
  int max_basis = 0;         // 0 picks max(2·count + 20, 40)
  int max_restarts = 2000;
  std::uint64_t seed = 0;
  bool want_vectors = false;
};

struct LanczosResult {
  std::vector<double> values;  // ascending
  Matrix vectors;
  int restarts = 0;
  int matvecs = 0;
  double max_residual = 0.0;
};

/// Lowest eigenpairs of a Hermitian map. A single start vector sees each
/// degenerate level once, so repeated eigenvalues are not resolved.
LanczosResult lanczos_lowest(const LinearMap& apply, Index dimension, const LanczosOptions& options);

std::vector<double> lowest_eigenvalues(const SparseOperator& h, int count, std::uint64_t seed = 0);

SpectralResult eigensolve(const SparseOperator& h, int count, SolverMethod mode, std::uint64_t seed = 0);

enum class EvolveMethod { automatic, dense, krylov };

struct KrylovOptions {
  int max_subspace = 40;
  double step_tolerance = 1e-10;
};

/// exp(−iHt)ψ.
Vector evolve(const SparseOperator& h, const Vector& psi, double t, EvolveMethod method = EvolveMethod::automatic,
              const KrylovOptions& options = {});

/// exp(−iHt)ψ for every t in `times` through one dense decomposition.
std::vector<Vector> evolve_dense_many(const SparseOperator& h, const Vector& psi, std::span<const double> times);

}  // namespace rotinv
