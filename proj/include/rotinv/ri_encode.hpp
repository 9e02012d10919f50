#pragma once

// Rotation-invariant encoding of a chain of d-level spins into blocks of r
// qubits. Each logical spin lives in the first d multiplicity levels of the
// total-spin-j sector; logical operators act on the multiplicity factor N_j
// and as identity on M_j, and a per-block penalty J(1 − Π_used) lifts every
// other block state.

#include <optional>
#include <string>
#include <vector>

#include "rotinv/ham_model.hpp"
#include "rotinv/spin_core.hpp"

namespace rotinv {

struct RiEncoding {
  int r = 0;
  HalfInteger j;
  int logical_dim = 0;
  double penalty_strength = 0.0;  // J
  EncodingMap map;                // highest-weight isometry V
  std::vector<Matrix> frames;     // V_m for m = j, j−1, …, −j
  std::string source_label;
  std::string target_label;

  /// [V_j, V_{j−1}, …, V_{−j}]: 2^r × (2j+1)d, column (μ, l) at μ·d + l.
  Matrix block_frame() const;
};

/// Throws std::invalid_argument when d exceeds the multiplicity of (r, j).
RiEncoding make_encoding(int r, HalfInteger j, int d, double penalty_strength);

/// 1_{M_j}^{⊗k} ⊗ A on the rk qubits of k encoded blocks, for a logical
/// operator A on k sites (dimension d^k).
Matrix lift_operator(const Matrix& logical, int k, const RiEncoding& enc);

/// J(1 − Π_used) on one r-qubit block, support 0..r−1.
LocalTerm penalty_field(int r, HalfInteger j, int d, double penalty_strength);

struct EncodedHamiltonian {
  SpinChainHamiltonian h2;
  RiEncoding encoding;
};

/// J defaults to 2·k·max‖h_i‖, or 1 when that product vanishes.
double default_penalty_strength(const SpinChainHamiltonian& h1);

EncodedHamiltonian encode_hamiltonian(const SpinChainHamiltonian& h1, int r, HalfInteger j,
                                      std::optional<double> penalty_strength = std::nullopt);

/// V^{⊗N}ψ.
Vector encode_state(const Vector& psi, const RiEncoding& enc, int n_sites);

struct DecodedState {
  Vector state;
  double leakage = 0.0;  // 1 − ‖(V†)^{⊗N}Ψ‖²
};

/// Throws DegenerateDecodeError when Ψ has no weight in the image of V^{⊗N}.
DecodedState decode_state(const Vector& encoded, const RiEncoding& enc, int n_sites);

/// V^{⊗N} O (V†)^{⊗N}; zero on the orthogonal complement of the image.
SparseOperator encode_observable(const SparseOperator& o1, const RiEncoding& enc, int n_sites);

/// Orthonormal basis of the full encoded sector (all M-labels): the
/// 2^{rN} × ((2j+1)d)^N matrix block_frame()^{⊗N}.
Matrix encoded_sector_basis(const RiEncoding& enc, int n_sites);

}  // namespace rotinv

#include <json.hpp>

namespace rotinv {

/// {"schema_version": 1, "r": int, "twice_j": int, "d": int, "J": float,
///  "isometry": [[[re, im], ...], ...]} with the isometry as 2^r rows of d
/// entries, plus "source_label"/"target_label".
nlohmann::ordered_json encoding_to_json(const RiEncoding& enc);

/// Rebuilds the encoding from (r, twice_j, d, J) and checks the stored
/// isometry against it; throws SchemaError on any mismatch.
RiEncoding encoding_from_json(const nlohmann::json& j);

}  // namespace rotinv
