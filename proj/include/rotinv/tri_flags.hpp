#pragma once

// Translation- and rotation-invariant encoding. Every encoded spin of r
// qubits is preceded by an F-qubit flag whose projector
//   P^F = P^{2,0}_{0,2} P^{2,1}_{1,3} P^{2,0}_{4,5} P^{m,m/2}_{6..5+m}
// only fires when aligned with a flag state. The small_r variant swaps the
// first two factors to P^{2,1}_{0,2} P^{2,0}_{1,3}.

#include <cstdint>
#include <string>
#include <vector>

#include "rotinv/ham_model.hpp"
#include "rotinv/half_integer.hpp"

namespace rotinv {

enum class FlagVariant { general, improved, small_r };

const char* to_string(FlagVariant v);
/// Throws std::invalid_argument for unknown names.
FlagVariant flag_variant_from_string(const std::string& name);

struct FlagSpec {
  int r = 0;
  HalfInteger j;
  int m = 0;
  int flag_length = 0;  // F = 6 + m
  FlagVariant variant = FlagVariant::general;
};

/// general: m = max(r−1, 5); improved: requires r/2 ≥ j+6, m = r/2+j+1;
/// small_r: requires r ∈ {3, 4}, m = r+1.
FlagSpec make_flag_spec(int r, HalfInteger j, FlagVariant variant);

/// One total-spin projector P^{q, spin} acting on `support`.
struct ProjectorFactor {
  std::vector<int> support;
  HalfInteger spin;
  std::string name() const;  // e.g. "P^{2,0}{0,2}"
};

/// The four factors of P^F at flag-local positions 0..F−1.
std::vector<ProjectorFactor> flag_factors(const FlagSpec& spec);

struct FlagProjector {
  FlagSpec spec;
  SparseOperator op;  // on F qubits
  std::uint64_t rank = 0;
};

FlagProjector flag_projector(const FlagSpec& spec);

/// Checks A·E·B·C = 0 for every offset n = 1..r+F−1, where A and B are flags
/// at 0 and F+r, E = P^{r,j} on the encoded block F..F+r−1 and C is a flag
/// at n. Each offset is settled by finding a factor of C and a factor of
/// A·E·B whose product vanishes; one report per offset.
std::vector<InvarianceReport> verify_flag_overlaps(const FlagSpec& spec, double tolerance = kDerivedTol);

/// k' = k(F + r).
int body_size(int k, const FlagSpec& spec);

/// (3(m+1))^N (F + r).
std::uint64_t degeneracy_count(const FlagSpec& spec, int n_logical);

/// Periodic chain of N(F+r) qubits: the sum over all single-qubit
/// translations of the flag-conditioned lifted term and of
/// J'(1 − P^F ⊗ P^{r,j}). `h` acts on logical sites 0..k−1 with dimension
/// d ≤ multiplicity(r, j). Metadata records k_prime, J_prime and
/// penalty_offset = J'·N·(F+r−1).
SpinChainHamiltonian build_tri_hamiltonian(const LocalTerm& h, int local_dim, const FlagSpec& spec, int n_logical);

}  // namespace rotinv

#include <json.hpp>

namespace rotinv {

/// {"r": int, "twice_j": int, "m": int, "F": int, "variant": name}
nlohmann::ordered_json flag_spec_to_json(const FlagSpec& spec);
/// Rebuilds through make_flag_spec and checks the stored m and F; throws
/// SchemaError.
FlagSpec flag_spec_from_json(const nlohmann::json& j);

}  // namespace rotinv
