#pragma once

// Hamiltonian file format:
//   {"n": int, "local_dim": int, "boundary": "open"|"periodic",
//    "terms": [{"support": [int...], "matrix": [[[re, im], ...], ...]}],
//    "label": string}
// Matrices are row-major with complex entries as [re, im] doubles. Writers
// add an optional "metadata" object of numbers; readers ignore unknown keys.
// Terms above kDenseTermJsonLimit are written as
//   "sparse_matrix": {"dimension": int, "entries": [[row, col, [re, im]], ...]}
// in place of "matrix"; readers accept either form.

#include <filesystem>
#include <json.hpp>

#include "rotinv/ham_model.hpp"

namespace rotinv {

using Json = nlohmann::ordered_json;

inline constexpr Index kDenseTermJsonLimit = 256;

Json complex_matrix_to_json(const Matrix& m);
/// Throws SchemaError at `pointer` when `j` is not a rows × cols complex matrix.
Matrix complex_matrix_from_json(const nlohmann::json& j, const std::string& pointer, Index rows, Index cols);

Json hamiltonian_to_json(const SpinChainHamiltonian& h);
/// Structural and semantic validation; throws SchemaError.
SpinChainHamiltonian hamiltonian_from_json(const nlohmann::json& j);

/// Throws SchemaError with pointer "" for unreadable or unparsable files.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

SpinChainHamiltonian load_hamiltonian(const std::filesystem::path& path);
void save_hamiltonian(const std::filesystem::path& path, const SpinChainHamiltonian& h);

}  // namespace rotinv
