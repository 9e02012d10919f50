#include "rotinv/errors.hpp"
#include "rotinv/ham_json.hpp"
#include "rotinv/ri_encode.hpp"

namespace rotinv {

nlohmann::ordered_json encoding_to_json(const RiEncoding& enc) {
  Json out;
  out["schema_version"] = 1;
  out["r"] = enc.r;
  out["twice_j"] = enc.j.twice();
  out["d"] = enc.logical_dim;
  out["J"] = enc.penalty_strength;
  out["isometry"] = complex_matrix_to_json(enc.map.isometry);
  out["source_label"] = enc.source_label;
  out["target_label"] = enc.target_label;
  return out;
}

namespace {

int int_field(const nlohmann::json& doc, const char* key) {
  const std::string p = std::string("/") + key;
  if (!doc.contains(key)) throw SchemaError(p, "missing field");
  if (!doc[key].is_number_integer()) throw SchemaError(p, "expected an integer");
  return doc[key].get<int>();
}

}  // namespace

RiEncoding encoding_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");
  const int r = int_field(doc, "r");
  const int twice_j = int_field(doc, "twice_j");
  const int d = int_field(doc, "d");
  if (r < 1 || r > kMaxDenseQubits) throw SchemaError("/r", "out of range");
  const HalfInteger j = HalfInteger::from_twice(twice_j);
  if (!is_admissible_spin(r, j)) throw SchemaError("/twice_j", "not admissible for r");
  if (d < 1 || std::uint64_t(d) > catalan_multiplicity(r, j)) throw SchemaError("/d", "exceeds the sector multiplicity");
  if (!doc.contains("J") || !doc["J"].is_number()) throw SchemaError("/J", "expected a number");
  const double jpen = doc["J"].get<double>();
  if (!(jpen >= 0.0)) throw SchemaError("/J", "must be non-negative");
  if (!doc.contains("isometry")) throw SchemaError("/isometry", "missing field");

  RiEncoding enc = make_encoding(r, j, d, jpen);
  const Matrix stored = complex_matrix_from_json(doc["isometry"], "/isometry", Index{1} << r, d);
  if (max_abs(Matrix(stored - enc.map.isometry)) > kDerivedTol) {
    throw SchemaError("/isometry", "does not match the canonical isometry for (r, j, d)");
  }
  if (doc.contains("source_label") && doc["source_label"].is_string()) enc.source_label = doc["source_label"];
  if (doc.contains("target_label") && doc["target_label"].is_string()) enc.target_label = doc["target_label"];
  return enc;
}

}  // namespace rotinv
