#include <fstream>
#include <set>
#include <sstream>

#include "rotinv/errors.hpp"
#include "rotinv/ham_json.hpp"

namespace rotinv {

Json complex_matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix complex_matrix_from_json(const nlohmann::json& j, const std::string& pointer, Index rows, Index cols) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array of rows");
  if (Index(j.size()) != rows) {
    throw SchemaError(pointer, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[std::size_t(i)];
    const std::string rp = pointer + "/" + std::to_string(i);
    if (!row.is_array() || Index(row.size()) != cols) {
      throw SchemaError(rp, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (Index k = 0; k < cols; ++k) {
      const auto& e = row[std::size_t(k)];
      const std::string ep = rp + "/" + std::to_string(k);
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw SchemaError(ep, "expected [re, im]");
      }
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

namespace {

Json sparse_term_to_json(const SparseMatrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      const Complex v = it.value();
      entries.push_back(Json::array({i, it.col(), Json::array({v.real(), v.imag()})}));
    }
  }
  Json out;
  out["dimension"] = m.rows();
  out["entries"] = std::move(entries);
  return out;
}

SparseOperator sparse_term_from_json(const nlohmann::json& j, const std::string& pointer, Index dim) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer() || j["dimension"].get<long long>() != dim) {
    throw SchemaError(pointer + "/dimension", "expected " + std::to_string(dim));
  }
  if (!j.contains("entries") || !j["entries"].is_array()) throw SchemaError(pointer + "/entries", "expected an array");
  std::vector<Triplet> triplets;
  std::set<std::pair<long long, long long>> seen;
  const auto& entries = j["entries"];
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const auto& e = entries[n];
    const std::string ep = pointer + "/entries/" + std::to_string(n);
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_array() || e[2].size() != 2 || !e[2][0].is_number() || !e[2][1].is_number()) {
      throw SchemaError(ep, "expected [row, col, [re, im]]");
    }
    const auto r = e[0].get<long long>();
    const auto c = e[1].get<long long>();
    if (r < 0 || r >= dim || c < 0 || c >= dim) throw SchemaError(ep, "coordinate out of range");
    if (!seen.emplace(r, c).second) throw SchemaError(ep, "duplicate coordinate");
    triplets.emplace_back(int(r), int(c), Complex(e[2][0].get<double>(), e[2][1].get<double>()));
  }
  return SparseOperator::from_triplets(dim, triplets);
}

}  // namespace

Json hamiltonian_to_json(const SpinChainHamiltonian& h) {
  Json out;
  out["n"] = h.n_sites;
  out["local_dim"] = h.local_dim;
  out["boundary"] = to_string(h.boundary);
  Json terms = Json::array();
  for (const auto& t : h.terms) {
    Json term;
    term["support"] = t.support;
    if (t.matrix.dimension() <= kDenseTermJsonLimit) {
      term["matrix"] = complex_matrix_to_json(t.matrix.to_dense());
    } else {
      term["sparse_matrix"] = sparse_term_to_json(t.matrix.matrix());
    }
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  out["label"] = h.label;
  if (!h.metadata.empty()) {
    Json meta;
    for (const auto& [k, v] : h.metadata) meta[k] = v;
    out["metadata"] = std::move(meta);
  }
  return out;
}

namespace {

int require_int(const nlohmann::json& doc, const std::string& key, int min_value) {
  const std::string p = "/" + key;
  if (!doc.contains(key)) throw SchemaError(p, "missing field");
  const auto& v = doc[key];
  if (!v.is_number_integer()) throw SchemaError(p, "expected an integer");
  const auto x = v.get<long long>();
  if (x < min_value || x > 1'000'000) throw SchemaError(p, "value out of range");
  return int(x);
}

}  // namespace

SpinChainHamiltonian hamiltonian_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");
  SpinChainHamiltonian h;
  h.n_sites = require_int(doc, "n", 1);
  h.local_dim = require_int(doc, "local_dim", 1);

  if (!doc.contains("boundary")) throw SchemaError("/boundary", "missing field");
  const auto& b = doc["boundary"];
  if (!b.is_string()) throw SchemaError("/boundary", "expected a string");
  if (b == "open") {
    h.boundary = Boundary::open;
  } else if (b == "periodic") {
    h.boundary = Boundary::periodic;
  } else {
    throw SchemaError("/boundary", "expected \"open\" or \"periodic\"");
  }

  if (!doc.contains("label")) throw SchemaError("/label", "missing field");
  if (!doc["label"].is_string()) throw SchemaError("/label", "expected a string");
  h.label = doc["label"].get<std::string>();

  if (!doc.contains("terms")) throw SchemaError("/terms", "missing field");
  const auto& terms = doc["terms"];
  if (!terms.is_array()) throw SchemaError("/terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = "/terms/" + std::to_string(i);
    const auto& t = terms[i];
    if (!t.is_object()) throw SchemaError(tp, "expected an object");
    if (!t.contains("support") || !t["support"].is_array() || t["support"].empty()) {
      throw SchemaError(tp + "/support", "expected a non-empty array of site indices");
    }
    LocalTerm term;
    std::set<int> seen;
    for (std::size_t k = 0; k < t["support"].size(); ++k) {
      const auto& s = t["support"][k];
      const std::string sp = tp + "/support/" + std::to_string(k);
      if (!s.is_number_integer()) throw SchemaError(sp, "expected an integer");
      const auto site = s.get<long long>();
      if (site < 0 || site >= h.n_sites) throw SchemaError(sp, "site out of range");
      if (!seen.insert(int(site)).second) throw SchemaError(sp, "duplicate site");
      term.support.push_back(int(site));
    }
    if (h.boundary == Boundary::open && support_wraps(term.support)) {
      throw SchemaError(tp + "/support", "wrapped support on an open chain");
    }
    Index dim = 1;
    for (std::size_t k = 0; k < term.support.size(); ++k) {
      dim *= h.local_dim;
      if (dim > (Index{1} << 14)) throw SchemaError(tp + "/support", "local term too large");
    }
    if (t.contains("matrix")) {
      term.matrix = DenseOperator(complex_matrix_from_json(t["matrix"], tp + "/matrix", dim, dim)).to_sparse();
    } else if (t.contains("sparse_matrix")) {
      term.matrix = sparse_term_from_json(t["sparse_matrix"], tp + "/sparse_matrix", dim);
    } else {
      throw SchemaError(tp + "/matrix", "missing field");
    }
    if (term.matrix.hermiticity_residual() > kDirectTol) throw SchemaError(tp + "/matrix", "matrix is not Hermitian");
    h.terms.push_back(std::move(term));
  }

  if (doc.contains("metadata")) {
    const auto& meta = doc["metadata"];
    if (!meta.is_object()) throw SchemaError("/metadata", "expected an object");
    for (auto it = meta.begin(); it != meta.end(); ++it) {
      if (!it.value().is_number()) throw SchemaError("/metadata/" + it.key(), "expected a number");
      h.metadata[it.key()] = it.value().get<double>();
    }
  }
  return h;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", path.string() + " is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

SpinChainHamiltonian load_hamiltonian(const std::filesystem::path& path) {
  return hamiltonian_from_json(read_json_file(path));
}

void save_hamiltonian(const std::filesystem::path& path, const SpinChainHamiltonian& h) {
  write_json_file(path, hamiltonian_to_json(h));
}

}  // namespace rotinv
