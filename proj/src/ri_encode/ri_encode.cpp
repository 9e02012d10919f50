#include <cmath>
#include <stdexcept>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/ri_encode.hpp"

namespace rotinv {
namespace {

// Applies `op` (out × in) to tensor axis `axis` of a row-major tensor.
Vector apply_to_axis(const Vector& v, const std::vector<Index>& dims, std::size_t axis, const Matrix& op) {
  Index left = 1, right = 1;
  for (std::size_t a = 0; a < axis; ++a) left *= dims[a];
  for (std::size_t a = axis + 1; a < dims.size(); ++a) right *= dims[a];
  const Index in = dims[axis];
  const Index out_dim = op.rows();
  Vector out = Vector::Zero(left * out_dim * right);
  for (Index a = 0; a < left; ++a) {
    for (Index i = 0; i < in; ++i) {
      for (Index o = 0; o < out_dim; ++o) {
        const Complex c = op(o, i);
        if (c == Complex(0.0)) continue;
        for (Index b = 0; b < right; ++b) out((a * out_dim + o) * right + b) += c * v((a * in + i) * right + b);
      }
    }
  }
  return out;
}

Matrix kron_power(const Matrix& m, int n) {
  Matrix out = m;
  for (int i = 1; i < n; ++i) out = kron(out, m);
  return out;
}

void require_encoded_size(const RiEncoding& enc, int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("need at least one logical site");
  if (enc.r * n_sites > kMaxDenseQubits) {
    throw CapacityError("encoded register of " + std::to_string(enc.r * n_sites) + " qubits exceeds the cap of " +
                        std::to_string(kMaxDenseQubits));
  }
}

}  // namespace

Matrix RiEncoding::block_frame() const {
  const Index rows = Index{1} << r;
  Matrix out(rows, Index(frames.size()) * logical_dim);
  for (std::size_t mu = 0; mu < frames.size(); ++mu) out.middleCols(Index(mu) * logical_dim, logical_dim) = frames[mu];
  return out;
}

RiEncoding make_encoding(int r, HalfInteger j, int d, double penalty_strength) {
  if (penalty_strength < 0.0) throw std::invalid_argument("penalty strength must be non-negative");
  RiEncoding enc;
  enc.r = r;
  enc.j = j;
  enc.logical_dim = d;
  enc.penalty_strength = penalty_strength;
  enc.frames = subsystem_frames(r, j, d);
  enc.map = EncodingMap{r, j, d, enc.frames.front()};
  return enc;
}

Matrix lift_operator(const Matrix& logical, int k, const RiEncoding& enc) {
  const Index d = enc.logical_dim;
  const Index mdim = enc.j.twice() + 1;
  Index dk = 1;
  for (int i = 0; i < k; ++i) dk *= d;
  if (logical.rows() != dk || logical.cols() != dk) {
    throw std::invalid_argument("logical operator dimension does not match d^k");
  }
  if (enc.r * k > kMaxDenseQubits) {
    throw CapacityError("lifted term on " + std::to_string(enc.r * k) + " qubits exceeds the dense cap");
  }
  const Index site_dim = mdim * d;
  Index frame_dim = 1;
  for (int i = 0; i < k; ++i) frame_dim *= site_dim;

  // In frame coordinates ((μ₁,l₁),…,(μ_k,l_k)) the operator is δ_{μμ'} A_{l,l'}.
  Matrix in_frame = Matrix::Zero(frame_dim, frame_dim);
  auto split = [&](Index x, Index& mu_code, Index& l_code) {
    mu_code = 0;
    l_code = 0;
    Index mu_scale = 1, l_scale = 1;
    for (int i = 0; i < k; ++i) {
      const Index digit = x % site_dim;
      x /= site_dim;
      mu_code += (digit / d) * mu_scale;
      l_code += (digit % d) * l_scale;
      mu_scale *= mdim;
      l_scale *= d;
    }
  };
  for (Index a = 0; a < frame_dim; ++a) {
    Index mu_a, l_a;
    split(a, mu_a, l_a);
    for (Index b = 0; b < frame_dim; ++b) {
      Index mu_b, l_b;
      split(b, mu_b, l_b);
      if (mu_a == mu_b) in_frame(a, b) = logical(l_a, l_b);
    }
  }
  const Matrix frame = kron_power(enc.block_frame(), k);
  Matrix lifted = frame * in_frame * frame.adjoint();
  return 0.5 * (lifted + lifted.adjoint());
}

LocalTerm penalty_field(int r, HalfInteger j, int d, double penalty_strength) {
  const RiEncoding enc = make_encoding(r, j, d, penalty_strength);
  const Matrix frame = enc.block_frame();
  const Index dim = Index{1} << r;
  Matrix p = penalty_strength * (Matrix::Identity(dim, dim) - frame * frame.adjoint());
  p = 0.5 * (p + p.adjoint());
  std::vector<int> support(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) support[std::size_t(i)] = i;
  return LocalTerm::dense(std::move(support), p);
}

double default_penalty_strength(const SpinChainHamiltonian& h1) {
  const double j = 2.0 * h1.locality() * h1.max_term_norm();
  return j > 0.0 ? j : 1.0;
}

EncodedHamiltonian encode_hamiltonian(const SpinChainHamiltonian& h1, int r, HalfInteger j,
                                      std::optional<double> penalty_strength) {
  h1.validate();
  const int d = h1.local_dim;
  require_admissible_spin(r, j);
  if (std::uint64_t(d) > catalan_multiplicity(r, j)) {
    throw std::invalid_argument("local dimension " + std::to_string(d) + " exceeds the multiplicity " +
                                std::to_string(catalan_multiplicity(r, j)) + " of j=" + j.to_string() + " on " +
                                std::to_string(r) + " qubits");
  }
  const double jpen = penalty_strength.value_or(default_penalty_strength(h1));
  EncodedHamiltonian out;
  out.encoding = make_encoding(r, j, d, jpen);
  out.encoding.source_label = h1.label;

  SpinChainHamiltonian& h2 = out.h2;
  h2.n_sites = r * h1.n_sites;
  h2.local_dim = 2;
  h2.boundary = h1.boundary;
  h2.label = "ri_encoded(" + h1.label + ", r=" + std::to_string(r) + ", j=" + j.to_string() + ")";
  out.encoding.target_label = h2.label;
  for (const auto& t : h1.terms) {
    std::vector<int> support;
    for (int s : t.support) {
      for (int q = 0; q < r; ++q) support.push_back(r * s + q);
    }
    const int k = int(t.support.size());
    h2.terms.push_back(LocalTerm::dense(std::move(support), lift_operator(t.matrix.to_dense(), k, out.encoding)));
  }
  const LocalTerm pen = penalty_field(r, j, d, jpen);
  for (int s = 0; s < h1.n_sites; ++s) {
    LocalTerm t = pen;
    for (int q = 0; q < r; ++q) t.support[std::size_t(q)] = r * s + q;
    h2.terms.push_back(std::move(t));
  }
  h2.metadata["k_prime"] = double(r * h1.locality());
  h2.metadata["J"] = jpen;
  h2.metadata["r"] = r;
  h2.metadata["twice_j"] = j.twice();
  return out;
}

Vector encode_state(const Vector& psi, const RiEncoding& enc, int n_sites) {
  require_encoded_size(enc, n_sites);
  Index expected = 1;
  for (int i = 0; i < n_sites; ++i) expected *= enc.logical_dim;
  if (psi.size() != expected) {
    throw std::invalid_argument("state dimension " + std::to_string(psi.size()) + " != d^N = " +
                                std::to_string(expected));
  }
  std::vector<Index> dims(std::size_t(n_sites), enc.logical_dim);
  Vector v = psi;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    v = apply_to_axis(v, dims, s, enc.map.isometry);
    dims[s] = Index{1} << enc.r;
  }
  return v;
}

DecodedState decode_state(const Vector& encoded, const RiEncoding& enc, int n_sites) {
  require_encoded_size(enc, n_sites);
  if (encoded.size() != (Index{1} << (enc.r * n_sites))) throw std::invalid_argument("encoded state dimension mismatch");
  std::vector<Index> dims(std::size_t(n_sites), Index{1} << enc.r);
  const Matrix vdag = enc.map.isometry.adjoint();
  Vector v = encoded;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    v = apply_to_axis(v, dims, s, vdag);
    dims[s] = enc.logical_dim;
  }
  const double kept = v.squaredNorm();
  const double total = encoded.squaredNorm();
  if (kept <= 1e-14 * std::max(total, 1e-300)) {
    throw DegenerateDecodeError("state has no weight in the code space (leakage 1)");
  }
  DecodedState out;
  out.leakage = std::max(0.0, 1.0 - kept / total);
  out.state = v / std::sqrt(kept);
  return out;
}

SparseOperator encode_observable(const SparseOperator& o1, const RiEncoding& enc, int n_sites) {
  require_encoded_size(enc, n_sites);
  const Matrix vn = kron_power(enc.map.isometry, n_sites);
  if (o1.dimension() != vn.cols()) throw std::invalid_argument("observable dimension does not match d^N");
  Matrix e = vn * o1.to_dense() * vn.adjoint();
  e = 0.5 * (e + e.adjoint());
  // entries below this are rounding noise from the isometry products
  e = e.unaryExpr([](const Complex& c) { return std::abs(c) < 1e-15 ? Complex(0.0) : c; });
  return DenseOperator(e).to_sparse();
}

Matrix encoded_sector_basis(const RiEncoding& enc, int n_sites) {
  require_encoded_size(enc, n_sites);
  return kron_power(enc.block_frame(), n_sites);
}

}  // namespace rotinv
