#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/ham_model.hpp"
#include "rotinv/spectral.hpp"

namespace rotinv {

const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

int SpinChainHamiltonian::locality() const {
  std::size_t k = 0;
  for (const auto& t : terms) k = std::max(k, t.support.size());
  return int(k);
}

std::uint64_t SpinChainHamiltonian::dimension() const {
  std::uint64_t dim = 1;
  for (int i = 0; i < n_sites; ++i) {
    dim *= std::uint64_t(local_dim);
    if (dim > kMaxSparseDimension) {
      throw CapacityError("Hilbert space " + std::to_string(local_dim) + "^" + std::to_string(n_sites) +
                          " exceeds the cap of " + std::to_string(kMaxSparseDimension));
    }
  }
  return dim;
}

double operator_norm(const DenseOperator& op) {
  if (op.dimension() == 0) return 0.0;
  if (op.is_hermitian(kDirectTol)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Matrix> svd(op.matrix());
  return svd.singularValues()(0);
}

double operator_norm(const SparseOperator& op) {
  if (op.dimension() <= 2048) return operator_norm(DenseOperator(op.to_dense()));
  if (op.hermiticity_residual() > kDirectTol) {
    throw std::invalid_argument("operator_norm of a large non-Hermitian sparse operator is not supported");
  }
  const double low = lowest_eigenvalues(op, 1).front();
  const double high = -lowest_eigenvalues(-1.0 * op, 1).front();
  return std::max(std::abs(low), std::abs(high));
}

double SpinChainHamiltonian::max_term_norm() const {
  double out = 0.0;
  for (const auto& t : terms) out = std::max(out, operator_norm(t.matrix));
  return out;
}

bool support_wraps(const std::vector<int>& support) {
  for (std::size_t i = 1; i < support.size(); ++i) {
    if (support[i] < support[i - 1]) return true;
  }
  return false;
}

void SpinChainHamiltonian::validate() const {
  if (n_sites < 1) throw std::invalid_argument("n_sites must be positive");
  if (local_dim < 1) throw std::invalid_argument("local_dim must be positive");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const std::string where = "term " + std::to_string(i) + ": ";
    if (t.support.empty()) throw std::invalid_argument(where + "empty support");
    std::set<int> unique;
    for (int s : t.support) {
      if (s < 0 || s >= n_sites) throw std::invalid_argument(where + "site " + std::to_string(s) + " out of range");
      if (!unique.insert(s).second) throw std::invalid_argument(where + "duplicate site " + std::to_string(s));
    }
    if (boundary == Boundary::open && support_wraps(t.support)) {
      throw std::invalid_argument(where + "wrapped support on an open chain");
    }
    Index expected = 1;
    for (std::size_t k = 0; k < t.support.size(); ++k) expected *= local_dim;
    if (t.matrix.dimension() != expected) {
      throw std::invalid_argument(where + "matrix dimension " + std::to_string(t.matrix.dimension()) +
                                  " != local_dim^k = " + std::to_string(expected));
    }
    if (t.matrix.hermiticity_residual() > kDirectTol) throw std::invalid_argument(where + "matrix is not Hermitian");
  }
}

SparseOperator build_global(const SpinChainHamiltonian& h) {
  const std::uint64_t dim = h.dimension();
  SparseMatrix acc(static_cast<Index>(dim), static_cast<Index>(dim));
  for (const auto& t : h.terms) {
    acc += embed_on_support(t.matrix, t.support, h.n_sites, h.local_dim).matrix();
    if (std::uint64_t(acc.nonZeros()) > kMaxSparseNonzeros) {
      throw CapacityError("assembled Hamiltonian exceeds " + std::to_string(kMaxSparseNonzeros) +
                          " nonzeros");
    }
  }
  return SparseOperator(std::move(acc));
}

std::uint64_t translate_index(std::uint64_t x, int n_sites, int local_dim, int shift) {
  const std::uint64_t d = std::uint64_t(local_dim);
  std::uint64_t top = 1;  // d^(n−1)
  for (int i = 1; i < n_sites; ++i) top *= d;
  shift %= n_sites;
  if (shift < 0) shift += n_sites;
  for (int s = 0; s < shift; ++s) {
    // |i₁ i₂ … i_N⟩ → |i₂ … i_N i₁⟩
    const std::uint64_t lead = x / top;
    x = (x % top) * d + lead;
  }
  return x;
}

SparseOperator translation_operator(int n_sites, int local_dim) {
  if (n_sites < 1 || local_dim < 1) throw std::invalid_argument("translation needs n_sites, local_dim >= 1");
  SpinChainHamiltonian probe;
  probe.n_sites = n_sites;
  probe.local_dim = local_dim;
  const std::uint64_t dim = probe.dimension();
  std::vector<Triplet> t;
  t.reserve(dim);
  for (std::uint64_t x = 0; x < dim; ++x) t.emplace_back(int(translate_index(x, n_sites, local_dim, 1)), int(x), 1.0);
  return SparseOperator::from_triplets(Index(dim), t);
}

}  // namespace rotinv
