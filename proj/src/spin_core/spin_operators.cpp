#include <bit>
#include <stdexcept>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/spin_core.hpp"

namespace rotinv {
namespace {

void require_dense_qubits(int r) {
  if (r < 1) throw std::invalid_argument("need at least one qubit");
  if (r > kMaxDenseQubits) {
    throw CapacityError("dense operator on " + std::to_string(r) + " qubits exceeds the cap of " +
                        std::to_string(kMaxDenseQubits));
  }
}

std::uint64_t checked_power(int base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    out *= static_cast<std::uint64_t>(base);
    if (out > kMaxSparseDimension) {
      throw CapacityError("dimension " + std::to_string(base) + "^" + std::to_string(exponent) +
                          " exceeds the sparse cap of " + std::to_string(kMaxSparseDimension));
    }
  }
  return out;
}

}  // namespace

Matrix pauli(Axis a) {
  using namespace std::complex_literals;
  Matrix s(2, 2);
  switch (a) {
    case Axis::x: s << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::y: s << 0.0, -1i, 1i, 0.0; break;
    case Axis::z: s << 1.0, 0.0, 0.0, -1.0; break;
  }
  return s;
}

SparseOperator collective_spin(int n, Axis a) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  const std::uint64_t dim = checked_power(2, n);
  std::vector<Triplet> t;
  t.reserve(a == Axis::z ? dim : dim * n);
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (a == Axis::z) {
      const int ones = std::popcount(x);
      t.emplace_back(int(x), int(x), Complex(0.5 * (n - 2 * ones)));
      continue;
    }
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      const std::uint64_t y = x ^ bit;
      // ⟨y|σ_x|x⟩ = 1; ⟨y|σ_y|x⟩ = i for x_q = 0 → 1 and −i for 1 → 0
      Complex v = 0.5;
      if (a == Axis::y) v = (x & bit) ? Complex(0.0, -0.5) : Complex(0.0, 0.5);
      t.emplace_back(int(y), int(x), v);
    }
  }
  return SparseOperator::from_triplets(Index(dim), t);
}

SparseOperator raising_operator(int n) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  const std::uint64_t dim = checked_power(2, n);
  std::vector<Triplet> t;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      if (x & bit) t.emplace_back(int(x ^ bit), int(x), Complex(1.0));  // |1⟩ (down) → |0⟩ (up)
    }
  }
  return SparseOperator::from_triplets(Index(dim), t);
}

DenseOperator casimir_operator(int r) {
  require_dense_qubits(r);
  // σ⃗_i·σ⃗_k = 2 SWAP_ik − 1, so J² = (3r/4 − r(r−1)/4)·1 + Σ_{i<k} SWAP_ik.
  const Index dim = Index{1} << r;
  Matrix c = Matrix::Zero(dim, dim);
  const double diag = 0.75 * r - 0.25 * r * (r - 1);
  for (Index x = 0; x < dim; ++x) {
    c(x, x) += diag;
    for (int i = 0; i < r; ++i) {
      for (int k = i + 1; k < r; ++k) {
        const Index bi = Index{1} << (r - 1 - i);
        const Index bk = Index{1} << (r - 1 - k);
        const bool same = ((x & bi) != 0) == ((x & bk) != 0);
        const Index y = same ? x : (x ^ bi ^ bk);
        c(y, x) += 1.0;
      }
    }
  }
  return DenseOperator(std::move(c));
}

DenseOperator total_spin_projector(int r, HalfInteger j) {
  require_dense_qubits(r);
  require_admissible_spin(r, j);
  const RealMatrix casimir = casimir_operator(r).matrix().real();
  const Index dim = Index{1} << r;
  Matrix p = Matrix::Zero(dim, dim);
  const double target = j.casimir();
  // J² preserves the number of down spins, so diagonalize one weight block at a time.
  for (int w = 0; w <= r; ++w) {
    std::vector<Index> idx;
    for (Index x = 0; x < dim; ++x) {
      if (std::popcount(static_cast<std::uint64_t>(x)) == w) idx.push_back(x);
    }
    const Index b = Index(idx.size());
    RealMatrix block(b, b);
    for (Index a = 0; a < b; ++a) {
      for (Index c = 0; c < b; ++c) block(a, c) = casimir(idx[a], idx[c]);
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(block);
    std::vector<Index> keep;
    for (Index k = 0; k < b; ++k) {
      // Casimir eigenvalues are at least 2 apart
      if (std::abs(es.eigenvalues()(k) - target) < 0.5) keep.push_back(k);
    }
    if (keep.empty()) continue;
    RealMatrix v(b, Index(keep.size()));
    for (Index k = 0; k < Index(keep.size()); ++k) v.col(k) = es.eigenvectors().col(keep[k]);
    const RealMatrix pb = v * v.transpose();
    for (Index a = 0; a < b; ++a) {
      for (Index c = 0; c < b; ++c) p(idx[a], idx[c]) = pb(a, c);
    }
  }
  return DenseOperator(std::move(p));
}

DenseOperator symmetric_projector(int m) { return total_spin_projector(m, HalfInteger::from_twice(m)); }

SparseOperator embed_on_support(const DenseOperator& op, std::span<const int> support, int n,
                                int local_dim) {
  return embed_on_support(op.to_sparse(), support, n, local_dim);
}

SparseOperator embed_on_support(const SparseOperator& op, std::span<const int> support, int n,
                                int local_dim) {
  if (local_dim < 1) throw std::invalid_argument("local dimension must be positive");
  if (n < 1) throw std::invalid_argument("need at least one site");
  const int s = int(support.size());
  std::vector<bool> seen(std::size_t(n), false);
  for (int site : support) {
    if (site < 0 || site >= n) {
      throw std::invalid_argument("support site " + std::to_string(site) + " out of range for " +
                                  std::to_string(n) + " sites");
    }
    if (seen[std::size_t(site)]) {
      throw std::invalid_argument("duplicate support site " + std::to_string(site));
    }
    seen[std::size_t(site)] = true;
  }
  const std::uint64_t local = checked_power(local_dim, s);
  if (std::uint64_t(op.dimension()) != local) {
    throw std::invalid_argument("operator dimension " + std::to_string(op.dimension()) +
                                " does not match support of " + std::to_string(s) + " sites");
  }
  const std::uint64_t dim = checked_power(local_dim, n);

  // stride of each site in the global index, and global offset of each local index
  std::vector<std::uint64_t> stride(static_cast<std::size_t>(n));
  for (int site = n - 1, acc = 1; site >= 0; --site) {
    stride[std::size_t(site)] = std::uint64_t(acc);
    if (site > 0) acc *= local_dim;
  }
  std::vector<std::uint64_t> offset(local, 0);
  for (std::uint64_t l = 0; l < local; ++l) {
    std::uint64_t rest = l;
    for (int i = s - 1; i >= 0; --i) {
      offset[l] += (rest % std::uint64_t(local_dim)) * stride[std::size_t(support[std::size_t(i)])];
      rest /= std::uint64_t(local_dim);
    }
  }

  // nonzeros of op, column by column
  const SparseMatrix& m = op.matrix();
  std::vector<std::vector<std::pair<std::uint64_t, Complex>>> columns(local);
  for (Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) columns[std::size_t(it.col())].emplace_back(r, it.value());
  }
  const std::uint64_t nnz_local = std::uint64_t(m.nonZeros());
  const std::uint64_t nnz = nnz_local * (dim / local);
  if (nnz > kMaxSparseNonzeros) {
    throw CapacityError("embedded operator needs " + std::to_string(nnz) +
                        " nonzeros, above the cap of " + std::to_string(kMaxSparseNonzeros));
  }

  std::vector<Triplet> t;
  t.reserve(nnz);
  for (std::uint64_t x = 0; x < dim; ++x) {
    std::uint64_t col = 0;
    std::uint64_t base = x;
    for (int i = 0; i < s; ++i) {
      const std::uint64_t st = stride[std::size_t(support[std::size_t(i)])];
      const std::uint64_t digit = (x / st) % std::uint64_t(local_dim);
      col = col * std::uint64_t(local_dim) + digit;
      base -= digit * st;
    }
    for (const auto& [row, v] : columns[col]) t.emplace_back(int(base + offset[row]), int(x), v);
  }
  return SparseOperator::from_triplets(Index(dim), t);
}

double embedded_product_residual(const DenseOperator& a, std::span<const int> support_a,
                                 const DenseOperator& b, std::span<const int> support_b, int n) {
  return (embed_on_support(a, support_a, n) * embed_on_support(b, support_b, n)).max_abs();
}

double check_sector_orthogonality(int r, HalfInteger j, int m) {
  if (m < 1 || m > r) {
    throw std::invalid_argument("block size m must satisfy 1 <= m <= r");
  }
  std::vector<int> block(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) block[std::size_t(i)] = i;
  std::vector<int> all(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) all[std::size_t(i)] = i;
  return embedded_product_residual(total_spin_projector(r, j), all, symmetric_projector(m), block, r);
}

}  // namespace rotinv
