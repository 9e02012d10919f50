#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/spectral.hpp"

namespace rotinv {

const char* to_string(SolverMethod m) { return m == SolverMethod::dense ? "dense" : "iterative"; }

std::vector<Level> cluster_levels(std::span<const double> ascending, double tol) {
  std::vector<Level> out;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (i == 0 || ascending[i] - ascending[i - 1] > tol) {
      out.push_back({ascending[i], 1});
    } else {
      ++out.back().count;
    }
  }
  return out;
}

void summarize_spectrum(SpectralResult& r) {
  r.degeneracies = cluster_levels(r.eigenvalues);
  r.ground_energy = r.eigenvalues.empty() ? 0.0 : r.eigenvalues.front();
  r.gap = r.degeneracies.size() >= 2 ? r.degeneracies[1].energy - r.degeneracies[0].energy : 0.0;
}

std::vector<std::vector<Index>> connected_blocks(const SparseOperator& h) {
  const Index n = h.dimension();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[std::size_t(x)] != x) {
      parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
      x = parent[std::size_t(x)];
    }
    return x;
  };
  const SparseMatrix& m = h.matrix();
  for (Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      const Index a = find(r), b = find(it.col());
      if (a != b) parent[std::size_t(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<Index> root_to_block(std::size_t(n), -1);
  std::vector<std::vector<Index>> blocks;
  for (Index x = 0; x < n; ++x) {
    const Index root = find(x);
    if (root_to_block[std::size_t(root)] < 0) {
      root_to_block[std::size_t(root)] = Index(blocks.size());
      blocks.emplace_back();
    }
    blocks[std::size_t(root_to_block[std::size_t(root)])].push_back(x);
  }
  return blocks;
}

namespace {

void require_hermitian(const SparseOperator& h) {
  const double scale = std::max(1.0, h.max_abs());
  const double res = h.hermiticity_residual();
  if (res > kDirectTol * scale) {
    throw std::invalid_argument("operator is not Hermitian (residual " + std::to_string(res) + ")");
  }
}

}  // namespace

DenseDecomposition dense_decomposition(const SparseOperator& h, bool with_vectors) {
  if (h.dimension() > kMaxDenseSpectrumDimension) {
    throw CapacityError("dense spectrum of dimension " + std::to_string(h.dimension()) + " exceeds the cap of " +
                        std::to_string(kMaxDenseSpectrumDimension));
  }
  require_hermitian(h);
  const bool real = h.is_real();
  DenseDecomposition out;
  out.dimension = h.dimension();
  const SparseMatrix& m = h.matrix();
  std::vector<Index> local(std::size_t(h.dimension()));
  for (auto& indices : connected_blocks(h)) {
    const Index b = Index(indices.size());
    for (Index k = 0; k < b; ++k) local[std::size_t(indices[std::size_t(k)])] = k;
    Matrix block = Matrix::Zero(b, b);
    for (Index k = 0; k < b; ++k) {
      for (SparseMatrix::InnerIterator it(m, indices[std::size_t(k)]); it; ++it) {
        block(k, local[std::size_t(it.col())]) = it.value();
      }
    }
    EigenBlock eb;
    const auto opts = with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    if (real) {
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(block.real(), opts);
      eb.values = es.eigenvalues();
      if (with_vectors) eb.vectors = es.eigenvectors().cast<Complex>();
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(block, opts);
      eb.values = es.eigenvalues();
      if (with_vectors) eb.vectors = es.eigenvectors();
    }
    eb.indices = std::move(indices);
    out.blocks.push_back(std::move(eb));
  }
  return out;
}

std::vector<double> DenseDecomposition::eigenvalues() const {
  std::vector<double> all;
  all.reserve(std::size_t(dimension));
  for (const auto& b : blocks) all.insert(all.end(), b.values.data(), b.values.data() + b.values.size());
  std::sort(all.begin(), all.end());
  return all;
}

SpectralResult eigensolve(const SparseOperator& h, int count, SolverMethod mode, std::uint64_t seed) {
  SpectralResult r;
  r.method = mode;
  r.seed = seed;
  if (mode == SolverMethod::dense) {
    // full spectrum regardless of count, so degeneracies are complete
    r.eigenvalues = dense_decomposition(h, false).eigenvalues();
  } else {
    require_hermitian(h);
    LanczosOptions opts;
    opts.count = count;
    opts.seed = seed;
    const LanczosResult lr = lanczos_lowest([&h](const Complex* x, Complex* y) { h.apply(x, y); }, h.dimension(), opts);
    r.eigenvalues = lr.values;
    r.iterations = lr.restarts;
    r.max_residual = lr.max_residual;
  }
  summarize_spectrum(r);
  return r;
}

}  // namespace rotinv
