#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/simd/kernels.hpp"
#include "rotinv/spectral.hpp"

namespace rotinv {

LanczosResult lanczos_lowest(const LinearMap& apply, Index dimension, const LanczosOptions& options) {
  const int k = options.count;
  if (k < 1) throw std::invalid_argument("lanczos needs count >= 1");
  if (Index(k) > dimension) throw std::invalid_argument("count exceeds the dimension");
  const auto& kern = simd::kernels();
  const std::size_t n = std::size_t(dimension);
  const Index m = std::min<Index>(dimension, options.max_basis > 0 ? options.max_basis : std::max(2 * k + 20, 40));

  Matrix basis(dimension, m + 1);
  Matrix g = Matrix::Zero(m, m);
  {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    for (Index i = 0; i < dimension; ++i) basis(i, 0) = Complex(gauss(rng), gauss(rng));
    basis.col(0) /= basis.col(0).norm();
  }

  LanczosResult out;
  Index kept = 0;  // locked Ritz vectors at the front of the basis
  Vector w(dimension);
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    Index filled = m;
    double tail = 0.0;  // norm of the residual direction after the last column
    for (Index i = kept; i < m; ++i) {
      apply(basis.col(i).data(), w.data());
      ++out.matvecs;
      // classical Gram–Schmidt, twice
      for (int pass = 0; pass < 2; ++pass) {
        for (Index l = 0; l <= i; ++l) {
          const Complex c = kern.dot(basis.col(l).data(), w.data(), n);
          kern.axpy(-c, basis.col(l).data(), w.data(), n);
          g(l, i) += c;
        }
      }
      for (Index l = 0; l < i; ++l) g(i, l) = std::conj(g(l, i));
      g(i, i) = g(i, i).real();
      tail = std::sqrt(kern.norm_sq(w.data(), n));
      const double scale = std::max(1.0, std::abs(g(i, i)));
      if (tail <= 1e-13 * scale) {
        // invariant subspace
        filled = i + 1;
        tail = 0.0;
        break;
      }
      basis.col(i + 1) = w / tail;
    }

    const Matrix proj = g.topLeftCorner(filled, filled);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (proj + proj.adjoint())));
    const RealVector theta = es.eigenvalues();
    const Matrix& s = es.eigenvectors();
    const int want = int(std::min<Index>(k, filled));

    double worst = 0.0;
    bool converged = true;
    for (int i = 0; i < want; ++i) {
      const double res = tail * std::abs(s(filled - 1, i));
      worst = std::max(worst, res);
      if (res > options.tolerance * std::max(1.0, std::abs(theta(i)))) converged = false;
    }
    out.restarts = restart;
    out.max_residual = worst;
    if (want < k && tail == 0.0) {
      throw ConvergenceError("Krylov space of the start vector has dimension " + std::to_string(filled) +
                                 ", below the requested count",
                             worst);
    }
    if (converged || tail == 0.0) {
      out.values.assign(theta.data(), theta.data() + want);
      if (options.want_vectors) out.vectors = basis.leftCols(filled) * s.leftCols(want);
      return out;
    }

    // thick restart: keep the lowest Ritz vectors and the residual direction
    const Index keep = std::min<Index>(filled - 1, std::max<Index>(k + (m - k) / 2, k + 1));
    const Matrix ritz = basis.leftCols(filled) * s.leftCols(keep);
    const Vector residual = basis.col(filled);
    basis.leftCols(keep) = ritz;
    basis.col(keep) = residual;
    g.setZero();
    for (Index i = 0; i < keep; ++i) g(i, i) = theta(i);
    kept = keep;
  }
  throw ConvergenceError("lanczos did not converge in " + std::to_string(options.max_restarts) + " restarts",
                         out.max_residual);
}

std::vector<double> lowest_eigenvalues(const SparseOperator& h, int count, std::uint64_t seed) {
  LanczosOptions opts;
  opts.count = count;
  opts.seed = seed;
  return lanczos_lowest([&h](const Complex* x, Complex* y) { h.apply(x, y); }, h.dimension(), opts).values;
}

}  // namespace rotinv
