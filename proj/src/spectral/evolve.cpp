#include <cmath>
#include <stdexcept>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/simd/kernels.hpp"
#include "rotinv/spectral.hpp"

namespace rotinv {
namespace {

Vector evolve_with(const DenseDecomposition& dec, const Vector& psi, double t) {
  Vector out = Vector::Zero(psi.size());
  for (const auto& b : dec.blocks) {
    const Index n = Index(b.indices.size());
    Vector local(n);
    for (Index k = 0; k < n; ++k) local(k) = psi(b.indices[std::size_t(k)]);
    Vector coeff = b.vectors.adjoint() * local;
    for (Index k = 0; k < n; ++k) coeff(k) *= std::exp(Complex(0.0, -b.values(k) * t));
    const Vector back = b.vectors * coeff;
    for (Index k = 0; k < n; ++k) out(b.indices[std::size_t(k)]) = back(k);
  }
  return out;
}

// exp(−i τ T) e₁ for a small Hermitian T.
Vector small_propagator_column(const Matrix& t, double tau) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(t);
  Vector c = es.eigenvectors().row(0).adjoint();
  for (Index k = 0; k < c.size(); ++k) c(k) *= std::exp(Complex(0.0, -es.eigenvalues()(k) * tau));
  return es.eigenvectors() * c;
}

Vector evolve_krylov(const SparseOperator& h, const Vector& psi, double t, const KrylovOptions& opt) {
  const auto& kern = simd::kernels();
  const Index dim = h.dimension();
  const std::size_t n = std::size_t(dim);
  const Index m_max = std::min<Index>(opt.max_subspace, dim);
  const double direction = t < 0 ? -1.0 : 1.0;
  const double total = std::abs(t);

  Vector w = psi;
  double done = 0.0;
  double tau = total;
  Matrix basis(dim, m_max + 1);
  Vector scratch(dim);
  while (done < total) {
    const double norm = std::sqrt(kern.norm_sq(w.data(), n));
    if (norm == 0.0) return w;
    basis.col(0) = w / norm;
    Matrix proj = Matrix::Zero(m_max, m_max);
    Index m = m_max;
    double beta = 0.0;
    for (Index j = 0; j < m_max; ++j) {
      h.apply(basis.col(j).data(), scratch.data());
      for (int pass = 0; pass < 2; ++pass) {
        for (Index l = 0; l <= j; ++l) {
          const Complex c = kern.dot(basis.col(l).data(), scratch.data(), n);
          kern.axpy(-c, basis.col(l).data(), scratch.data(), n);
          proj(l, j) += c;
        }
      }
      beta = std::sqrt(kern.norm_sq(scratch.data(), n));
      if (beta <= 1e-13 * std::max(1.0, std::abs(proj(j, j)))) {
        m = j + 1;
        beta = 0.0;  // invariant subspace: the projection is exact for any step
        break;
      }
      if (j + 1 < m_max) proj(j + 1, j) = beta;
      basis.col(j + 1) = scratch / beta;
    }
    const Matrix t_small = proj.topLeftCorner(m, m);
    const Matrix herm = 0.5 * (t_small + t_small.adjoint());

    if (beta == 0.0) tau = total - done;
    tau = std::min(tau, total - done);
    for (;;) {
      const Vector y = small_propagator_column(herm, direction * tau);
      const double err = norm * beta * std::abs(y(m - 1));
      if (err <= opt.step_tolerance) {
        w = norm * (basis.leftCols(m) * y);
        done += tau;
        // grow the next step while the estimate is comfortably small
        if (err < 0.1 * opt.step_tolerance) tau *= 1.5;
        break;
      }
      tau *= 0.5;
      if (tau < 1e-14 * std::max(1.0, total)) {
        throw std::runtime_error("krylov propagation could not meet the step tolerance (error " +
                                 std::to_string(err) + ")");
      }
    }
  }
  return w;
}

}  // namespace

std::vector<Vector> evolve_dense_many(const SparseOperator& h, const Vector& psi, std::span<const double> times) {
  if (psi.size() != h.dimension()) throw std::invalid_argument("state dimension mismatch");
  const DenseDecomposition dec = dense_decomposition(h, true);
  std::vector<Vector> out;
  for (double t : times) out.push_back(evolve_with(dec, psi, t));
  return out;
}

Vector evolve(const SparseOperator& h, const Vector& psi, double t, EvolveMethod method, const KrylovOptions& options) {
  if (psi.size() != h.dimension()) throw std::invalid_argument("state dimension mismatch");
  if (t == 0.0) return psi;
  if (method == EvolveMethod::automatic) {
    method = h.dimension() <= kMaxDenseEvolveDimension ? EvolveMethod::dense : EvolveMethod::krylov;
  }
  if (method == EvolveMethod::dense) {
    const double times[] = {t};
    return evolve_dense_many(h, psi, times).front();
  }
  return evolve_krylov(h, psi, t, options);
}

}  // namespace rotinv
