#include "rotinv/operators.hpp"

#include <algorithm>
#include <stdexcept>

#include "rotinv/simd/kernels.hpp"

namespace rotinv {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  const Complex* v = m.valuePtr();
  for (Index k = 0; k < m.nonZeros(); ++k) out = std::max(out, std::abs(v[k]));
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator::DenseOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix must be square");
}

DenseOperator DenseOperator::identity(Index dim) { return DenseOperator(Matrix::Identity(dim, dim)); }
DenseOperator DenseOperator::zero(Index dim) { return DenseOperator(Matrix::Zero(dim, dim)); }

double DenseOperator::hermiticity_residual() const { return max_abs(Matrix(m_ - m_.adjoint())); }

SparseOperator DenseOperator::to_sparse() const {
  std::vector<Triplet> triplets;
  for (Index i = 0; i < m_.rows(); ++i) {
    for (Index j = 0; j < m_.cols(); ++j) {
      if (m_(i, j) != Complex(0.0)) triplets.emplace_back(int(i), int(j), m_(i, j));
    }
  }
  return SparseOperator::from_triplets(m_.rows(), triplets);
}

namespace {

void drop_zeros(SparseMatrix& m) {
  m.prune([](Index, Index, const Complex& v) { return v != Complex(0.0); });
  m.makeCompressed();
}

}  // namespace

SparseOperator::SparseOperator(SparseMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix must be square");
  drop_zeros(m_);
}

SparseOperator SparseOperator::from_triplets(Index dim, const std::vector<Triplet>& triplets) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::identity(Index dim) {
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::zero(Index dim) { return SparseOperator(SparseMatrix(dim, dim)); }

void SparseOperator::apply(const Complex* x, Complex* y) const {
  simd::kernels().csr_matvec(static_cast<std::size_t>(m_.rows()), m_.outerIndexPtr(),
                             m_.innerIndexPtr(), m_.valuePtr(), x, y);
}

Vector SparseOperator::apply(const Vector& x) const {
  if (x.size() != dimension()) throw std::invalid_argument("vector dimension mismatch");
  Vector y(dimension());
  apply(x.data(), y.data());
  return y;
}

SparseOperator SparseOperator::adjoint() const { return SparseOperator(SparseMatrix(m_.adjoint())); }

double SparseOperator::hermiticity_residual() const {
  return rotinv::max_abs(SparseMatrix(m_ - SparseMatrix(m_.adjoint())));
}

bool SparseOperator::is_real() const {
  const Complex* v = m_.valuePtr();
  return std::all_of(v, v + m_.nonZeros(), [](const Complex& c) { return c.imag() == 0.0; });
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  return SparseOperator(SparseMatrix(a.m_ + b.m_));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  return SparseOperator(SparseMatrix(a.m_ - b.m_));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  return SparseOperator(SparseMatrix(a.m_ * b.m_));
}

SparseOperator operator*(Complex s, const SparseOperator& a) {
  return SparseOperator(SparseMatrix(s * a.m_));
}

double commutator_residual(const SparseOperator& a, const SparseOperator& b) {
  return (a * b - b * a).max_abs();
}

}  // namespace rotinv
