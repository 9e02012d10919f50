#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <vector>

namespace rotinv {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, int>;
using Triplet = Eigen::Triplet<Complex, int>;

/// Tolerance for quantities produced by a direct construction.
inline constexpr double kDirectTol = 1e-12;
/// Tolerance for identities derived through products or decompositions.
inline constexpr double kDerivedTol = 1e-10;

double max_abs(const Matrix& m);
double max_abs(const SparseMatrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

class SparseOperator;

/// Square complex matrix.
class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(Matrix m);

  static DenseOperator identity(Index dim);
  static DenseOperator zero(Index dim);

  Index dimension() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  double hermiticity_residual() const;
  bool is_hermitian(double tol = kDirectTol) const { return hermiticity_residual() <= tol; }

  SparseOperator to_sparse() const;

 private:
  Matrix m_;
};

/// Square complex matrix in compressed row storage. Coordinates are unique;
/// explicit zeros are dropped on construction.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(SparseMatrix m);

  /// Duplicate coordinates are summed.
  static SparseOperator from_triplets(Index dim, const std::vector<Triplet>& triplets);
  static SparseOperator identity(Index dim);
  static SparseOperator zero(Index dim);

  Index dimension() const { return m_.rows(); }
  Index nonzeros() const { return m_.nonZeros(); }
  const SparseMatrix& matrix() const { return m_; }

  /// y = A x through the active SIMD kernel table. x and y must not alias.
  void apply(const Complex* x, Complex* y) const;
  Vector apply(const Vector& x) const;

  Matrix to_dense() const { return Matrix(m_); }
  SparseOperator adjoint() const;
  double hermiticity_residual() const;
  double max_abs() const { return rotinv::max_abs(m_); }
  /// True when every stored entry has zero imaginary part.
  bool is_real() const;

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(Complex s, const SparseOperator& a);

 private:
  SparseMatrix m_;
};

/// ‖AB − BA‖_max
double commutator_residual(const SparseOperator& a, const SparseOperator& b);

}  // namespace rotinv
