#pragma once

// Brute-force references for the unit tests. Everything here is built from
// explicit Kronecker products and dense diagonalization so that it shares no
// code path with the library beyond the matrix type.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M id(long n) { return M::Identity(n, n); }

inline M sx() { M m(2, 2); m << 0, 1, 1, 0; return m; }
inline M sy() { M m(2, 2); m << 0, C(0, -1), C(0, 1), 0; return m; }
inline M sz() { M m(2, 2); m << 1, 0, 0, -1; return m; }

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// single-qubit operator at `site` of n, site 0 leftmost
inline M site_op(const M& op, int site, int n) {
  M out = id(1);
  for (int s = 0; s < n; ++s) out = kron(out, s == site ? op : id(2));
  return out;
}

inline M collective(const M& pauli, int n) {
  M out = M::Zero(1L << n, 1L << n);
  for (int s = 0; s < n; ++s) out += 0.5 * site_op(pauli, s, n);
  return out;
}

// J_x² + J_y² + J_z² by explicit products
inline M casimir(int n) {
  const M jx = collective(sx(), n), jy = collective(sy(), n), jz = collective(sz(), n);
  return jx * jx + jy * jy + jz * jz;
}

inline long eigen_count(const M& h, double value, double tol = 1e-8) {
  Eigen::SelfAdjointEigenSolver<M> es(h);
  long c = 0;
  for (long i = 0; i < es.eigenvalues().size(); ++i) c += std::abs(es.eigenvalues()(i) - value) < tol;
  return c;
}

// Projector onto the eigenspace of the Casimir with eigenvalue j(j+1).
inline M spin_projector(int n, double j) {
  Eigen::SelfAdjointEigenSolver<M> es(casimir(n));
  M p = M::Zero(1L << n, 1L << n);
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - j * (j + 1)) < 1e-8) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

// Operator acting as `op` on `support` (listed order) of n qubits, built
// column by column from explicit bit manipulation.
inline M embed(const M& op, const std::vector<int>& support, int n) {
  const long dim = 1L << n;
  const int s = int(support.size());
  M out = M::Zero(dim, dim);
  for (long x = 0; x < dim; ++x) {
    long local_in = 0;
    for (int i = 0; i < s; ++i) local_in = (local_in << 1) | ((x >> (n - 1 - support[i])) & 1);
    for (long local_out = 0; local_out < (1L << s); ++local_out) {
      const C v = op(local_out, local_in);
      if (v == C(0)) continue;
      long y = x;
      for (int i = 0; i < s; ++i) {
        const long bit = (local_out >> (s - 1 - i)) & 1;
        const long mask = 1L << (n - 1 - support[i]);
        y = bit ? (y | mask) : (y & ~mask);
      }
      out(y, x) += v;
    }
  }
  return out;
}

inline std::vector<double> eigenvalues(const M& h) {
  Eigen::SelfAdjointEigenSolver<M> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

inline M random_hermitian(long dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  M a(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) a(i, j) = C(g(rng), g(rng));
  M h = (a + a.adjoint()) * 0.5;
  const double norm = Eigen::SelfAdjointEigenSolver<M>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  return h * (scale / norm);
}

inline Eigen::VectorXcd random_state(long dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (long i = 0; i < dim; ++i) v(i) = C(g(rng), g(rng));
  return v.normalized();
}

inline double max_abs(const M& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle
