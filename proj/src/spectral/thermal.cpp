#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rotinv/spectral.hpp"
#include "rotinv/thermal.hpp"

namespace rotinv {

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(x.begin(), x.end());
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - top);
  return top + std::log(acc);
}

double log_partition_function(const SparseOperator& h, double beta) {
  std::vector<double> e = dense_decomposition(h, false).eigenvalues();
  for (double& v : e) v *= -beta;
  return log_sum_exp(e);
}

double thermal_expectation(const SparseOperator& h, const SparseOperator& o, double beta) {
  if (o.dimension() != h.dimension()) throw std::invalid_argument("observable dimension mismatch");
  if (o.hermiticity_residual() > kDirectTol * std::max(1.0, o.max_abs())) {
    throw std::invalid_argument("observable is not Hermitian");
  }
  const DenseDecomposition dec = dense_decomposition(h, true);
  double e_min = std::numeric_limits<double>::infinity();
  for (const auto& b : dec.blocks) e_min = std::min(e_min, b.values.minCoeff());

  // block and local position of every basis index
  std::vector<std::pair<std::size_t, Index>> where(std::size_t(h.dimension()));
  for (std::size_t bi = 0; bi < dec.blocks.size(); ++bi) {
    const auto& idx = dec.blocks[bi].indices;
    for (std::size_t k = 0; k < idx.size(); ++k) where[std::size_t(idx[k])] = {bi, Index(k)};
  }
  // e^{−βH} is block diagonal, so only the diagonal blocks of O contribute
  std::vector<Matrix> o_blocks;
  for (const auto& b : dec.blocks) o_blocks.push_back(Matrix::Zero(Index(b.indices.size()), Index(b.indices.size())));
  const SparseMatrix& om = o.matrix();
  for (Index r = 0; r < om.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(om, r); it; ++it) {
      const auto [br, lr] = where[std::size_t(r)];
      const auto [bc, lc] = where[std::size_t(it.col())];
      if (br == bc) o_blocks[br](lr, lc) += it.value();
    }
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t bi = 0; bi < dec.blocks.size(); ++bi) {
    const auto& b = dec.blocks[bi];
    const Matrix ov = b.vectors.adjoint() * o_blocks[bi] * b.vectors;
    for (Index k = 0; k < b.values.size(); ++k) {
      const double wgt = std::exp(-beta * (b.values(k) - e_min));
      num += wgt * ov(k, k).real();
      den += wgt;
    }
  }
  return num / den;
}

ThermalResult thermal_state_summary(const SparseOperator& h, double beta,
                                    const std::vector<std::pair<std::string, SparseOperator>>& observables) {
  ThermalResult r;
  r.beta = beta;
  r.log_partition = log_partition_function(h, beta);
  for (const auto& [label, o] : observables) r.expectations.emplace_back(label, thermal_expectation(h, o, beta));
  return r;
}

namespace {

// log(2 cosh x) without overflow
double log_two_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

double log_add_exp(double a, double b) {
  const double top = std::max(a, b);
  if (top == -std::numeric_limits<double>::infinity()) return top;
  return top + std::log(std::exp(a - top) + std::exp(b - top));
}

}  // namespace

double suppression_ratio_field_model(double b_field, double beta, double penalty, int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("need at least one site");
  if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
  const double log_num = log_two_cosh(b_field * beta);
  const double log_pen = std::isinf(penalty) && penalty > 0 ? -std::numeric_limits<double>::infinity()
                                                             : std::log(6.0) - beta * penalty;
  const double log_den = log_add_exp(log_num, log_pen);
  return std::exp(n_sites * (log_num - log_den));
}

SpinChainHamiltonian field_model(double b_field, int n_sites) {
  SpinChainHamiltonian h;
  h.n_sites = n_sites;
  h.local_dim = 2;
  h.boundary = Boundary::open;
  h.label = "field_model";
  Matrix z(2, 2);
  z << b_field, 0.0, 0.0, -b_field;
  for (int i = 0; i < n_sites; ++i) h.terms.push_back(LocalTerm::dense({i}, z));
  return h;
}

SpinChainHamiltonian literal_direct_sum_field_model(double b_field, double penalty, int n_sites) {
  SpinChainHamiltonian h;
  h.n_sites = n_sites;
  h.local_dim = 8;
  h.boundary = Boundary::open;
  h.label = "literal_direct_sum_field_model";
  Matrix site = Matrix::Zero(8, 8);
  site(0, 0) = b_field;
  site(1, 1) = -b_field;
  for (Index k = 2; k < 8; ++k) site(k, k) = penalty;
  for (int i = 0; i < n_sites; ++i) h.terms.push_back(LocalTerm::dense({i}, site));
  return h;
}

SuppressionSweep suppression_sweep(const std::function<std::pair<SparseOperator, SparseOperator>(int)>& instance,
                                   double beta, std::span<const int> n_list) {
  SuppressionSweep out;
  out.beta = beta;
  for (int n : n_list) {
    const auto [h1, h2] = instance(n);
    SweepPoint p;
    p.n_sites = n;
    p.log_z1 = log_partition_function(h1, beta);
    p.log_z2 = log_partition_function(h2, beta);
    p.ratio = std::exp(p.log_z1 - p.log_z2);
    out.points.push_back(p);
  }
  out.strictly_decreasing = out.points.size() >= 2;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (!(out.points[i].ratio < out.points[i - 1].ratio)) out.strictly_decreasing = false;
  }
  return out;
}

}  // namespace rotinv
