#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "rotinv/ham_model.hpp"
#include "rotinv/simd/kernels.hpp"

namespace rotinv {

const char* to_string(ResidualEstimator e) {
  switch (e) {
    case ResidualEstimator::exact: return "exact";
    case ResidualEstimator::random_vectors: return "random_vectors";
    case ResidualEstimator::random_columns: return "random_columns";
  }
  return "unknown";
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Vector random_unit_vector(std::uint64_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Index>(dim));
  for (Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  v /= v.norm();
  return v;
}

double euclidean_norm(const Vector& v) {
  return std::sqrt(simd::kernels().norm_sq(v.data(), std::size_t(v.size())));
}

// y = J_a x on n qubits without assembling J_a.
void apply_collective(int n, Axis a, const Vector& x, Vector& y) {
  const std::uint64_t dim = std::uint64_t(x.size());
  y.setZero();
  for (std::uint64_t g = 0; g < dim; ++g) {
    const Complex xv = x(Index(g));
    if (xv == Complex(0.0)) continue;
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      const bool down = (g & bit) != 0;
      switch (a) {
        case Axis::z: y(Index(g)) += (down ? -0.5 : 0.5) * xv; break;
        case Axis::x: y(Index(g ^ bit)) += 0.5 * xv; break;
        case Axis::y: y(Index(g ^ bit)) += (down ? Complex(0, -0.5) : Complex(0, 0.5)) * xv; break;
      }
    }
  }
}

}  // namespace

InvarianceReport is_translation_invariant(const SpinChainHamiltonian& h, int period, double tolerance,
                                          std::uint64_t seed, int samples) {
  if (h.boundary != Boundary::periodic) {
    throw std::invalid_argument("translation invariance needs a periodic chain");
  }
  if (period < 1) throw std::invalid_argument("period must be positive");
  InvarianceReport rep;
  rep.check_name = "translation_invariance(period=" + std::to_string(period) + ")";
  rep.tolerance = tolerance;
  const std::uint64_t dim = h.dimension();
  const int n = h.n_sites;
  const int d = h.local_dim;

  if (dim <= kExactCheckDimension) {
    const SparseOperator hg = build_global(h);
    std::vector<Triplet> t;
    for (std::uint64_t x = 0; x < dim; ++x) t.emplace_back(int(translate_index(x, n, d, period)), int(x), 1.0);
    const SparseOperator tp = SparseOperator::from_triplets(Index(dim), t);
    rep.residual = (tp * hg * tp.adjoint() - hg).max_abs();
    rep.estimator = ResidualEstimator::exact;
  } else if (dim <= kVectorCheckDimension) {
    if (samples < 1) throw std::invalid_argument("sampled check needs at least one sample");
    const TermSumOperator op(h);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Vector v = random_unit_vector(dim, rng);
      Vector shifted(v.size());
      for (std::uint64_t x = 0; x < dim; ++x) shifted(Index(x)) = v(Index(translate_index(x, n, d, period)));
      const Vector w = op.apply(shifted);
      Vector lhs(v.size());
      for (std::uint64_t x = 0; x < dim; ++x) lhs(Index(translate_index(x, n, d, period))) = w(Index(x));
      worst = std::max(worst, euclidean_norm(lhs - op.apply(v)));
    }
    rep.residual = worst;
    rep.estimator = ResidualEstimator::random_vectors;
    rep.samples = samples;
  } else {
    if (samples < 1) throw std::invalid_argument("sampled check needs at least one sample");
    const TermSumOperator op(h);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      const std::uint64_t x = pick(rng);
      std::map<std::uint64_t, Complex> diff;
      for (const auto& [y, v] : op.column(translate_index(x, n, d, -period))) {
        diff[translate_index(y, n, d, period)] += v;
      }
      for (const auto& [y, v] : op.column(x)) diff[y] -= v;
      for (const auto& [y, v] : diff) worst = std::max(worst, std::abs(v));
    }
    rep.residual = worst;
    rep.estimator = ResidualEstimator::random_columns;
    rep.samples = samples;
  }
  rep.passed = rep.residual <= tolerance;
  rep.details = std::string("estimator=") + to_string(rep.estimator) + ", dimension=" + std::to_string(dim) +
                (rep.samples ? ", samples=" + std::to_string(rep.samples) + ", seed=" + std::to_string(seed) : "");
  return rep;
}

std::array<SparseOperator, 3> collective_generators(int n_qubits) {
  return {collective_spin(n_qubits, Axis::x), collective_spin(n_qubits, Axis::y),
          collective_spin(n_qubits, Axis::z)};
}

Matrix haar_unitary_2x2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix z(2, 2);
  for (Index i = 0; i < 2; ++i)
    for (Index k = 0; k < 2; ++k) z(i, k) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < 2; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

void apply_product_unitary(const Matrix& u, int n_qubits, Vector& state) {
  const std::uint64_t dim = std::uint64_t(state.size());
  for (int q = 0; q < n_qubits; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n_qubits - 1 - q);
    for (std::uint64_t x = 0; x < dim; ++x) {
      if (x & bit) continue;
      const Complex a = state(Index(x));
      const Complex b = state(Index(x | bit));
      state(Index(x)) = u(0, 0) * a + u(0, 1) * b;
      state(Index(x | bit)) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

InvarianceReport is_rotation_invariant(const SpinChainHamiltonian& h, int samples, std::uint64_t seed,
                                       double tolerance) {
  if (h.local_dim != 2) throw std::invalid_argument("rotation invariance is defined here for qubit chains");
  InvarianceReport rep;
  rep.check_name = "rotation_invariance";
  rep.tolerance = tolerance;
  const std::uint64_t dim = h.dimension();
  const int n = h.n_sites;
  std::mt19937_64 rng(seed);
  std::array<double, 3> comm{};
  double conj = 0.0;
  std::string conj_kind;

  if (dim <= kExactCheckDimension) {
    const SparseOperator hg = build_global(h);
    const auto gens = collective_generators(n);
    for (std::size_t a = 0; a < 3; ++a) comm[a] = commutator_residual(hg, gens[a]);
    rep.estimator = ResidualEstimator::exact;
    if (dim <= 1024) {
      const Matrix hd = hg.to_dense();
      for (int s = 0; s < samples; ++s) {
        const Matrix u = haar_unitary_2x2(rng);
        Matrix un = u;
        for (int q = 1; q < n; ++q) un = kron(un, u);
        conj = std::max(conj, max_abs(Matrix(un * hd * un.adjoint() - hd)));
      }
      conj_kind = "max-norm";
    } else {
      for (int s = 0; s < samples; ++s) {
        const Matrix u = haar_unitary_2x2(rng);
        const Vector v = random_unit_vector(dim, rng);
        Vector w = v;
        apply_product_unitary(u.adjoint(), n, w);
        Vector hw = hg.apply(w);
        apply_product_unitary(u, n, hw);
        conj = std::max(conj, euclidean_norm(hw - hg.apply(v)));
      }
      conj_kind = "vector";
    }
  } else {
    const TermSumOperator op(h);
    const int probes = std::max(samples, 1);
    Vector jv(static_cast<Index>(dim)), jhv(static_cast<Index>(dim));
    for (int s = 0; s < probes; ++s) {
      const Vector v = random_unit_vector(dim, rng);
      const Vector hv = op.apply(v);
      for (std::size_t a = 0; a < 3; ++a) {
        apply_collective(n, Axis(a), v, jv);
        apply_collective(n, Axis(a), hv, jhv);
        comm[a] = std::max(comm[a], euclidean_norm(op.apply(jv) - jhv));
      }
      const Matrix u = haar_unitary_2x2(rng);
      Vector w = v;
      apply_product_unitary(u.adjoint(), n, w);
      Vector hw = op.apply(w);
      apply_product_unitary(u, n, hw);
      conj = std::max(conj, euclidean_norm(hw - hv));
    }
    rep.estimator = ResidualEstimator::random_vectors;
    rep.samples = probes;
    conj_kind = "vector";
  }
  rep.residual = std::max({comm[0], comm[1], comm[2]});
  rep.passed = rep.residual <= tolerance;
  rep.details = "commutators x=" + sci(comm[0]) + " y=" + sci(comm[1]) + " z=" + sci(comm[2]) +
                "; haar conjugation (" + std::to_string(samples) + " samples, " + conj_kind + ", seed=" +
                std::to_string(seed) + ") max=" + sci(conj) + "; estimator=" + to_string(rep.estimator);
  return rep;
}

}  // namespace rotinv
