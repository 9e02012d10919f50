#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/ri_encode.hpp"
#include "rotinv/thermal.hpp"

using namespace rotinv;

namespace {

SparseOperator sparse(const Matrix& m) { return DenseOperator(m).to_sparse(); }

}  // namespace

TEST_CASE("log-sum-exp") {
  const std::vector<double> x = {1000.0, 1000.0};
  CHECK(log_sum_exp(x) == doctest::Approx(1000.0 + std::log(2.0)));
  const std::vector<double> y = {-2000.0, 0.0};
  CHECK(log_sum_exp(y) == doctest::Approx(0.0));
}

TEST_CASE("partition functions") {
  CHECK(log_partition_function(SparseOperator::zero(32), 1.7) == doctest::Approx(std::log(32.0)));
  CHECK(log_partition_function(SparseOperator::zero(32), 0.0) == doctest::Approx(std::log(32.0)));
  const double b = 0.6, beta = 1.3;
  CHECK(log_partition_function(sparse(b * oracle::sz()), beta) == doctest::Approx(std::log(2 * std::cosh(b * beta))));
  const auto h = field_model(b, 4);
  CHECK(log_partition_function(build_global(h), beta) ==
        doctest::Approx(4 * std::log(2 * std::cosh(b * beta))).epsilon(1e-13));
  // huge β stays finite
  CHECK(std::isfinite(log_partition_function(sparse(b * oracle::sz()), 1e6)));
}

TEST_CASE("thermal expectations") {
  const double b = 0.9, beta = 0.7;
  const SparseOperator h = sparse(b * oracle::sz());
  CHECK(thermal_expectation(h, SparseOperator::identity(2), beta) == doctest::Approx(1.0));
  CHECK(thermal_expectation(h, sparse(oracle::sz()), beta) == doctest::Approx(-std::tanh(b * beta)));

  std::mt19937_64 rng(3);
  const oracle::M hh = oracle::random_hermitian(16, rng);
  const oracle::M o = oracle::random_hermitian(16, rng);
  Eigen::SelfAdjointEigenSolver<oracle::M> es(hh);
  oracle::M rho = es.eigenvectors() * (-beta * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                  es.eigenvectors().adjoint();
  const double ref = (o * rho).trace().real() / rho.trace().real();
  CHECK(thermal_expectation(sparse(hh), sparse(o), beta) == doctest::Approx(ref).epsilon(1e-12));

  const auto summary = thermal_state_summary(h, beta, {{"Z", sparse(oracle::sz())}});
  CHECK(summary.expectations.size() == 1);
  CHECK(summary.expectations[0].first == "Z");
  CHECK(summary.log_partition == doctest::Approx(std::log(2 * std::cosh(b * beta))));
}

TEST_CASE("closed-form suppression ratio") {
  const double b = 1.0, j = 2.0;
  for (double beta : {0.5, 1.0, 2.0}) {
    const double per = 2 * std::cosh(b * beta) / (2 * std::cosh(b * beta) + 6 * std::exp(-beta * j));
    for (int n = 1; n <= 4; ++n) CHECK(suppression_ratio_field_model(b, beta, j, n) == doctest::Approx(std::pow(per, n)));
  }
  CHECK(suppression_ratio_field_model(b, 0.0, j, 2) == doctest::Approx(1.0 / 16.0));
  CHECK(suppression_ratio_field_model(b, 1.0, std::numeric_limits<double>::infinity(), 3) == 1.0);
  CHECK(suppression_ratio_field_model(200.0, 10.0, 1.0, 2) == doctest::Approx(1.0));
}

TEST_CASE("literal direct-sum model") {
  const auto h = literal_direct_sum_field_model(1.0, 2.0, 2);
  CHECK(h.local_dim == 8);
  const auto ev = oracle::eigenvalues(h.terms[0].matrix.to_dense().matrix());
  CHECK(ev.front() == -1.0);
  CHECK(ev[1] == 1.0);
  for (std::size_t i = 2; i < 8; ++i) CHECK(ev[i] == 2.0);
  for (double beta : {0.0, 0.5, 1.0, 2.0}) {
    const double lz1 = log_partition_function(build_global(field_model(1.0, 2)), beta);
    const double lz2 = log_partition_function(build_global(h), beta);
    const double ratio = std::exp(lz1 - lz2);
    CHECK(std::abs(ratio / suppression_ratio_field_model(1.0, beta, 2.0, 2) - 1.0) <= 1e-12);
  }
}

TEST_CASE("suppression sweep") {
  const std::vector<int> ns = {1, 2, 3};
  const auto sweep = suppression_sweep(
      [](int n) {
        return std::make_pair(build_global(field_model(1.0, n)), build_global(literal_direct_sum_field_model(1.0, 2.0, n)));
      },
      1.0, ns);
  REQUIRE(sweep.points.size() == 3);
  CHECK(sweep.strictly_decreasing);
  CHECK(sweep.points[1].n_sites == 2);
  CHECK(sweep.points[2].ratio < sweep.points[1].ratio);
}

TEST_CASE("encoded observables reproduce thermal traces") {
  const double beta = 1.0;
  const auto h1 = field_model(1.0, 2);
  const auto enc = encode_hamiltonian(h1, 3, HalfInteger::from_twice(1));
  const SparseOperator g1 = build_global(h1);
  const SparseOperator g2 = build_global(enc.h2);
  const SparseOperator z0 = embed_on_support(DenseOperator(oracle::sz()), std::vector<int>{0}, 2);
  const SparseOperator ez = encode_observable(z0, enc.encoding, 2);

  const double lz1 = log_partition_function(g1, beta);
  const double lz2 = log_partition_function(g2, beta);
  const double t1 = thermal_expectation(g1, z0, beta) * std::exp(lz1);
  const double t2 = thermal_expectation(g2, ez, beta) * std::exp(lz2);
  CHECK(t2 == doctest::Approx(t1).epsilon(1e-10));
  // hence ⟨O₂⟩/⟨O₁⟩ = Z₁/Z₂
  const double ratio = thermal_expectation(g2, ez, beta) / thermal_expectation(g1, z0, beta);
  CHECK(ratio == doctest::Approx(std::exp(lz1 - lz2)).epsilon(1e-10));
}
