#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "rotinv/half_integer.hpp"
#include "rotinv/spin_core.hpp"

using namespace rotinv;

namespace {

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

double rel(const Matrix& a) { return oracle::max_abs(a); }

}  // namespace

TEST_CASE("half integers") {
  CHECK(half(3).to_string() == "3/2");
  CHECK(half(4).to_string() == "2");
  CHECK(half(3).casimir() == doctest::Approx(15.0 / 4));
  CHECK(half(1) < half(3));
  CHECK(is_admissible_spin(3, half(1)));
  CHECK_FALSE(is_admissible_spin(3, half(2)));
  CHECK_FALSE(is_admissible_spin(2, half(4)));
  CHECK_THROWS_AS(require_admissible_spin(4, half(1)), std::invalid_argument);
}

TEST_CASE("multiplicities") {
  CHECK(catalan_multiplicity(2, half(2)) == 1);
  CHECK(catalan_multiplicity(4, half(0)) == 2);
  CHECK(catalan_multiplicity(3, half(1)) == 2);
  CHECK(catalan_multiplicity(7, half(1)) == 14);
  CHECK_THROWS_AS(catalan_multiplicity(4, half(1)), std::invalid_argument);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
}

TEST_CASE("decompositions") {
  const auto d2 = decompose(2);
  REQUIRE(d2.sectors.size() == 2);
  CHECK(d2.sectors[0].j == half(0));
  CHECK(d2.sectors[0].mult_n == 1);
  CHECK(d2.sectors[1].dim_m == 3);

  const auto d4 = decompose(4);
  REQUIRE(d4.sectors.size() == 3);
  CHECK(d4.sectors[0].mult_n == 2);
  CHECK(d4.sectors[1].mult_n == 3);
  CHECK(d4.sectors[2].mult_n == 1);

  const auto d3 = decompose(3);
  REQUIRE(d3.sectors.size() == 2);
  CHECK(d3.sectors[0].j == half(1));
  CHECK(d3.sectors[0].dim_m == 2);
  CHECK(d3.sectors[0].mult_n == 2);
  CHECK(d3.sectors[1].mult_n == 1);

  CHECK_THROWS_AS(decompose(0), std::invalid_argument);
}

TEST_CASE("dimension sum is exact for r up to 60") {
  for (int r = 1; r <= 60; ++r) {
    CAPTURE(r);
    const auto d = decompose(r);
    CHECK(d.total_dimension() == (std::uint64_t{1} << r));
    for (const auto& s : d.sectors) CHECK(s.dim_m == std::uint64_t(s.j.twice() + 1));
  }
}

TEST_CASE("multiplicities match the Casimir eigenspace oracle") {
  for (int r = 1; r <= 8; ++r) {
    const oracle::M cas = oracle::casimir(r);
    for (const auto& s : decompose(r).sectors) {
      CAPTURE(r);
      CAPTURE(s.j.to_string());
      const long eig = oracle::eigen_count(cas, s.j.casimir());
      CHECK(eig % long(s.dim_m) == 0);
      CHECK(std::uint64_t(eig) / s.dim_m == s.mult_n);
    }
  }
}

TEST_CASE("largest multiplicity spin at small r") {
  CHECK(largest_multiplicity_spin(2) == half(0));  // tie 1 vs 1 resolves low
  CHECK(largest_multiplicity_spin(4) == half(2));  // c = 2, 3, 1
  CHECK(largest_multiplicity_spin(3) == half(1));
}

TEST_CASE("Casimir operator matches explicit generator products") {
  for (int r = 1; r <= 6; ++r) {
    CAPTURE(r);
    CHECK(rel(casimir_operator(r).matrix() - oracle::casimir(r)) <= 1e-12);
  }
  CHECK(rel(casimir_operator(1).matrix() - 0.75 * oracle::id(2)) <= 1e-12);
  const auto ev = oracle::eigenvalues(casimir_operator(2).matrix());
  CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(ev[std::size_t(i)] == doctest::Approx(2.0));
  CHECK(oracle::eigen_count(casimir_operator(4).matrix(), 6.0) == 5);
}

TEST_CASE("total spin projectors") {
  const Matrix singlet = total_spin_projector(2, half(0)).matrix();
  oracle::M expected = oracle::M::Zero(4, 4);
  expected(1, 1) = expected(2, 2) = 0.5;
  expected(1, 2) = expected(2, 1) = -0.5;
  CHECK(rel(singlet - expected) <= 1e-12);
  CHECK(total_spin_projector(4, half(0)).matrix().trace().real() == doctest::Approx(2.0));
  CHECK(total_spin_projector(3, half(3)).matrix().trace().real() == doctest::Approx(4.0));
  CHECK_THROWS_AS(total_spin_projector(3, half(2)), std::invalid_argument);

  for (int r = 1; r <= 8; ++r) {
    Matrix sum = Matrix::Zero(Index{1} << r, Index{1} << r);
    const Matrix jx = collective_spin(r, Axis::x).to_dense().matrix();
    const Matrix jy = collective_spin(r, Axis::y).to_dense().matrix();
    const Matrix jz = collective_spin(r, Axis::z).to_dense().matrix();
    for (const auto& s : decompose(r).sectors) {
      CAPTURE(r);
      CAPTURE(s.j.to_string());
      const Matrix p = total_spin_projector(r, s.j).matrix();
      CHECK(rel(p * p - p) <= 1e-10);
      CHECK(rel(p - p.adjoint()) <= 1e-12);
      CHECK(p.trace().real() == doctest::Approx(double(s.dim_m * s.mult_n)));
      CHECK(rel(p * jx - jx * p) <= 1e-10);
      CHECK(rel(p * jy - jy * p) <= 1e-10);
      CHECK(rel(p * jz - jz * p) <= 1e-10);
      if (r <= 6) CHECK(rel(p - oracle::spin_projector(r, s.j.value())) <= 1e-10);
      sum += p;
    }
    CHECK(rel(sum - Matrix::Identity(sum.rows(), sum.cols())) <= 1e-10);
  }
}

TEST_CASE("symmetric projector is the top-spin projector") {
  for (int m = 1; m <= 6; ++m) {
    CAPTURE(m);
    CHECK(rel(symmetric_projector(m).matrix() - total_spin_projector(m, half(m)).matrix()) <= 1e-12);
    CHECK(symmetric_projector(m).matrix().trace().real() == doctest::Approx(double(m + 1)));
  }
}

TEST_CASE("embedding agrees with the bit-level oracle") {
  const Matrix z = pauli(Axis::z);
  CHECK(rel(embed_on_support(DenseOperator(z), std::vector<int>{0}, 2).to_dense().matrix() -
            oracle::kron(oracle::sz(), oracle::id(2))) == 0.0);

  const Matrix swap = [] {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1.0;
    return s;
  }();
  CHECK(rel(embed_on_support(DenseOperator(swap), std::vector<int>{1, 0}, 2).to_dense().matrix() - swap) == 0.0);

  std::mt19937_64 rng(3);
  const std::vector<std::vector<int>> supports = {{0}, {3}, {1, 3}, {3, 1}, {4, 0}, {2, 0, 3}, {4, 1, 2}};
  for (const auto& sup : supports) {
    const oracle::M op = oracle::random_hermitian(1L << sup.size(), rng);
    const Matrix got = embed_on_support(DenseOperator(op), sup, 5).to_dense().matrix();
    CHECK(rel(got - oracle::embed(op, sup, 5)) <= 1e-15);
  }

  // qutrit chain: σ on site 1 of 3
  oracle::M q = oracle::M::Zero(3, 3);
  q(0, 2) = q(2, 0) = 1.0;
  const Matrix got = embed_on_support(DenseOperator(q), std::vector<int>{1}, 3, 3).to_dense().matrix();
  CHECK(rel(got - oracle::kron(oracle::kron(oracle::id(3), q), oracle::id(3))) == 0.0);

  CHECK_THROWS_AS(embed_on_support(DenseOperator(swap), std::vector<int>{1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed_on_support(DenseOperator(z), std::vector<int>{3}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed_on_support(DenseOperator(z), std::vector<int>{0, 1}, 3), std::invalid_argument);
}

TEST_CASE("same-pair singlet and triplet projectors annihilate") {
  const double res = embedded_product_residual(total_spin_projector(2, half(0)), std::vector<int>{0, 2},
                                               total_spin_projector(2, half(2)), std::vector<int>{0, 2}, 3);
  CHECK(res <= 1e-12);
}

TEST_CASE("sector orthogonality") {
  CHECK(check_sector_orthogonality(4, half(0), 3) <= 1e-10);
  CHECK(embedded_product_residual(total_spin_projector(4, half(4)), std::vector<int>{0, 1, 2, 3},
                                  total_spin_projector(2, half(0)), std::vector<int>{0, 1}, 4) <= 1e-10);
  CHECK(check_sector_orthogonality(4, half(2), 2) >= 1e-3);

  // the prefix placement stands for any placement
  for (const auto& sup : std::vector<std::vector<int>>{{0, 2, 3, 4}, {4, 1, 3, 0}, {1, 2, 3, 4}}) {
    CHECK(embedded_product_residual(total_spin_projector(5, half(1)), std::vector<int>{0, 1, 2, 3, 4},
                                    symmetric_projector(4), sup, 5) <= 1e-10);
  }
  CHECK_THROWS_AS(check_sector_orthogonality(3, half(1), 4), std::invalid_argument);
}

TEST_CASE("coupling paths") {
  for (int r = 1; r <= 9; ++r) {
    for (const auto& s : decompose(r).sectors) {
      const auto paths = coupling_paths(r, s.j);
      CHECK(paths.size() == s.mult_n);
      CHECK(std::is_sorted(paths.begin(), paths.end()));
      for (const auto& p : paths) {
        REQUIRE(p.size() == std::size_t(r));
        CHECK(p.front() == 1);
        CHECK(p.back() == s.j.twice());
      }
    }
  }
  const auto p3 = coupling_paths(3, half(1));
  REQUIRE(p3.size() == 2);
  CHECK(p3[0] == std::vector<int>{1, 0, 1});
  CHECK(p3[1] == std::vector<int>{1, 2, 1});
}

TEST_CASE("subsystem isometries") {
  const auto check_map = [](int r, HalfInteger j, int d) {
    CAPTURE(r);
    CAPTURE(j.to_string());
    const EncodingMap map = subsystem_isometry(r, j, d);
    const Matrix& v = map.isometry;
    REQUIRE(v.rows() == (Index{1} << r));
    REQUIRE(v.cols() == d);
    CHECK(rel(v.adjoint() * v - Matrix::Identity(d, d)) <= 1e-12);
    CHECK(rel(oracle::spin_projector(r, j.value()) * v - v) <= 1e-10);
    const Matrix jp = raising_operator(r).to_dense().matrix();
    const Matrix jz = collective_spin(r, Axis::z).to_dense().matrix();
    CHECK(rel(jp * v) <= 1e-10);
    CHECK(rel(jz * v - j.value() * v) <= 1e-10);
  };
  check_map(3, half(1), 2);
  check_map(2, half(0), 1);
  check_map(4, half(0), 2);
  check_map(5, half(1), 5);
  check_map(6, half(2), 9);

  const Matrix s = subsystem_isometry(2, half(0), 1).isometry;
  CHECK(std::abs(std::abs(s(1, 0)) - std::sqrt(0.5)) <= 1e-12);
  CHECK(std::abs(s(1, 0) + s(2, 0)) <= 1e-12);

  CHECK_THROWS_AS(subsystem_isometry(3, half(1), 3), std::invalid_argument);
  CHECK_THROWS_AS(subsystem_isometry(3, half(1), 0), std::invalid_argument);
}

TEST_CASE("frames are related by the lowering operator") {
  const int r = 5;
  const HalfInteger j = half(3);
  const int d = int(catalan_multiplicity(r, j));
  const auto frames = subsystem_frames(r, j, d);
  REQUIRE(frames.size() == 4);
  const Matrix jm = raising_operator(r).to_dense().matrix().adjoint();
  const double jv = j.value();
  for (std::size_t mu = 0; mu + 1 < frames.size(); ++mu) {
    const double m = jv - double(mu);
    const double c = std::sqrt(jv * (jv + 1) - m * (m - 1));
    CHECK(rel(jm * frames[mu] - c * frames[mu + 1]) <= 1e-10);
  }
  Matrix all(frames[0].rows(), 4 * d);
  for (std::size_t mu = 0; mu < 4; ++mu) all.middleCols(Index(mu) * d, d) = frames[mu];
  CHECK(rel(all.adjoint() * all - Matrix::Identity(4 * d, 4 * d)) <= 1e-12);
}
