#include <doctest.h>

#include "oracles.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/ri_encode.hpp"
#include "rotinv/spectral.hpp"

using namespace rotinv;

namespace {

const HalfInteger kHalf = HalfInteger::from_twice(1);

Matrix heisenberg_pair() {
  return (oracle::kron(oracle::sx(), oracle::sx()) + oracle::kron(oracle::sy(), oracle::sy()) +
          oracle::kron(oracle::sz(), oracle::sz())) *
         0.25;
}

SpinChainHamiltonian field(double b) {
  SpinChainHamiltonian h;
  h.n_sites = 1;
  h.label = "field";
  h.terms.push_back(LocalTerm::dense({0}, b * oracle::sz()));
  return h;
}

SpinChainHamiltonian random_two_local(int n, std::mt19937_64& rng) {
  SpinChainHamiltonian h;
  h.n_sites = n;
  h.label = "random";
  for (int i = 0; i + 1 < n; ++i) h.terms.push_back(LocalTerm::dense({i, i + 1}, oracle::random_hermitian(4, rng)));
  return h;
}

std::vector<double> spectrum(const SpinChainHamiltonian& h) {
  return oracle::eigenvalues(build_global(h).to_dense().matrix());
}

}  // namespace

TEST_CASE("single field on three qubits") {
  const auto enc = encode_hamiltonian(field(1.0), 3, kHalf);
  CHECK(enc.encoding.penalty_strength == doctest::Approx(2.0));
  CHECK(enc.h2.n_sites == 3);
  CHECK(enc.h2.metadata.at("k_prime") == 3.0);
  const auto ev = spectrum(enc.h2);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(-1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK(ev[3] == doctest::Approx(1.0));
  for (int i = 4; i < 8; ++i) CHECK(ev[std::size_t(i)] >= 2.0 - 1.0 - 1e-12);
  CHECK(is_rotation_invariant(enc.h2).passed);
}

TEST_CASE("empty input leaves only the penalty") {
  SpinChainHamiltonian h;
  h.n_sites = 1;
  h.label = "empty";
  const auto enc = encode_hamiltonian(h, 3, kHalf);
  CHECK(enc.encoding.penalty_strength == 1.0);
  const auto ev = spectrum(enc.h2);
  int zeros = 0;
  for (double e : ev) zeros += std::abs(e) < 1e-12;
  CHECK(ev[0] == doctest::Approx(0.0));
  CHECK(zeros == 4);
}

TEST_CASE("Heisenberg pair keeps its ground energy and gap") {
  SpinChainHamiltonian h;
  h.n_sites = 2;
  h.label = "heisenberg";
  h.terms.push_back(LocalTerm::dense({0, 1}, heisenberg_pair()));
  const auto enc = encode_hamiltonian(h, 3, kHalf);
  CHECK(enc.h2.n_sites == 6);
  CHECK(enc.h2.metadata.at("k_prime") == 6.0);
  const auto e1 = spectrum(h);
  const auto e2 = spectrum(enc.h2);
  CHECK(e2[0] == doctest::Approx(-0.75).epsilon(1e-10));
  const auto l1 = cluster_levels(e1);
  const auto l2 = cluster_levels(e2);
  CHECK(l2[1].energy - l2[0].energy == doctest::Approx(l1[1].energy - l1[0].energy).epsilon(1e-10));
  CHECK(l2[0].count == 4 * l1[0].count);
  CHECK(is_rotation_invariant(enc.h2).passed);
}

TEST_CASE("too many logical levels") {
  CHECK_THROWS_AS(make_encoding(3, kHalf, 3, 1.0), std::invalid_argument);
  SpinChainHamiltonian q;
  q.n_sites = 1;
  q.local_dim = 3;
  q.terms.push_back(LocalTerm::dense({0}, oracle::id(3)));
  CHECK_THROWS_AS(encode_hamiltonian(q, 3, kHalf), std::invalid_argument);
  CHECK_NOTHROW(encode_hamiltonian(q, 5, kHalf));  // c = 5
}

TEST_CASE("penalty field") {
  const LocalTerm p = penalty_field(3, kHalf, 2, 2.0);
  const auto ev = oracle::eigenvalues(p.matrix.to_dense().matrix());
  int zero = 0, top = 0;
  for (double e : ev) {
    zero += std::abs(e) < 1e-12;
    top += std::abs(e - 2.0) < 1e-12;
  }
  CHECK(zero == 4);
  CHECK(top == 4);
  const auto gens = collective_generators(3);
  for (const auto& g : gens) CHECK((p.matrix * g - g * p.matrix).max_abs() <= 1e-12);

  CHECK(penalty_field(3, kHalf, 2, 0.0).matrix.max_abs() == 0.0);

  const Matrix singlet_pen = penalty_field(2, HalfInteger::from_twice(0), 1, 1.0).matrix.to_dense().matrix();
  CHECK(oracle::max_abs(singlet_pen - (oracle::id(4) - oracle::spin_projector(2, 0.0))) <= 1e-12);

  // using only part of the multiplicity space still leaves an RI penalty
  const LocalTerm partial = penalty_field(5, kHalf, 3, 1.0);
  for (const auto& g : collective_generators(5)) CHECK((partial.matrix * g - g * partial.matrix).max_abs() <= 1e-12);
  CHECK(partial.matrix.to_dense().matrix().trace().real() == doctest::Approx(32.0 - 6.0));
}

TEST_CASE("lifted operators act as identity on the rotating factor") {
  std::mt19937_64 rng(12);
  const auto enc = make_encoding(5, HalfInteger::from_twice(3), 3, 1.0);
  const oracle::M a = oracle::random_hermitian(3, rng);
  const Matrix lifted = lift_operator(a, 1, enc);
  for (std::size_t mu = 0; mu < enc.frames.size(); ++mu) {
    CHECK(oracle::max_abs(enc.frames[mu].adjoint() * lifted * enc.frames[mu] - a) <= 1e-12);
    for (std::size_t nu = 0; nu < enc.frames.size(); ++nu)
      if (nu != mu) CHECK(oracle::max_abs(enc.frames[nu].adjoint() * lifted * enc.frames[mu]) <= 1e-12);
  }
  const Matrix jx = collective_spin(5, Axis::x).to_dense().matrix();
  const Matrix jy = collective_spin(5, Axis::y).to_dense().matrix();
  CHECK(oracle::max_abs(lifted * jx - jx * lifted) <= 1e-12);
  CHECK(oracle::max_abs(lifted * jy - jy * lifted) <= 1e-12);
  CHECK(enc.block_frame().cols() == 12);
}

TEST_CASE("state encoding") {
  const auto enc = make_encoding(3, kHalf, 2, 2.0);
  Vector zero = Vector::Zero(2);
  zero(0) = 1.0;
  CHECK((encode_state(zero, enc, 1) - enc.map.isometry.col(0)).cwiseAbs().maxCoeff() <= 1e-15);

  Vector ket01 = Vector::Zero(4);
  ket01(1) = 1.0;
  const Vector expect = oracle::kron(enc.map.isometry.col(0), enc.map.isometry.col(1));
  CHECK((encode_state(ket01, enc, 2) - expect).cwiseAbs().maxCoeff() <= 1e-15);

  std::mt19937_64 rng(50);
  const LocalTerm pen = penalty_field(3, kHalf, 2, 1.0);
  for (int s = 0; s < 50; ++s) {
    const Vector psi = oracle::random_state(8, rng);
    const Vector e = encode_state(psi, enc, 3);
    CHECK(std::abs(e.norm() - 1.0) <= 1e-12);
    const auto dec = decode_state(e, enc, 3);
    CHECK((dec.state - psi).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(dec.leakage <= 1e-12);
    if (s < 5) {
      for (int site = 0; site < 3; ++site) {
        const SparseOperator p = embed_on_support(pen.matrix, std::vector<int>{3 * site, 3 * site + 1, 3 * site + 2}, 9);
        CHECK(p.apply(e).norm() <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(encode_state(Vector::Zero(3), enc, 1), std::invalid_argument);
}

TEST_CASE("decoding with leakage") {
  const auto enc = make_encoding(3, kHalf, 2, 2.0);
  std::mt19937_64 rng(6);
  const Vector psi = oracle::random_state(2, rng);
  const Vector e = encode_state(psi, enc, 1);
  // an orthogonal vector in the penalized space: the spin-3/2 sector
  const Vector bad = oracle::spin_projector(3, 1.5).col(0).normalized();
  CHECK_THROWS_AS(decode_state(bad, enc, 1), DegenerateDecodeError);
  const Vector mixed = (e + bad) / std::sqrt(2.0);
  const auto dec = decode_state(mixed, enc, 1);
  CHECK(dec.leakage == doctest::Approx(0.5).epsilon(1e-12));
  CHECK((dec.state - psi).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("observable encoding") {
  const auto enc = make_encoding(3, kHalf, 2, 2.0);
  const Matrix id_enc = encode_observable(SparseOperator::identity(2), enc, 1).to_dense().matrix();
  CHECK(oracle::max_abs(id_enc - enc.map.isometry * enc.map.isometry.adjoint()) <= 1e-15);
  CHECK(oracle::max_abs(id_enc * id_enc - id_enc) <= 1e-12);

  const Matrix z_enc = encode_observable(DenseOperator(oracle::sz()).to_sparse(), enc, 1).to_dense().matrix();
  CHECK(std::abs(z_enc.trace()) <= 1e-12);
  const Vector outside = oracle::spin_projector(3, 1.5).col(0).normalized();
  CHECK((z_enc * outside).norm() <= 1e-12);
}

TEST_CASE("encoded sector basis") {
  const auto enc = make_encoding(3, kHalf, 2, 2.0);
  const Matrix b = encoded_sector_basis(enc, 2);
  CHECK(b.rows() == 64);
  CHECK(b.cols() == 16);
  CHECK(oracle::max_abs(b.adjoint() * b - oracle::id(16)) <= 1e-12);
}

TEST_CASE("rotation invariance for several sectors") {
  std::mt19937_64 rng(31);
  for (int n : {1, 2, 3}) {
    const auto h = random_two_local(n, rng);
    CHECK(is_rotation_invariant(encode_hamiltonian(h, 3, kHalf).h2).passed);
  }
  for (int twice_j : {0, 2}) {
    for (int n : {1, 2}) {
      const auto h = random_two_local(n, rng);
      const auto e = encode_hamiltonian(h, 4, HalfInteger::from_twice(twice_j));
      CHECK(is_rotation_invariant(e.h2).passed);
    }
  }
}

TEST_CASE("spectrum equivalence and penalty floor") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 2;
    const auto h1 = random_two_local(n, rng);
    const auto enc = encode_hamiltonian(h1, 3, kHalf);
    const Matrix h2 = build_global(enc.h2).to_dense().matrix();
    const Matrix basis = encoded_sector_basis(enc.encoding, n);
    const auto inside = cluster_levels(oracle::eigenvalues(basis.adjoint() * h2 * basis), 1e-8);
    const auto ref = cluster_levels(spectrum(h1), 1e-8);
    REQUIRE(inside.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(inside[i].energy == doctest::Approx(ref[i].energy).epsilon(1e-10));
      CHECK(inside[i].count == (std::size_t{1} << n) * ref[i].count);
    }

    // states orthogonal to the code space stay at least k·max‖h‖ above E₀(H₁)
    const Matrix proj_out = Matrix::Identity(h2.rows(), h2.cols()) - basis * basis.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(proj_out);
    Matrix comp(h2.rows(), 0);
    for (Index c = 0; c < es.eigenvalues().size(); ++c)
      if (es.eigenvalues()(c) > 0.5) {
        comp.conservativeResize(Eigen::NoChange, comp.cols() + 1);
        comp.col(comp.cols() - 1) = es.eigenvectors().col(c);
      }
    const auto outside = oracle::eigenvalues(comp.adjoint() * h2 * comp);
    CHECK(outside.front() >= ref.front().energy + 2 * h1.max_term_norm() - 1e-9);
  }
}

TEST_CASE("encoding files") {
  const auto enc = make_encoding(5, HalfInteger::from_twice(3), 3, 1.5);
  const auto j = encoding_to_json(enc);
  CHECK(j["schema_version"] == 1);
  CHECK(j["twice_j"] == 3);
  CHECK(j["d"] == 3);
  const auto back = encoding_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.r == 5);
  CHECK(back.penalty_strength == 1.5);
  CHECK(oracle::max_abs(back.map.isometry - enc.map.isometry) == 0.0);

  auto bad = nlohmann::json::parse(j.dump());
  bad["isometry"][0][0][0] = 0.25;
  CHECK_THROWS_AS(encoding_from_json(bad), SchemaError);
  bad = nlohmann::json::parse(j.dump());
  bad["twice_j"] = 2;
  CHECK_THROWS_AS(encoding_from_json(bad), SchemaError);
}
