#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "trising/errors.hpp"
#include "trising/qla.hpp"

using namespace trising;
using std::numbers::pi;

namespace {

DensityMatrix pure(std::vector<cplx> amps) { return DensityMatrix::from_state(StateVector::normalized(std::move(amps))); }

DensityMatrix diag_rho(std::vector<double> d) {
  return DensityMatrix(ComplexMatrix::diagonal(d), {d.size()});
}

}  // namespace

TEST_CASE("tensor") {
  CHECK(tensor({ComplexMatrix::identity(2)}) == ComplexMatrix::identity(2));
  CHECK_THROWS_AS(tensor(std::span<const ComplexMatrix>{}), UsageError);

  const auto xz = tensor({pauli_x(), pauli_z()});
  const auto ref = oracle::kron(oracle::pauli_x(), oracle::pauli_z());
  CHECK(max_abs_diff(xz, oracle::from_eigen(ref)) == 0.0);
  CHECK(embed_single_qubit(pauli_x(), 2, 3) ==
        tensor({ComplexMatrix::identity(2), ComplexMatrix::identity(2), pauli_x()}));
}

TEST_CASE("state and density validation") {
  CHECK_THROWS_AS(StateVector({1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(StateVector({1.0, 0.0, 0.0}), ValidationError);
  CHECK(StateVector::normalized({3.0, 4.0}).norm() == doctest::Approx(1.0).epsilon(1e-15));

  ComplexMatrix not_herm(2);
  not_herm(0, 0) = 1.0;
  not_herm(0, 1) = 0.5;
  CHECK_THROWS_AS(DensityMatrix{not_herm}, ValidationError);
  CHECK_THROWS_AS(diag_rho({0.6, 0.6}), ValidationError);
  CHECK_THROWS_AS(diag_rho({1.1, -0.1}), ValidationError);
  CHECK_NOTHROW(diag_rho({1.0 + 5e-10, -5e-10}));
}

TEST_CASE("hermitian_eig examples") {
  auto ez = hermitian_eig(pauli_z());
  CHECK(ez.values[0] == doctest::Approx(-1.0));
  CHECK(ez.values[1] == doctest::Approx(1.0));

  auto ex = hermitian_eig(pauli_x());
  CHECK(ex.values[0] == doctest::Approx(-1.0));
  auto g = ex.column(0);
  // largest-magnitude component real positive; ties go to the first index
  CHECK(std::abs(g[0] - cplx(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(g[1] - cplx(-1 / std::sqrt(2.0))) < 1e-12);

  auto field = embed_single_qubit(pauli_x(), 0, 3) + embed_single_qubit(pauli_x(), 1, 3) +
               embed_single_qubit(pauli_x(), 2, 3);
  const std::vector<double> expect{-3, -1, -1, -1, 1, 1, 1, 3};
  auto ef = hermitian_eig(field);
  for (std::size_t k = 0; k < 8; ++k) CHECK(ef.values[k] == doctest::Approx(expect[k]).epsilon(1e-12));

  ComplexMatrix bad = pauli_x();
  bad(0, 1) = 2.0;
  CHECK_THROWS_AS(hermitian_eig(bad), ValidationError);
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = oracle::random_hermitian(rng, 8);
    const auto H = oracle::from_eigen(h);
    const auto es = hermitian_eig(H);
    ComplexMatrix lam = ComplexMatrix::diagonal(es.values);
    const auto rec = es.vectors * lam * es.vectors.adjoint();
    CHECK(max_abs_diff(rec, H) <= 1e-10);
    CHECK(max_abs_diff(es.vectors.adjoint() * es.vectors, ComplexMatrix::identity(8)) <= 1e-10);
    const auto ref = oracle::eigenvalues(h);
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(es.values[k] - ref[k]) <= 1e-10);
  }
}

TEST_CASE("hermitian_eig on degenerate and diagonal input") {
  const auto es = hermitian_eig(ComplexMatrix::identity(4));
  for (double v : es.values) CHECK(v == 1.0);
  CHECK(max_abs_diff(es.vectors, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("exp_minus_i examples") {
  // exp(-i Z pi/2) = diag(-i, i); exp(-i Z pi) = -I
  auto u = exp_minus_i(pauli_z(), pi / 2);
  CHECK(std::abs(u(0, 0) - cplx(0, -1)) < 1e-12);
  CHECK(std::abs(u(1, 1) - cplx(0, 1)) < 1e-12);
  CHECK(max_abs_diff(exp_minus_i(pauli_z(), pi), ComplexMatrix::identity(2) * cplx(-1)) < 1e-12);

  CHECK(exp_minus_i(pauli_x(), 0.0) == ComplexMatrix::identity(2));
  CHECK(max_abs_diff(exp_minus_i(pauli_x(), pi / 2), pauli_x() * cplx(0, -1)) < 1e-12);

  ComplexMatrix bad(2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(exp_minus_i(bad, 0.0), ValidationError);
}

TEST_CASE("exp_minus_i against series oracle and inverse property") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> us(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = oracle::random_hermitian(rng, 8);
    const double s = us(rng);
    const auto H = oracle::from_eigen(h);
    const auto u = exp_minus_i(H, s);
    CHECK(max_abs_diff(u * exp_minus_i(H, -s), ComplexMatrix::identity(8)) <= 1e-10);
    CHECK(max_abs_diff(u, oracle::from_eigen(oracle::expm_series(h, s))) <= 1e-10);
  }
}

TEST_CASE("partial_trace examples") {
  const auto r00 = partial_trace(DensityMatrix::from_state(StateVector::basis(2, 0)), {1});
  CHECK(max_abs_diff(r00.matrix(), ComplexMatrix::diagonal(std::vector<double>{1, 0})) == 0.0);

  const auto bell = pure({1, 0, 0, 1});
  const auto half = ComplexMatrix::identity(2) * cplx(0.5);
  CHECK(max_abs_diff(partial_trace(bell, {1}).matrix(), half) < 1e-15);
  CHECK(max_abs_diff(partial_trace(bell, {0}).matrix(), half) < 1e-15);
  const auto ref = oracle::partial_trace(oracle::to_eigen(bell.matrix()), 2, {1});
  CHECK(max_abs_diff(partial_trace(bell, {1}).matrix(), oracle::from_eigen(ref)) < 1e-15);

  CHECK(partial_trace(bell, {0, 1}).matrix() == bell.matrix());

  CHECK_THROWS_AS(partial_trace(bell, {}), UsageError);
  CHECK_THROWS_AS(partial_trace(bell, {2}), UsageError);
  CHECK_THROWS_AS(partial_trace(bell, {1, 1}), UsageError);
}

TEST_CASE("partial_trace of product states and random inputs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_density(rng, 2), b = oracle::random_density(rng, 2);
    const auto rho = oracle::to_density(oracle::kron(a, b));
    CHECK(max_abs_diff(partial_trace(rho, {0}).matrix(), oracle::from_eigen(a)) < 1e-12);
    CHECK(max_abs_diff(partial_trace(rho, {1}).matrix(), oracle::from_eigen(b)) < 1e-12);

    const auto r8 = oracle::random_density(rng, 8);
    const auto rho8 = oracle::to_density(r8);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
      const auto red = partial_trace(rho8, keep);
      std::vector<int> k(keep.begin(), keep.end());
      CHECK(max_abs_diff(red.matrix(), oracle::from_eigen(oracle::partial_trace(r8, 3, k))) < 1e-12);
      CHECK(std::abs(red.matrix().trace() - 1.0) < 1e-12);
      for (double e : hermitian_eig(red.matrix()).values) CHECK(e >= -1e-9);
    }
  }
}

TEST_CASE("partial_transpose") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_density(rng, 2), b = oracle::random_density(rng, 2);
    const auto rho = oracle::to_density(oracle::kron(a, b));
    const auto pt = partial_transpose(rho, 0);
    CHECK(max_abs_diff(pt, oracle::from_eigen(oracle::kron(a.transpose(), b))) < 1e-12);
    for (double e : hermitian_eig(pt).values) CHECK(e >= -1e-12);

    const auto r8 = oracle::random_density(rng, 8);
    const auto rho8 = oracle::to_density(r8);
    for (std::size_t q = 0; q < 3; ++q) {
      const auto t = partial_transpose(rho8, q);
      CHECK(max_abs_diff(t, oracle::from_eigen(oracle::partial_transpose(r8, 3, static_cast<int>(q)))) == 0.0);
      CHECK(std::abs(t.trace() - 1.0) < 1e-12);
      CHECK(t.hermiticity_defect() < 1e-12);
      const auto back = partial_transpose(DensityMatrix::trusted(t, {2, 2, 2}), q);
      CHECK(back == rho8.matrix());
    }
  }
  CHECK_THROWS_AS(partial_transpose(pure({1, 0, 0, 1}), 2), UsageError);

  // Bell state: spectrum (1/2, 1/2, 1/2, -1/2)
  const auto ev = hermitian_eig(partial_transpose(pure({1, 0, 0, 1}), 0)).values;
  CHECK(ev[0] == doctest::Approx(-0.5));
  CHECK(ev[3] == doctest::Approx(0.5));
}

TEST_CASE("von_neumann_entropy") {
  CHECK(std::abs(von_neumann_entropy(pure({1, 2, 3, 4}))) < 1e-12);
  CHECK(von_neumann_entropy(diag_rho({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  const double expected = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(std::abs(von_neumann_entropy(diag_rho({0.75, 0.25})) - expected) < 1e-12);
  CHECK(std::abs(expected - 0.811278) < 1e-6);

  const std::vector<double> noisy{1.0, -5e-10, 3e-13};
  CHECK(spectrum_entropy(noisy) == 0.0);
  const std::vector<double> bad{1.0, -2e-9};
  CHECK_THROWS_AS(spectrum_entropy(bad), ValidationError);
}

TEST_CASE("entropy invariant under unitary conjugation") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = oracle::random_density(rng, 8);
    const auto u = oracle::random_unitary(rng, 8);
    const double s0 = von_neumann_entropy(oracle::to_density(r));
    const double s1 = von_neumann_entropy(oracle::to_density(u * r * u.adjoint()));
    CHECK(std::abs(s0 - s1) <= 1e-9);
    CHECK(std::abs(s0 - oracle::entropy_bits(r)) <= 1e-9);
  }
}

TEST_CASE("fidelity") {
  std::mt19937_64 rng(31);
  const auto r = oracle::to_density(oracle::random_density(rng, 8));
  CHECK(fidelity(r, r) == 1.0);
  const auto p0 = DensityMatrix::from_state(StateVector::basis(1, 0));
  const auto p1 = DensityMatrix::from_state(StateVector::basis(1, 1));
  CHECK(fidelity(p0, p1) == 0.0);
  CHECK(std::abs(fidelity(p0, diag_rho({0.5, 0.5})) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(fidelity(p0, DensityMatrix::from_state(StateVector::basis(2, 0))), UsageError);
}
