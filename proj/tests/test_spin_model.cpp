#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "trising/adiabatic.hpp"
#include "trising/errors.hpp"
#include "trising/spin_model.hpp"

using namespace trising;

namespace {

// max over distinct excited levels of |P_level dH/dt |0>| / (E_level - E0)^2,
// evaluated from Eigen's eigenbasis.
double epsilon_oracle(double h, double J, double dJ_dt) {
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::hamiltonian(h, J));
  const oracle::Mat v = dJ_dt * oracle::hamiltonian(0.0, 1.0);
  const oracle::Vec g = es.eigenvectors().col(0);
  const auto& ev = es.eigenvalues();
  double best = 0.0;
  for (int k = 1; k < 8;) {
    // one level: all eigenvalues within 1e-9 of ev(k)
    double w = 0.0;
    const double e = ev(k);
    for (; k < 8 && ev(k) - e < 1e-9; ++k) w += std::norm(es.eigenvectors().col(k).dot(v * g));
    const double gap = e - ev(0);
    if (std::sqrt(w) > 1e-10) best = std::max(best, std::sqrt(w) / (gap * gap));
  }
  return best;
}

// Basis permutation induced by relabeling qubits 1->2->3->1.
ComplexMatrix cyclic_relabel(const ComplexMatrix& m) {
  auto perm = [](std::size_t i) {
    const std::size_t b1 = (i >> 2) & 1, b2 = (i >> 1) & 1, b3 = i & 1;
    return (b3 << 2) | (b1 << 1) | b2;
  };
  ComplexMatrix r(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) r(perm(i), perm(j)) = m(i, j);
  return r;
}

}  // namespace

TEST_CASE("build_hamiltonian examples") {
  const auto e0 = hermitian_eig(build_hamiltonian({1.0, 0.0})).values;
  const std::vector<double> expect{-3, -1, -1, -1, 1, 1, 1, 3};
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(e0[k] - expect[k]) < 1e-12);

  const auto classical = build_hamiltonian({0.0, 1.0});
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      if (i != j) {
        CHECK(classical(i, j) == cplx(0.0));
      } else {
        CHECK(classical(i, i) == cplx((i == 0 || i == 7) ? 3.0 : -1.0));
      }
    }

  const auto e = hermitian_eig(build_hamiltonian({1.0, 5.25})).values;
  const auto ref = oracle::eigenvalues(oracle::hamiltonian(1.0, 5.25));
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(e[k] - ref[k]) < 1e-10);

  CHECK(max_abs_diff(build_hamiltonian({0.7, -2.3}), oracle::from_eigen(oracle::hamiltonian(0.7, -2.3))) < 1e-15);
  CHECK(field_term(0.0) == ComplexMatrix(8));
  CHECK_THROWS_AS(build_hamiltonian({-1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(build_hamiltonian({1.0, std::nan("")}), ConfigError);
}

TEST_CASE("hamiltonian invariant under cyclic relabeling") {
  for (double J : {-5.25, -1.0, 0.0, 0.3, 1.0, 5.25}) {
    const auto H = build_hamiltonian({1.0, J});
    CHECK(cyclic_relabel(H) == H);
  }
}

TEST_CASE("ground_state examples") {
  const auto g0 = ground_state({1.0, 0.0});
  CHECK(std::abs(g0.energy + 3.0) < 1e-12);
  CHECK(std::norm(g0.state.inner(all_minus_state())) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!g0.near_degenerate);

  // Strong ferromagnetic coupling: ground state approaches (|000> - |111>)/sqrt2
  // because the all-minus start has odd x-parity.
  const auto gf = ground_state({1.0, -100.0});
  const auto ghz = StateVector::normalized({1, 0, 0, 0, 0, 0, 0, -1});
  CHECK(std::norm(gf.state.inner(ghz)) > 0.999);

  const auto g1 = ground_state({1.0, 1.0});
  CHECK(std::abs(g1.energy - oracle::eigenvalues(oracle::hamiltonian(1.0, 1.0))[0]) < 1e-10);

  CHECK_THROWS_AS(ground_state({0.0, 1.0}), ConfigError);
}

TEST_CASE("ground energy bounds") {
  for (double J = -6.0; J <= 6.0; J += 0.25) {
    const auto H = build_hamiltonian({1.0, J});
    const double E0 = ground_state({1.0, J}).energy;
    double min_diag = 1e300;
    for (std::size_t i = 0; i < 8; ++i) min_diag = std::min(min_diag, H(i, i).real());
    CHECK(E0 <= -3.0 + 3.0 * std::abs(J) + 1e-12);
    CHECK(E0 <= min_diag + 1e-12);
    if (J != 0.0) CHECK(E0 <= -3.0 + 1e-12);
  }
}

TEST_CASE("adiabatic_epsilon") {
  CHECK(adiabatic_epsilon({1.0, 0.7}, 0.0) == 0.0);
  const double e = adiabatic_epsilon({1.0, 0.0}, 1.0);
  CHECK(std::abs(e - epsilon_oracle(1.0, 0.0, 1.0)) < 1e-12);
  CHECK(std::abs(e - std::sqrt(3.0) / 16.0) < 1e-12);
  CHECK(adiabatic_epsilon({1.0, 0.0}, 0.37) == adiabatic_epsilon({1.0, 0.0}, -0.37));

  for (double J : {-5.25, -2.0, -1.0, -0.3, 0.4, 1.0, 2.5, 5.25}) {
    for (double rate : {0.1, 1.0, -2.0}) {
      CHECK(std::abs(adiabatic_epsilon({1.0, J}, rate) - epsilon_oracle(1.0, J, rate)) < 1e-9);
    }
  }
}

TEST_CASE("coupled level structure along the default schedules") {
  for (Regime r : {Regime::frustrated, Regime::nonfrustrated}) {
    const auto s = default_schedule(r);
    for (int m = 0; m <= s.M; ++m) {
      const auto sp = spectrum_point({s.h, s.J_values[m]}, s.rate(m));
      if (s.rate(m) == 0.0) continue;
      REQUIRE(sp.dominant_level >= 0);
      CHECK(sp.levels[sp.dominant_level].matrix_element > 0.0);
      for (int l = 0; l < sp.dominant_level; ++l) CHECK(sp.levels[l].matrix_element < 1e-10);
      for (std::size_t k = 1; k < 8; ++k) CHECK(sp.energies[k] >= sp.energies[k - 1]);
      CHECK(std::isfinite(sp.epsilon));
    }
  }
}
