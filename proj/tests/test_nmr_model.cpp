#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "trising/errors.hpp"
#include "trising/nmr_model.hpp"

using namespace trising;

TEST_CASE("purity factor") {
  CHECK(PurityFactor().value() == 1e-5);
  CHECK_THROWS_AS(PurityFactor(0.0), ConfigError);
  CHECK_THROWS_AS(PurityFactor(-0.1), ConfigError);
  CHECK_THROWS_AS(PurityFactor(1.5), ConfigError);
  CHECK_THROWS_AS(PurityFactor(std::nan("")), ConfigError);
  CHECK_NOTHROW(PurityFactor(1.0));
}

TEST_CASE("equilibrium deviation") {
  const auto d = equilibrium_deviation();
  CHECK(d.trace() == cplx(0.0));
  CHECK(d(0, 0) == cplx(3.0));
  CHECK(d(3, 3) == cplx(-1.0));
  CHECK(d(7, 7) == cplx(-3.0));
  const auto th = thermal_equilibrium(PurityFactor(1e-5));
  CHECK(std::abs(th.matrix().trace() - 1.0) < 1e-15);
}

TEST_CASE("pseudo-pure states") {
  std::mt19937_64 rng(8);
  const auto psi = oracle::to_state(oracle::random_state(rng, 8));

  CHECK(max_abs_diff(pseudo_pure(psi, PurityFactor(1.0)).matrix(), psi.projector()) < 1e-15);

  const auto tiny = pseudo_pure(psi, PurityFactor(1e-12)).matrix();
  CHECK(max_abs_diff(tiny, ComplexMatrix::identity(8) * cplx(0.125)) <= 2e-12);

  for (double z : {1e-5, 1e-2, 0.5, 1.0}) {
    const auto r = pseudo_pure(psi, PurityFactor(z));
    CHECK_NOTHROW(DensityMatrix(r.matrix(), r.subsystem_dims()));
    const auto ev = hermitian_eig(r.matrix()).values;
    for (int k = 0; k < 7; ++k) CHECK(std::abs(ev[k] - (1 - z) / 8) < 1e-14);
    CHECK(std::abs(ev[7] - ((1 - z) / 8 + z)) < 1e-14);
  }

  CHECK_THROWS_AS(pseudo_pure(psi, PurityFactor(2.0)), ConfigError);
}

TEST_CASE("mixing commutes with unitary evolution") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const auto psi = oracle::to_state(oracle::random_state(rng, 8));
    const auto U = oracle::from_eigen(oracle::random_unitary(rng, 8));
    const PurityFactor z(1e-2);
    const auto a = pseudo_pure(apply(U, psi), z).matrix();
    const auto b = U * pseudo_pure(psi, z).matrix() * U.adjoint();
    CHECK(max_abs_diff(a, b) <= 1e-12);
  }
}

TEST_CASE("pseudo-pure states at NMR purity carry no entanglement") {
  for (Regime r : {Regime::frustrated, Regime::nonfrustrated}) {
    const auto t = evolve(default_schedule(r), EvolutionMode::exact);
    for (const auto& st : t.states) {
      const auto rho = pseudo_pure(st, PurityFactor(1e-5));
      CHECK(negativity(rho, {0, {1, 2}}) == 0.0);
      CHECK(negativity(rho, {0, {1}}) == 0.0);
    }
  }
}

TEST_CASE("mixed discord scores") {
  const auto t = evolve(default_schedule(Regime::nonfrustrated), EvolutionMode::exact);

  const auto full = mixed_discord_scores(t, PurityFactor(1.0), {5, 21});
  REQUIRE(full.size() == 2);
  for (const auto& s : full) {
    const auto pure = discord_monogamy(DensityMatrix::from_state(t.states[s.step - 1]));
    CHECK(std::abs(s.delta_D - pure.score) < 1e-9);
    CHECK(std::abs(s.D12 - pure.q12) < 1e-9);
  }

  const auto at_zero = mixed_discord_scores(t, PurityFactor(1e-5), {1});
  CHECK(std::abs(at_zero[0].delta_D) <= 1e-12);
  CHECK(std::abs(at_zero[0].D12) <= 1e-12);

  CHECK(mixed_discord_scores(t, PurityFactor(0.5)).size() == 21);
  CHECK_THROWS_AS(mixed_discord_scores(t, PurityFactor(0.5), {0}), UsageError);
  CHECK_THROWS_AS(mixed_discord_scores(t, PurityFactor(0.5), {22}), UsageError);
}

TEST_CASE("mixed discord shrinks continuously with purity") {
  const auto t = evolve(default_schedule(Regime::nonfrustrated), EvolutionMode::exact);
  double prev = 1e300;
  for (double z = 1e-1; z >= 1e-3; z /= 2) {
    const double d = mixed_discord_scores(t, PurityFactor(z), {21})[0].D12;
    CHECK(d >= -1e-12);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-5);
}
