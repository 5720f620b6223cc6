#include "trising/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "trising/adiabatic.hpp"
#include "trising/correlations.hpp"
#include "trising/experiment.hpp"
#include "trising/nmr_model.hpp"
#include "trising/spin_model.hpp"

namespace trising {

namespace {

struct Check {
  const char* name;
  std::function<double()> error;  // deviation from the expected value
  double tolerance;
};

DensityMatrix bell_phi_plus() {
  const double a = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::from_state(StateVector({a, 0.0, 0.0, a}));
}

DensityMatrix ghz() {
  std::vector<cplx> v(8);
  v[0] = v[7] = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::from_state(StateVector(v));
}

}  // namespace

bool run_verification(std::ostream& out) {
  const std::vector<Check> checks{
      {"tensor(X,X) is the anti-diagonal ones matrix",
       [] {
         ComplexMatrix anti(4);
         for (std::size_t i = 0; i < 4; ++i) anti(i, 3 - i) = 1.0;
         return max_abs_diff(tensor({pauli_x(), pauli_x()}), anti);
       },
       0.0},
      {"field-term spectrum (-3,-1,-1,-1,1,1,1,3)",
       [] {
         const auto ev = hermitian_eig(field_term(1.0)).values;
         const double want[] = {-3, -1, -1, -1, 1, 1, 1, 3};
         double e = 0.0;
         for (int i = 0; i < 8; ++i) e = std::max(e, std::abs(ev[i] - want[i]));
         return e;
       },
       1e-10},
      {"exp(-i Z pi/2) = diag(-i, i)",
       [] {
         return max_abs_diff(exp_minus_i(pauli_z(), std::numbers::pi / 2),
                             ComplexMatrix(2, {cplx(0, -1), 0.0, 0.0, cplx(0, 1)}));
       },
       1e-10},
      {"exp(-i X pi/2) = -i X",
       [] {
         return max_abs_diff(exp_minus_i(pauli_x(), std::numbers::pi / 2),
                             pauli_x() * cplx(0, -1));
       },
       1e-10},
      {"partial trace of Bell state is I/2",
       [] {
         return max_abs_diff(partial_trace(bell_phi_plus(), {0}).matrix(),
                             ComplexMatrix::identity(2) * cplx(0.5));
       },
       1e-12},
      {"Bell partial transpose has eigenvalue -1/2",
       [] { return std::abs(hermitian_eig(partial_transpose(bell_phi_plus(), 0)).values[0] + 0.5); },
       1e-10},
      {"S(diag(3/4, 1/4)) = 0.811278 bits",
       [] {
         const double d[] = {0.75, 0.25};
         return std::abs(von_neumann_entropy(DensityMatrix(ComplexMatrix::diagonal(d))) -
                         (-(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25))));
       },
       1e-12},
      {"F(|0><0|, I/2) = 1/sqrt2",
       [] {
         const double d0[] = {1.0, 0.0}, dm[] = {0.5, 0.5};
         return std::abs(fidelity(DensityMatrix(ComplexMatrix::diagonal(d0)),
                                  DensityMatrix(ComplexMatrix::diagonal(dm))) -
                         1.0 / std::numbers::sqrt2);
       },
       1e-12},
      {"ising_term(1) at |010> = -1", [] { return std::abs(ising_term(1.0)(2, 2).real() + 1.0); }, 0.0},
      {"ground energy at J = 0 is -3h", [] { return std::abs(ground_state({1.0, 0.0}).energy + 3.0); }, 1e-10},
      {"epsilon(h=1, J=0, dJ/dt=1) = sqrt3/16",
       [] { return std::abs(adiabatic_epsilon({1.0, 0.0}, 1.0) - std::sqrt(3.0) / 16.0); },
       1e-10},
      {"default schedule reaches |J|/h = 5.25",
       [] { return std::abs(default_schedule(Regime::frustrated).J_values.back() - 5.25); },
       1e-12},
      {"trotter2 equals exact step at J = 0",
       [] { return max_abs_diff(step_unitary_trotter2(1.0, 0.0, 0.3), step_unitary_exact(1.0, 0.0, 0.3)); },
       1e-12},
      {"Bell negativity = 1/2", [] { return std::abs(negativity(bell_phi_plus(), {0, {1}}) - 0.5); }, 1e-10},
      {"GHZ squared-negativity score = 1/4",
       [] { return std::abs(entanglement_monogamy_score(ghz()) - 0.25); },
       1e-9},
      {"GHZ discord score = 1", [] { return std::abs(discord_monogamy_score(ghz()) - 1.0); }, 1e-4},
      {"Bell discord = 1 bit",
       [] { return std::abs(quantum_discord(bell_phi_plus(), {0, {1}}).discord - 1.0); },
       1e-4},
      {"classical-quantum state has zero discord",
       [] {
         const double d[] = {0.5, 0.0, 0.0, 0.5};
         return std::abs(quantum_discord(DensityMatrix(ComplexMatrix::diagonal(d)), {0, {1}}).discord);
       },
       1e-9},
      {"pseudo-pure state at zeta = 1 is the projector",
       [] {
         const auto psi = all_minus_state();
         return max_abs_diff(pseudo_pure(psi, PurityFactor(1.0)).matrix(), psi.projector());
       },
       1e-15},
      {"M = 0 run gives an uncorrelated product state",
       [] {
         ExperimentConfig cfg;
         cfg.M = 0;
         double e = 0.0;
         for (const auto& r : run(cfg).records) {
           for (double v : {r.N12, r.N13, r.N1_23, r.delta_N2, r.D12, r.D13, r.D1_23, r.delta_D})
             e = std::max(e, std::abs(v));
           e = std::max(e, std::abs(r.fidelity_vs_ground - 1.0));
         }
         return e;
       },
       1e-9},
  };

  bool ok = true;
  for (const auto& c : checks) {
    double err = 0.0;
    std::string detail;
    bool pass = false;
    try {
      err = c.error();
      pass = std::isfinite(err) && err <= c.tolerance;
      detail = "error " + std::to_string(err);
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
    }
    out << (pass ? "PASS  " : "FAIL  ") << c.name;
    if (!pass) out << "  (" << detail << ")";
    out << '\n';
    ok = ok && pass;
  }
  return ok;
}

}  // namespace trising
