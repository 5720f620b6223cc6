#include "trising/adiabatic.hpp"

#include <cmath>
#include <string>

#include "trising/errors.hpp"

namespace trising {

namespace {

// exp(-i h X theta) on every qubit: (cos(h theta) I - i sin(h theta) X)^{(x)3}
ComplexMatrix field_rotation(double h, double theta) {
  const double c = std::cos(h * theta), s = std::sin(h * theta);
  const ComplexMatrix r(2, {c, cplx(0, -s), cplx(0, -s), c});
  return tensor({r, r, r});
}

// exp(-i J Z theta) with Z the bond sum; diagonal.
ComplexMatrix ising_rotation(double J, double theta) {
  const auto& z = ising_bonds();
  ComplexMatrix d(z.dim());
  for (std::size_t i = 0; i < z.dim(); ++i) d(i, i) = std::polar(1.0, -J * z(i, i).real() * theta);
  return d;
}

}  // namespace

double Schedule::rate(int m) const {
  if (M == 0) return 0.0;
  const double T = total_time();
  if (shape.kind == ScheduleShape::Kind::linear) return J_max / T;
  const double k = shape.kappa;
  return J_max * k * std::cosh(k * m / M) / (T * std::sinh(k));
}

Schedule make_schedule(int M, double h_dt, double J_final_dt, ScheduleShape shape, double h) {
  if (M < 0) throw ConfigError("number of steps M must be >= 0, got " + std::to_string(M));
  if (!(h_dt > 0.0) || !std::isfinite(h_dt)) throw ConfigError("h*dt must be > 0");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h must be > 0");
  if (!std::isfinite(J_final_dt)) throw ConfigError("J(T)*dt must be finite");
  if (shape.kind == ScheduleShape::Kind::sinh && !(shape.kappa > 0.0)) {
    throw ConfigError("sinh schedule sharpness kappa must be > 0, got " + std::to_string(shape.kappa));
  }

  Schedule s;
  s.M = M;
  s.h = h;
  s.dt = h_dt / h;
  s.J_max = J_final_dt / s.dt;
  s.shape = shape;
  s.direction = J_final_dt < 0.0 ? Regime::nonfrustrated : Regime::frustrated;
  s.J_values.resize(static_cast<std::size_t>(M) + 1);
  s.J_values[0] = 0.0;
  for (int m = 1; m <= M; ++m) {
    const double x = static_cast<double>(m) / M;
    s.J_values[m] = shape.kind == ScheduleShape::Kind::linear
                        ? s.J_max * x
                        : s.J_max * std::sinh(shape.kappa * x) / std::sinh(shape.kappa);
  }
  if (M > 0) s.J_values[M] = s.J_max;
  return s;
}

Schedule default_schedule(Regime regime, ScheduleShape shape) {
  return make_schedule(kDefaultSteps, kDefaultHdt, regime_sign(regime) * kDefaultJFinalDt, shape);
}

const char* to_string(EvolutionMode m) { return m == EvolutionMode::exact ? "exact" : "trotter2"; }

ComplexMatrix step_unitary_exact(double h, double J, double dt) {
  return exp_minus_i(build_hamiltonian({h, J}), dt);
}

ComplexMatrix step_unitary_trotter2(double h, double J, double dt) {
  const auto half = field_rotation(h, dt / 2.0);
  return half * ising_rotation(J, dt) * half;
}

ComplexMatrix step_unitary(EvolutionMode mode, double h, double J, double dt) {
  return mode == EvolutionMode::exact ? step_unitary_exact(h, J, dt)
                                      : step_unitary_trotter2(h, J, dt);
}

Trajectory evolve(const StateVector& initial, const Schedule& s, EvolutionMode mode) {
  Trajectory t{{}, mode, s};
  t.states.reserve(s.n_steps());
  StateVector psi = initial;
  for (double J : s.J_values) {
    psi = apply(step_unitary(mode, s.h, J, s.dt), psi);
    t.states.push_back(psi);
  }
  return t;
}

Trajectory evolve(const Schedule& s, EvolutionMode mode) { return evolve(all_minus_state(), s, mode); }

GroundOverlap ground_state_probability(const StateVector& state, const ModelParams& p) {
  const auto g = ground_state(p);
  return {std::norm(g.state.inner(state)), g.near_degenerate};
}

std::vector<SpectrumPoint> schedule_spectrum(const Schedule& s) {
  std::vector<SpectrumPoint> out;
  out.reserve(s.n_steps());
  for (int m = 0; m <= s.M; ++m) out.push_back(spectrum_point({s.h, s.J_values[m]}, s.rate(m)));
  return out;
}

double epsilon_max(const Schedule& s) {
  double e = 0.0;
  for (const auto& sp : schedule_spectrum(s)) e = std::max(e, sp.epsilon);
  return e;
}

}  // namespace trising
