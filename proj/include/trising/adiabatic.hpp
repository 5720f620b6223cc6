#pragma once

// Discretized adiabatic drive from J = 0 to +/-|J_max|. Step m (0..M) applies
// U_m = exp(-i H(h, J(m)) dt); the drive lasts T = (M + 1) dt and step m sits
// at time t_m = m T / M.

#include <numbers>
#include <vector>

#include "trising/qla.hpp"
#include "trising/spin_model.hpp"

namespace trising {

struct ScheduleShape {
  enum class Kind { linear, sinh };
  Kind kind = Kind::sinh;
  /// Sharpness of the sinh ramp; ignored for linear.
  double kappa = 3.0;

  static ScheduleShape linear() { return {Kind::linear, 0.0}; }
  static ScheduleShape sinh(double kappa) { return {Kind::sinh, kappa}; }
};

inline constexpr int kDefaultSteps = 20;                            // M
inline constexpr double kDefaultHdt = std::numbers::pi / 21.0;      // h * dt
inline constexpr double kDefaultJFinalDt = std::numbers::pi / 4.0;  // |J(T)| * dt

struct Schedule {
  int M = 0;
  double h = 1.0;
  double dt = 0.0;
  double J_max = 0.0;  // signed
  std::vector<double> J_values;  // M + 1 entries
  ScheduleShape shape;
  Regime direction = Regime::frustrated;

  std::size_t n_steps() const { return J_values.size(); }
  /// T = (M + 1) dt
  double total_time() const { return (M + 1) * dt; }
  /// Analytic dJ/dt at step m, evaluated at t_m = m T / M.
  double rate(int m) const;
};

/// J(m) = J_max sinh(kappa m/M) / sinh(kappa) or J_max m/M, with
/// dt = h_dt / h and J_max = J_final_dt / dt (sign selects the regime).
/// M = 0 yields the single-step schedule J = (0).
/// Throws ConfigError on M < 0, h_dt <= 0, h <= 0, kappa <= 0.
Schedule make_schedule(int M, double h_dt, double J_final_dt, ScheduleShape shape, double h = 1.0);

/// Defaults for one regime: M = 20, h dt = pi/21, |J(T)| dt = pi/4.
Schedule default_schedule(Regime regime, ScheduleShape shape = {});

enum class EvolutionMode { exact, trotter2 };
const char* to_string(EvolutionMode m);

ComplexMatrix step_unitary_exact(double h, double J, double dt);
/// exp(-i F dt/2) exp(-i Z(J) dt) exp(-i F dt/2)
ComplexMatrix step_unitary_trotter2(double h, double J, double dt);
ComplexMatrix step_unitary(EvolutionMode mode, double h, double J, double dt);

struct Trajectory {
  std::vector<StateVector> states;  // states[k] = U_k ... U_0 |initial>
  EvolutionMode mode = EvolutionMode::exact;
  Schedule schedule;
};

Trajectory evolve(const StateVector& initial, const Schedule& s, EvolutionMode mode);
/// Starts from |--->.
Trajectory evolve(const Schedule& s, EvolutionMode mode);

struct GroundOverlap {
  double probability = 0.0;
  bool near_degenerate = false;
};

/// |<psi0(p)|state>|^2
GroundOverlap ground_state_probability(const StateVector& state, const ModelParams& p);

/// Adiabaticity analysis at every grid point of the schedule.
std::vector<SpectrumPoint> schedule_spectrum(const Schedule& s);
double epsilon_max(const Schedule& s);

}  // namespace trising
