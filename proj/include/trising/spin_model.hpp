#pragma once

// Three-spin transverse-field Ising model on a triangle:
//   H = h (X1 + X2 + X3) + J (Z1 Z2 + Z2 Z3 + Z1 Z3)
// Qubit 1 is the most significant bit of the computational-basis index.
// J > 0 is the frustrated (antiferromagnetic) regime, J < 0 non-frustrated.

#include <vector>

#include "trising/qla.hpp"

namespace trising {

inline constexpr std::size_t kSpins = 3;

struct ModelParams {
  double h = 1.0;
  double J = 0.0;
};

enum class Regime { frustrated, nonfrustrated };

const char* to_string(Regime r);
/// +1 for frustrated, -1 for non-frustrated.
double regime_sign(Regime r);

/// h * sum_i X_i
ComplexMatrix field_term(double h);
/// J * sum_{i<j} Z_i Z_j (diagonal)
ComplexMatrix ising_term(double J);
/// sum_{i<j} Z_i Z_j, i.e. dH/dJ.
const ComplexMatrix& ising_bonds();

/// field_term(h) + ising_term(J). Accepts h >= 0; throws ConfigError on
/// non-finite or negative h.
ComplexMatrix build_hamiltonian(const ModelParams& p);

struct GroundState {
  double energy = 0.0;
  StateVector state;
  /// E1 - E0
  double gap = 0.0;
  /// gap < 1e-8 * h: the ground state is numerically ill-defined.
  bool near_degenerate = false;
};

/// Lowest eigenpair under the qla phase convention. Requires h > 0.
GroundState ground_state(const ModelParams& p);

/// The product ground state |---> of the field term, |-> = (|0> - |1>)/sqrt2.
StateVector all_minus_state();

struct LevelCoupling {
  double energy = 0.0;
  /// Norm of the projection of dH/dt |0> onto this eigenspace, zeroed below 1e-10.
  double matrix_element = 0.0;
  /// Number of (numerically) degenerate eigenvectors merged into this level.
  std::size_t multiplicity = 1;
};

struct SpectrumPoint {
  double J_over_h = 0.0;
  std::vector<double> energies;  // 8 ascending, units of h
  StateVector ground_state;
  /// Excited levels above E0 (degenerate eigenvectors merged).
  std::vector<LevelCoupling> levels;
  double epsilon = 0.0;
  /// Index into `levels` of the maximizing level; -1 when epsilon == 0.
  int dominant_level = -1;
};

/// Full adiabaticity analysis at one point of the drive.
/// epsilon = max_k |<k| dH/dt |0>| / (E_k - E0)^2 with dH/dt = dJ_dt * ising_bonds().
/// Throws DegenerateGapError when a level with nonzero coupling sits within
/// 1e-10 of E0.
SpectrumPoint spectrum_point(const ModelParams& p, double dJ_dt);

double adiabatic_epsilon(const ModelParams& p, double dJ_dt);

}  // namespace trising
