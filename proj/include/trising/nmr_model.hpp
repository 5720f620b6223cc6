#pragma once

// Liquid-state NMR mixed-state model. A pure register state |psi> is
// represented by its pseudo-pure state (1 - zeta) I/8 + zeta |psi><psi|.

#include <vector>

#include "trising/adiabatic.hpp"
#include "trising/correlations.hpp"
#include "trising/qla.hpp"

namespace trising {

inline constexpr double kNmrPurity = 1e-5;
inline constexpr double kTestPurity = 1e-2;

/// zeta in (0, 1]; throws ConfigError otherwise.
class PurityFactor {
 public:
  explicit PurityFactor(double zeta = kNmrPurity);
  double value() const { return zeta_; }

 private:
  double zeta_;
};

/// sigma_z^1 + sigma_z^2 + sigma_z^3, the deviation part of the thermal state.
ComplexMatrix equilibrium_deviation();

/// (I + zeta * deviation) / 8, the high-temperature equilibrium state.
DensityMatrix thermal_equilibrium(PurityFactor zeta);

DensityMatrix pseudo_pure(const StateVector& psi, PurityFactor zeta);

struct MixedDiscordSample {
  std::size_t step = 0;  // 1-indexed count of applied step unitaries
  double delta_D = 0.0;
  double D12 = 0.0;
};

/// Discord monogamy score and D12 of the pseudo-pure version of each sampled
/// trajectory state. `sample_steps` are 1-indexed; empty means every step.
std::vector<MixedDiscordSample> mixed_discord_scores(const Trajectory& trajectory, PurityFactor zeta,
                                                     const std::vector<std::size_t>& sample_steps = {},
                                                     const DiscordSearch& search = {});

}  // namespace trising
