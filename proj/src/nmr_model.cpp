#include "trising/nmr_model.hpp"

#include <cmath>
#include <string>

#include "trising/errors.hpp"
#include "trising/spin_model.hpp"

namespace trising {

PurityFactor::PurityFactor(double zeta) : zeta_(zeta) {
  if (!(zeta > 0.0) || zeta > 1.0 || !std::isfinite(zeta)) {
    throw ConfigError("purity factor zeta must lie in (0, 1], got " + std::to_string(zeta));
  }
}

ComplexMatrix equilibrium_deviation() {
  ComplexMatrix d(8);
  for (std::size_t i = 0; i < kSpins; ++i) d += embed_single_qubit(pauli_z(), i, kSpins);
  return d;
}

DensityMatrix thermal_equilibrium(PurityFactor zeta) {
  auto m = ComplexMatrix::identity(8) + equilibrium_deviation() * cplx(zeta.value());
  m *= 1.0 / 8.0;
  return DensityMatrix(m);
}

DensityMatrix pseudo_pure(const StateVector& psi, PurityFactor zeta) {
  const double z = zeta.value();
  const std::size_t n = psi.dim();
  auto m = psi.projector() * cplx(z);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += (1.0 - z) / static_cast<double>(n);
  return DensityMatrix::trusted(std::move(m), std::vector<std::size_t>(psi.n_qubits(), 2));
}

std::vector<MixedDiscordSample> mixed_discord_scores(const Trajectory& trajectory, PurityFactor zeta,
                                                     const std::vector<std::size_t>& sample_steps,
                                                     const DiscordSearch& search) {
  std::vector<std::size_t> steps = sample_steps;
  if (steps.empty()) {
    for (std::size_t k = 1; k <= trajectory.states.size(); ++k) steps.push_back(k);
  }
  std::vector<MixedDiscordSample> out;
  out.reserve(steps.size());
  for (auto k : steps) {
    if (k < 1 || k > trajectory.states.size()) {
      throw UsageError("mixed_discord_scores: sample step " + std::to_string(k) + " outside [1, " +
                       std::to_string(trajectory.states.size()) + "]");
    }
    const auto terms = discord_monogamy(pseudo_pure(trajectory.states[k - 1], zeta), search);
    out.push_back({k, terms.score, terms.q12});
  }
  return out;
}

}  // namespace trising
