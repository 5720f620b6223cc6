#pragma once

// Bipartite quantum correlations (negativity, quantum discord) and the
// monogamy scores built from them:
//   delta_Q = Q_1(23) - Q_12 - Q_13

#include <vector>

#include "trising/qla.hpp"

namespace trising {

/// Party `measured` against the parties in `remainder`. Any subsystem in
/// neither is traced out before the measure is evaluated.
struct BipartiteSplit {
  std::size_t measured = 0;
  std::vector<std::size_t> remainder;
};

/// Sum of |negative eigenvalues| of the partial transpose on the measured
/// party. A maximally entangled qubit pair gives 1/2.
double negativity(const DensityMatrix& rho, const BipartiteSplit& split);

struct DiscordResult {
  double discord = 0.0;                // bits
  double theta = 0.0;                  // [0, pi]
  double phi = 0.0;                    // [0, 2 pi)
  double mutual_information = 0.0;     // bits
  double classical_correlation = 0.0;  // bits
};

/// Settings for the measurement search. Defaults: 61 x 120 grid, five best
/// cells refined by compass search from pi/120 down to 1e-7.
struct DiscordSearch {
  int theta_points = 61;
  int phi_points = 120;
  int refine_starts = 5;
  double initial_step = 0.0;  // 0 selects pi / phi_points
  double final_step = 1e-7;
};

/// I - J with J maximized over rank-one projective measurements
/// {|n><n|, |n_perp><n_perp|}, |n> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
/// on the measured party. Throws UsageError unless the measured party is a
/// qubit and the remainder is non-empty.
DiscordResult quantum_discord(const DensityMatrix& rho, const BipartiteSplit& split,
                              const DiscordSearch& search = {});

/// Average conditional entropy sum_i p_i S(rho_B|i) for the measurement
/// along (theta, phi). Exposed for tests and landscape scans.
double conditional_entropy(const DensityMatrix& rho, const BipartiteSplit& split, double theta,
                           double phi);

struct MonogamyTerms {
  double whole = 0.0;  // Q_1(23)
  double q12 = 0.0;
  double q13 = 0.0;
  double score = 0.0;  // delta
};

/// Squared-negativity terms: N^2_1(23) - N^2_12 - N^2_13 (N values, not squares, in the fields).
MonogamyTerms negativity_monogamy(const DensityMatrix& rho123);
double entanglement_monogamy_score(const DensityMatrix& rho123);

/// Discord terms, all measured on qubit 1.
MonogamyTerms discord_monogamy(const DensityMatrix& rho123, const DiscordSearch& search = {});
double discord_monogamy_score(const DensityMatrix& rho123, const DiscordSearch& search = {});

}  // namespace trising
