#pragma once

// End-to-end runs: both regimes, both evolution modes, correlation analysis
// at the sampled steps, and CSV / summary serialization.

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "trising/adiabatic.hpp"
#include "trising/correlations.hpp"
#include "trising/nmr_model.hpp"

namespace trising {

struct ExperimentConfig {
  int M = kDefaultSteps;
  double h_dt = kDefaultHdt;
  /// Magnitude; the regime supplies the sign.
  double J_final_dt = kDefaultJFinalDt;
  ScheduleShape shape = ScheduleShape::sinh(3.0);
  /// 1-indexed counts of applied steps. Empty selects default_sample_steps(M).
  std::vector<std::size_t> sample_steps;
  double zeta = kNmrPurity;
  double zeta_test = kTestPurity;
  std::vector<Regime> regimes{Regime::frustrated, Regime::nonfrustrated};
  std::vector<EvolutionMode> modes{EvolutionMode::exact, EvolutionMode::trotter2};
  std::string output_path;
  DiscordSearch discord_search;

  /// Sample steps actually used (explicit list or the default).
  std::vector<std::size_t> resolved_samples() const;
  /// Throws ConfigError on any invariant violation.
  void validate() const;
};

/// 3, 5, ..., up to M + 1; {M + 1} when that range is empty.
std::vector<std::size_t> default_sample_steps(int M);

struct CorrelationRecord {
  Regime regime = Regime::frustrated;
  EvolutionMode mode = EvolutionMode::exact;
  std::size_t step = 0;
  double J_over_h = 0.0;  // signed
  double N12 = 0.0;
  double N13 = 0.0;
  double N1_23 = 0.0;
  double delta_N2 = 0.0;
  double D12 = 0.0;
  double D13 = 0.0;
  double D1_23 = 0.0;
  double delta_D = 0.0;
  double delta_D_mixed = 0.0;  // pseudo-pure state at zeta_test
  double fidelity_vs_ground = 0.0;
  double ground_prob = 0.0;
  double epsilon = 0.0;

  friend bool operator==(const CorrelationRecord&, const CorrelationRecord&) = default;
};

inline constexpr std::array<std::string_view, 16> kCsvColumns{
    "regime", "mode",  "step",  "J_over_h", "N12",           "N13",
    "N1_23",  "delta_N2", "D12", "D13",     "D1_23",         "delta_D",
    "delta_D_mixed", "fidelity_vs_ground", "ground_prob", "epsilon"};

/// Whole-pipeline figures for one regime x mode that do not fit a per-sample row.
struct PipelineSummary {
  Regime regime = Regime::frustrated;
  EvolutionMode mode = EvolutionMode::exact;
  /// Max epsilon over every schedule grid point, not just the samples.
  double epsilon_max = 0.0;
  /// Final state: ground-state probability, and pseudo-pure quantities at zeta.
  double final_ground_prob = 0.0;
  double final_delta_D_mixed_zeta = 0.0;
  double final_pps_negativity_zeta = 0.0;
};

struct RunResult {
  std::vector<CorrelationRecord> records;  // sorted by regime, mode, step
  std::vector<PipelineSummary> pipelines;  // same order
  std::vector<std::string> warnings;
  double zeta = kNmrPurity;
  double zeta_test = kTestPurity;
};

/// Deterministic given the config; the regime x mode pipelines run concurrently.
RunResult run(const ExperimentConfig& config);

/// Analysis of one pure register state at one point of a schedule.
CorrelationRecord analyze_state(const StateVector& psi, const Schedule& schedule, std::size_t step,
                                EvolutionMode mode, PurityFactor zeta_test,
                                const DiscordSearch& search = {});

void write_csv(const std::vector<CorrelationRecord>& records, const std::filesystem::path& path);
std::string to_csv(const std::vector<CorrelationRecord>& records);
std::vector<CorrelationRecord> read_csv(const std::filesystem::path& path);
std::vector<CorrelationRecord> parse_csv(std::string_view text);

void write_summary(const RunResult& result, const std::filesystem::path& path);
std::string to_summary(const RunResult& result);

enum class SweepParameter { kappa, steps };

struct SweepRow {
  double value = 0.0;  // kappa or M
  Regime regime = Regime::frustrated;
  double epsilon_max = 0.0;
  double ground_prob_exact = 0.0;
  double ground_prob_trotter2 = 0.0;
};

/// epsilon_max and final ground-state probabilities while varying kappa or M
/// around `base` (all other settings kept).
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter what,
                            const std::vector<double>& values);
std::string sweep_table(const std::vector<SweepRow>& rows, SweepParameter what);

Regime parse_regime(std::string_view s);
EvolutionMode parse_mode(std::string_view s);

}  // namespace trising
