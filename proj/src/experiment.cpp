#include "trising/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "trising/errors.hpp"

namespace trising {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string header_line() {
  std::string h;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) h += ',';
    h += kCsvColumns[i];
  }
  return h;
}

struct Pipeline {
  std::vector<CorrelationRecord> records;
  PipelineSummary summary;
  std::vector<std::string> warnings;
};

Pipeline run_pipeline(const ExperimentConfig& cfg, Regime regime, EvolutionMode mode) {
  const auto schedule = make_schedule(cfg.M, cfg.h_dt, regime_sign(regime) * cfg.J_final_dt, cfg.shape);
  const auto traj = evolve(schedule, mode);
  const PurityFactor zeta_test(cfg.zeta_test);

  Pipeline p;
  for (auto step : cfg.resolved_samples()) {
    p.records.push_back(analyze_state(traj.states[step - 1], schedule, step, mode, zeta_test,
                                      cfg.discord_search));
    if (std::isnan(p.records.back().epsilon)) {
      p.warnings.push_back(std::string(to_string(regime)) + "/" + to_string(mode) + " step " +
                           std::to_string(step) + ": degenerate gap, epsilon undefined");
    }
  }

  p.summary.regime = regime;
  p.summary.mode = mode;
  for (int m = 0; m <= schedule.M; ++m) {
    try {
      p.summary.epsilon_max = std::max(
          p.summary.epsilon_max, spectrum_point({schedule.h, schedule.J_values[m]}, schedule.rate(m)).epsilon);
    } catch (const DegenerateGapError& e) {
      p.warnings.push_back(e.what());
    }
  }
  const auto& last = traj.states.back();
  const auto overlap = ground_state_probability(last, {schedule.h, schedule.J_values.back()});
  p.summary.final_ground_prob = overlap.probability;
  if (overlap.near_degenerate) {
    p.warnings.push_back(std::string(to_string(regime)) + "/" + to_string(mode) +
                         ": final ground state is near-degenerate");
  }
  const auto pps = pseudo_pure(last, PurityFactor(cfg.zeta));
  p.summary.final_delta_D_mixed_zeta = discord_monogamy_score(pps, cfg.discord_search);
  p.summary.final_pps_negativity_zeta = negativity(pps, {0, {1, 2}});
  return p;
}

}  // namespace

std::vector<std::size_t> default_sample_steps(int M) {
  std::vector<std::size_t> s;
  for (int k = 3; k <= M + 1; k += 2) s.push_back(static_cast<std::size_t>(k));
  if (s.empty()) s.push_back(static_cast<std::size_t>(std::max(M, 0) + 1));
  return s;
}

std::vector<std::size_t> ExperimentConfig::resolved_samples() const {
  return sample_steps.empty() ? default_sample_steps(M) : sample_steps;
}

void ExperimentConfig::validate() const {
  if (M < 0) throw ConfigError("M must be >= 0");
  if (!(h_dt > 0.0) || !std::isfinite(h_dt)) throw ConfigError("h_dt must be > 0");
  if (!(J_final_dt >= 0.0) || !std::isfinite(J_final_dt)) {
    throw ConfigError("J_final_dt is a magnitude and must be >= 0");
  }
  if (shape.kind == ScheduleShape::Kind::sinh && !(shape.kappa > 0.0)) {
    throw ConfigError("kappa must be > 0");
  }
  (void)PurityFactor(zeta);
  (void)PurityFactor(zeta_test);
  const auto s = resolved_samples();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > static_cast<std::size_t>(M) + 1) {
      throw ConfigError("sample step " + std::to_string(s[i]) + " outside [1, " + std::to_string(M + 1) + "]");
    }
    if (i > 0 && s[i] <= s[i - 1]) throw ConfigError("sample steps must be strictly ascending");
  }
  if (regimes.empty()) throw ConfigError("no regime selected");
  if (modes.empty()) throw ConfigError("no evolution mode selected");
}

CorrelationRecord analyze_state(const StateVector& psi, const Schedule& schedule, std::size_t step,
                                EvolutionMode mode, PurityFactor zeta_test,
                                const DiscordSearch& search) {
  if (step < 1 || step > schedule.n_steps()) throw UsageError("analyze_state: step out of range");
  const int m = static_cast<int>(step) - 1;
  const double J = schedule.J_values[m];

  CorrelationRecord r;
  r.regime = schedule.direction;
  r.mode = mode;
  r.step = step;
  r.J_over_h = J / schedule.h;

  const auto rho = DensityMatrix::from_state(psi);
  const auto neg = negativity_monogamy(rho);
  r.N1_23 = neg.whole;
  r.N12 = neg.q12;
  r.N13 = neg.q13;
  r.delta_N2 = neg.score;

  const auto dis = discord_monogamy(rho, search);
  r.D1_23 = dis.whole;
  r.D12 = dis.q12;
  r.D13 = dis.q13;
  r.delta_D = dis.score;

  r.delta_D_mixed = discord_monogamy_score(pseudo_pure(psi, zeta_test), search);

  const auto g = ground_state({schedule.h, J});
  r.fidelity_vs_ground = fidelity(DensityMatrix::from_state(g.state), rho);
  r.ground_prob = std::norm(g.state.inner(psi));
  try {
    r.epsilon = spectrum_point({schedule.h, J}, schedule.rate(m)).epsilon;
  } catch (const DegenerateGapError&) {
    r.epsilon = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

RunResult run(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::future<Pipeline>> jobs;
  std::vector<Regime> regimes = config.regimes;
  std::vector<EvolutionMode> modes = config.modes;
  std::sort(regimes.begin(), regimes.end());
  regimes.erase(std::unique(regimes.begin(), regimes.end()), regimes.end());
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

  for (auto r : regimes)
    for (auto m : modes)
      jobs.push_back(std::async(std::launch::async, run_pipeline, std::cref(config), r, m));

  // futures are collected in (regime, mode) order, so the merge is deterministic
  RunResult out;
  out.zeta = config.zeta;
  out.zeta_test = config.zeta_test;
  for (auto& j : jobs) {
    auto p = j.get();
    out.records.insert(out.records.end(), p.records.begin(), p.records.end());
    out.pipelines.push_back(p.summary);
    out.warnings.insert(out.warnings.end(), p.warnings.begin(), p.warnings.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

std::string to_csv(const std::vector<CorrelationRecord>& records) {
  std::string s = header_line() + "\n";
  for (const auto& r : records) {
    s += to_string(r.regime);
    s += ',';
    s += to_string(r.mode);
    s += ',' + std::to_string(r.step);
    for (double v : {r.J_over_h, r.N12, r.N13, r.N1_23, r.delta_N2, r.D12, r.D13, r.D1_23, r.delta_D,
                     r.delta_D_mixed, r.fidelity_vs_ground, r.ground_prob, r.epsilon}) {
      s += ',' + fmt17(v);
    }
    s += '\n';
  }
  return s;
}

void write_csv(const std::vector<CorrelationRecord>& records, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << to_csv(records);
  if (!f) throw Error("write failed for '" + path.string() + "'");
}

std::vector<CorrelationRecord> parse_csv(std::string_view text) {
  std::vector<CorrelationRecord> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != header_line()) throw ValidationError("csv: header does not match the record schema");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != kCsvColumns.size()) {
      throw ValidationError("csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(kCsvColumns.size()) + " fields");
    }
    CorrelationRecord r;
    r.regime = parse_regime(f[0]);
    r.mode = parse_mode(f[1]);
    {
      std::size_t step = 0;
      const auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), step);
      if (ec != std::errc() || ptr != f[2].data() + f[2].size()) {
        throw ValidationError("csv line " + std::to_string(line_no) + ": bad step");
      }
      r.step = step;
    }
    double* fields[] = {&r.J_over_h, &r.N12,     &r.N13,           &r.N1_23,
                        &r.delta_N2, &r.D12,     &r.D13,           &r.D1_23,
                        &r.delta_D,  &r.delta_D_mixed, &r.fidelity_vs_ground, &r.ground_prob,
                        &r.epsilon};
    for (std::size_t i = 0; i < std::size(fields); ++i) *fields[i] = parse_double(f[3 + i], line_no);
    out.push_back(r);
  }
  if (!header_seen) throw ValidationError("csv: missing header");
  return out;
}

std::vector<CorrelationRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

// ---------------------------------------------------------------------------
// Summary

std::string to_summary(const RunResult& result) {
  std::ostringstream s;
  s << "# trising run summary\n";
  s << "zeta = " << fmt17(result.zeta) << "\n";
  s << "zeta_test = " << fmt17(result.zeta_test) << "\n";
  s << "records = " << result.records.size() << "\n";
  for (const auto& p : result.pipelines) {
    s << "\n[" << to_string(p.regime) << "." << to_string(p.mode) << "]\n";
    const CorrelationRecord* last = nullptr;
    double min_prob = std::numeric_limits<double>::infinity();
    for (const auto& r : result.records) {
      if (r.regime != p.regime || r.mode != p.mode) continue;
      last = &r;
      min_prob = std::min(min_prob, r.ground_prob);
    }
    if (last) {
      s << "final_step = " << last->step << "\n";
      s << "final_J_over_h = " << fmt17(last->J_over_h) << "\n";
      s << "final_delta_N2 = " << fmt17(last->delta_N2) << "\n";
      s << "final_delta_D = " << fmt17(last->delta_D) << "\n";
      s << "final_delta_D_mixed_zeta_test = " << fmt17(last->delta_D_mixed) << "\n";
      s << "final_N12 = " << fmt17(last->N12) << "\n";
      s << "final_D12 = " << fmt17(last->D12) << "\n";
      s << "min_sampled_ground_prob = " << fmt17(min_prob) << "\n";
    }
    s << "final_ground_prob = " << fmt17(p.final_ground_prob) << "\n";
    s << "final_delta_D_mixed_zeta = " << fmt17(p.final_delta_D_mixed_zeta) << "\n";
    s << "final_pps_negativity_zeta = " << fmt17(p.final_pps_negativity_zeta) << "\n";
    s << "epsilon_max = " << fmt17(p.epsilon_max) << "\n";
  }
  if (!result.warnings.empty()) {
    s << "\n[warnings]\n";
    for (std::size_t i = 0; i < result.warnings.size(); ++i) {
      s << "warning_" << i << " = " << result.warnings[i] << "\n";
    }
  }
  return s.str();
}

void write_summary(const RunResult& result, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << to_summary(result);
  if (!f) throw Error("write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Sweep

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter what,
                            const std::vector<double>& values) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    ExperimentConfig cfg = base;
    if (what == SweepParameter::kappa) {
      cfg.shape = ScheduleShape::sinh(v);
    } else {
      if (v < 0 || v != std::floor(v)) throw ConfigError("sweep over M needs non-negative integers");
      cfg.M = static_cast<int>(v);
    }
    for (auto regime : cfg.regimes) {
      const auto s = make_schedule(cfg.M, cfg.h_dt, regime_sign(regime) * cfg.J_final_dt, cfg.shape);
      const ModelParams final_p{s.h, s.J_values.back()};
      SweepRow row{v, regime, epsilon_max(s), 0.0, 0.0};
      row.ground_prob_exact =
          ground_state_probability(evolve(s, EvolutionMode::exact).states.back(), final_p).probability;
      row.ground_prob_trotter2 =
          ground_state_probability(evolve(s, EvolutionMode::trotter2).states.back(), final_p).probability;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_table(const std::vector<SweepRow>& rows, SweepParameter what) {
  std::ostringstream s;
  s << (what == SweepParameter::kappa ? "kappa" : "M")
    << ",regime,epsilon_max,ground_prob_exact,ground_prob_trotter2\n";
  for (const auto& r : rows) {
    s << fmt17(r.value) << ',' << to_string(r.regime) << ',' << fmt17(r.epsilon_max) << ','
      << fmt17(r.ground_prob_exact) << ',' << fmt17(r.ground_prob_trotter2) << '\n';
  }
  return s.str();
}

Regime parse_regime(std::string_view s) {
  if (s == "frustrated") return Regime::frustrated;
  if (s == "nonfrustrated") return Regime::nonfrustrated;
  throw ValidationError("unknown regime '" + std::string(s) + "'");
}

EvolutionMode parse_mode(std::string_view s) {
  if (s == "exact") return EvolutionMode::exact;
  if (s == "trotter2") return EvolutionMode::trotter2;
  throw ValidationError("unknown mode '" + std::string(s) + "'");
}

}  // namespace trising
