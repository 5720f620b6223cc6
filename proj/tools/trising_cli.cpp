// trising: adiabatic triangular transverse-field Ising simulator.
//
//   trising run    [--regime R] [--mode M] [--steps N] [--shape S] [--kappa K]
//                  [--zeta Z] [--zeta-test Z] [--samples "3,5,...,21"] [--out DIR]
//   trising sweep  --vary {kappa,steps} [--values "1,2,3"] [--out DIR]
//   trising verify
//
// Exit codes: 0 success, 1 invalid usage or configuration, 2 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "trising/errors.hpp"
#include "trising/experiment.hpp"
#include "trising/verify.hpp"

namespace {

using namespace trising;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) throw ConfigError(std::string("empty entry in ") + what + " list");
    try {
      std::size_t used = 0;
      if constexpr (std::is_same_v<T, double>) {
        out.push_back(std::stod(item, &used));
      } else {
        const long long v = std::stoll(item, &used);
        if (v < 0) throw ConfigError(std::string(what) + " entries must be non-negative");
        out.push_back(static_cast<T>(v));
      }
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ConfigError(std::string("cannot parse '") + item + "' in " + what + " list");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct CommonFlags {
  std::string regime = "both";
  std::string mode = "both";
  int steps = kDefaultSteps;
  std::string shape = "sinh";
  double kappa = 3.0;
  double zeta = kNmrPurity;
  double zeta_test = kTestPurity;
  std::string samples;
  std::string out;
};

ExperimentConfig to_config(const CommonFlags& f) {
  ExperimentConfig cfg;
  cfg.M = f.steps;
  cfg.shape = f.shape == "linear" ? ScheduleShape::linear() : ScheduleShape::sinh(f.kappa);
  cfg.zeta = f.zeta;
  cfg.zeta_test = f.zeta_test;
  if (f.regime != "both") cfg.regimes = {parse_regime(f.regime)};
  if (f.mode != "both") cfg.modes = {parse_mode(f.mode)};
  if (!f.samples.empty()) cfg.sample_steps = parse_list<std::size_t>(f.samples, "--samples");
  cfg.output_path = f.out;
  cfg.validate();
  return cfg;
}

std::filesystem::path out_dir(const std::string& out) {
  std::filesystem::path dir = out.empty() ? std::filesystem::path(".") : std::filesystem::path(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

int cmd_run(const CommonFlags& flags) {
  const auto cfg = to_config(flags);
  const auto result = run(cfg);
  const auto dir = out_dir(flags.out);
  write_csv(result.records, dir / "correlations.csv");
  write_summary(result, dir / "summary.txt");
  std::cout << "wrote " << result.records.size() << " records to " << (dir / "correlations.csv").string()
            << "\n";
  for (const auto& p : result.pipelines) {
    std::cout << "  " << to_string(p.regime) << "/" << to_string(p.mode)
              << ": final ground probability " << p.final_ground_prob << ", epsilon_max "
              << p.epsilon_max << "\n";
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

int cmd_sweep(const CommonFlags& flags, const std::string& vary, const std::string& values) {
  auto cfg = to_config(flags);
  const auto what = vary == "kappa" ? SweepParameter::kappa : SweepParameter::steps;
  std::vector<double> v;
  if (values.empty()) {
    v = what == SweepParameter::kappa ? std::vector<double>{1, 2, 3, 4, 5}
                                      : std::vector<double>{10, 20, 40, 80};
  } else {
    v = parse_list<double>(values, "--values");
  }
  const auto table = sweep_table(sweep(cfg, what, v), what);
  std::cout << table;
  if (!flags.out.empty()) {
    const auto path = out_dir(flags.out) / "sweep.csv";
    std::ofstream f(path);
    if (!(f << table)) throw Error("write failed for '" + path.string() + "'");
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--regime", f.regime, "frustrated, nonfrustrated or both")
      ->check(CLI::IsMember({"frustrated", "nonfrustrated", "both"}));
  cmd->add_option("--steps", f.steps, "final step index M (M + 1 step unitaries)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--shape", f.shape, "coupling ramp: linear or sinh")
      ->check(CLI::IsMember({"linear", "sinh"}));
  cmd->add_option("--kappa", f.kappa, "sinh ramp sharpness (> 0)");
  cmd->add_option("--out", f.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic triangular transverse-field Ising simulator with monogamy scores"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "evolve both regimes and write correlations.csv / summary.txt");
  add_common(run_cmd, run_flags);
  run_cmd->add_option("--mode", run_flags.mode, "exact, trotter2 or both")
      ->check(CLI::IsMember({"exact", "trotter2", "both"}));
  run_cmd->add_option("--zeta", run_flags.zeta, "NMR purity factor for reporting");
  run_cmd->add_option("--zeta-test", run_flags.zeta_test, "purity factor for the delta_D_mixed column");
  run_cmd->add_option("--samples", run_flags.samples, "comma-separated 1-indexed sample steps");

  CommonFlags sweep_flags;
  std::string vary = "kappa", values;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate epsilon_max while varying kappa or M");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--vary", vary, "kappa or steps")->check(CLI::IsMember({"kappa", "steps"}));
  sweep_cmd->add_option("--values", values, "comma-separated parameter values");

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in oracle and invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, vary, values);
    if (*verify_cmd) return run_verification(std::cout) ? kExitOk : kExitRuntime;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
