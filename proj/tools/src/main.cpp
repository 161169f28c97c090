// platoonsim command line: run, check, version.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "platoonsim/scenario.hpp"
#include "platoonsim/simulation.hpp"
#include "platoonsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

using namespace platoonsim;

/// Loads and validates; prints the error and returns nullopt on failure.
std::optional<scenario::ValidatedScenario> load(const std::string& path, int& code) {
  try {
    return scenario::validate(scenario::load_scenario_file(path));
  } catch (const scenario::ValidationError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    code = kExitInvalid;
  } catch (const scenario::SyntaxError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    code = kExitInvalid;
  } catch (const scenario::SchemaError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    code = kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    code = kExitRuntime;
  }
  return std::nullopt;
}

int cmd_check(const std::string& path) {
  int code = kExitOk;
  auto sc = load(path, code);
  if (!sc) return code;
  const auto& cfg = sc->config;
  const auto prof = sim::shadow_free_profile(*sc);
  std::printf("scenario        %s\n", path.c_str());
  std::printf("vehicles        %zu (node budget %d)\n", cfg.vehicles.size(), cfg.max_nodes);
  std::printf("path length     %.3f m\n", sc->path_length());
  std::printf("steps           %lld x %.6g s = %.6g s\n", static_cast<long long>(sc->steps), cfg.dt_sim,
              cfg.duration);
  std::printf("control period  %lld steps\n", static_cast<long long>(sc->control_every));
  std::printf("channel period  %lld steps\n", static_cast<long long>(sc->channel_every));
  std::printf("buildings       %zu\n", sc->buildings.size());
  if (!cfg.vehicles.empty()) {
    std::size_t below80 = 0;
    std::size_t above70 = 0;
    for (double r : prof.mean_rsrp) {
      below80 += r < -80.0;
      above70 += r > -70.0;
    }
    const double total = static_cast<double>(prof.mean_rsrp.size());
    std::printf("rsrp (no shadow) min %.2f dBm, max %.2f dBm, <-80: %.0f%%, >-70: %.0f%%\n", prof.min, prof.max,
                100.0 * below80 / total, 100.0 * above70 / total);
  }
  return kExitOk;
}

int cmd_run(const std::string& path, const sim::RunOptions& options) {
  int code = kExitOk;
  auto sc = load(path, code);
  if (!sc) return code;
  try {
    sim::Simulation simulation(std::move(*sc), options);
    simulation.run();
    const auto& p = simulation.packets();
    std::printf("done: t=%.6g s, seed %llu, %llu packets sent, %llu received by applications\n",
                simulation.time(), static_cast<unsigned long long>(simulation.seed()),
                static_cast<unsigned long long>(p.sent), static_cast<unsigned long long>(p.app_received));
  } catch (const std::exception& e) {
    std::cerr << "run aborted: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Platoon co-simulation: mobility, CACC/ACC control, 5G channel and link models"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  bool realtime = false;
  std::vector<double> degradation;

  auto* run = app.add_subcommand("run", "run a scenario and write metrics");
  run->add_option("scenario", scenario_path, "scenario file (JSON)")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_flag("--realtime", realtime, "pace the loop to wall-clock time");
  run->add_option("--force-degradation", degradation, "add 400 ms to control packets sent in [T0, T0+DUR]")
      ->expected(2)
      ->type_name("T0 DUR");

  auto* check = app.add_subcommand("check", "validate a scenario and print derived quantities");
  check->add_option("scenario", scenario_path, "scenario file (JSON)")->required();

  auto* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  if (*version) {
    std::printf("platoonsim %s\n", kVersion);
    return kExitOk;
  }
  if (*check) return cmd_check(scenario_path);

  sim::RunOptions options;
  options.seed = seed;
  options.out_dir = out_dir;
  options.realtime = realtime;
  if (!degradation.empty()) {
    if (degradation[1] < 0.0) {
      std::cerr << "--force-degradation: DUR must be >= 0\n";
      return kExitInvalid;
    }
    options.degradation = sim::ForcedDegradation{degradation[0], degradation[1]};
  }
  return cmd_run(scenario_path, options);
}
