// wwv-sim: command-line front end over the wwv C API.
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wwv/wwv.h"

namespace {

enum Exit { ok = 0, verify_failed = 1, config_error = 2, halted = 3, io_error = 4 };

int exit_for(wwv_status st) {
  switch (st) {
    case WWV_OK: return ok;
    case WWV_ERR_CONFIG:
    case WWV_ERR_INVALID_ARGUMENT: return config_error;
    case WWV_ERR_IO: return io_error;
    default: return halted;
  }
}

int report(wwv_status st) {
  if (st != WWV_OK) std::fprintf(stderr, "wwv-sim: %s\n", wwv_last_error());
  return exit_for(st);
}

struct ScenarioHandle {
  wwv_scenario* ptr = nullptr;
  ~ScenarioHandle() { wwv_scenario_free(ptr); }
};

wwv_status load(const std::string& preset, const std::string& config, ScenarioHandle& out) {
  if (!config.empty()) return wwv_scenario_from_file(config.c_str(), &out.ptr);
  return wwv_scenario_preset(preset.c_str(), &out.ptr);
}

void print_summary(const wwv_run_summary& s) {
  std::printf("status %s at t=%.6g after %lld steps (min E %.3e, max symmetry residual %.2e)\n", s.halt, s.t_final,
              static_cast<long long>(s.steps), s.min_energy, s.max_symmetry_residual);
  if (std::string(s.halt) != "ok") std::printf("%s\n", s.message);
}

void print_criterion(const wwv_criterion* c, void*) {
  std::printf("%-4s %2d %-14s %7.2fs  %s\n", c->pass ? "PASS" : "FAIL", c->id, c->key, c->seconds, c->detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Water waves with point vortices: simulation, Taylor sweeps and verification"};
  app.require_subcommand(1);

  std::string preset = "rest";
  std::string config;
  std::string out_dir;
  std::optional<double> until;
  std::optional<std::uint64_t> seed;

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write diagnostics, snapshots and a checkpoint");
  simulate->add_option("--preset", preset, "Preset scenario name");
  simulate->add_option("--config", config, "Scenario JSON file (overrides --preset)");
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--until", until, "Stop time (defaults to t_end)");
  simulate->add_option("--seed", seed, "Random seed stored with the scenario");

  std::string sweep_preset = "taylor-single-sweep";
  auto* sweep = app.add_subcommand("sweep-taylor", "Classify A1 over a (lambda, x, y) grid");
  sweep->add_option("--preset", sweep_preset, "Sweep preset name");
  sweep->add_option("--config", config, "Scenario JSON file with a sweep section");
  sweep->add_option("--out", out_dir, "Output directory")->required();

  std::string selector = "all";
  auto* verify = app.add_subcommand("verify", "Run acceptance checks and print a PASS/FAIL table");
  verify->add_option("selector", selector, "all, a group name, a criterion key or number");
  verify->add_option("--seed", seed, "Seed for randomized checks");

  std::string checkpoint;
  auto* resume = app.add_subcommand("resume", "Continue a run from its checkpoint");
  resume->add_option("--config", checkpoint, "Checkpoint file written by simulate")->required();
  resume->add_option("--out", out_dir, "Output directory")->required();
  resume->add_option("--until", until, "Stop time (defaults to t_end)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  if (*simulate) {
    ScenarioHandle s;
    if (wwv_status st = load(preset, config, s); st != WWV_OK) return report(st);
    if (seed) wwv_scenario_set_seed(s.ptr, *seed);
    wwv_run_summary sum{};
    const wwv_status st = wwv_simulate(s.ptr, out_dir.c_str(), until.value_or(-1.0), &sum);
    if (st == WWV_OK || st == WWV_HALTED) print_summary(sum);
    return st == WWV_HALTED ? halted : report(st);
  }

  if (*sweep) {
    ScenarioHandle s;
    if (wwv_status st = load(sweep_preset, config, s); st != WWV_OK) return report(st);
    const std::string csv = out_dir + "/taylor_sweep.csv";
    size_t rows = 0;
    if (wwv_status st = wwv_sweep_taylor(s.ptr, csv.c_str(), &rows); st != WWV_OK) return report(st);
    std::printf("%zu rows written to %s\n", rows, csv.c_str());
    return ok;
  }

  if (*verify) {
    int failed = 0;
    const wwv_status st = wwv_verify(selector.c_str(), seed.value_or(20240601), print_criterion, nullptr, &failed);
    if (st != WWV_OK) return report(st);
    std::printf("%s: %d failing\n", failed == 0 ? "PASS" : "FAIL", failed);
    return failed == 0 ? ok : verify_failed;
  }

  wwv_run_summary sum{};
  const wwv_status st = wwv_resume(checkpoint.c_str(), out_dir.c_str(), until.value_or(-1.0), &sum);
  if (st == WWV_OK || st == WWV_HALTED) print_summary(sum);
  return st == WWV_HALTED ? halted : report(st);
}
