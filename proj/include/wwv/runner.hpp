#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wwv/scenario.hpp"

namespace wwv {

inline constexpr const char* diagnostics_schema = "# wwv-diagnostics v1";
inline constexpr const char* snapshot_schema = "wwv-snapshot v1";
inline constexpr const char* checkpoint_schema = "wwv-checkpoint v1";
inline constexpr const char* status_schema = "wwv-status v1";
inline constexpr const char* sweep_schema = "# wwv-taylor-sweep v1";

struct RunOptions {
  // empty: keep everything in memory
  std::filesystem::path out_dir;
  std::optional<double> until;
  bool verbose = false;
};

struct RunResult {
  HaltStatus status = HaltStatus::none;
  std::string message;
  SurfaceState final_state;
  std::vector<DiagnosticsRecord> records;
  std::int64_t steps = 0;
  // over every accepted state, including the initial one
  double min_energy = 0.0;
  double max_symmetry_residual = 0.0;
  double x0 = 0.0;
};

RunResult run_simulation(const ScenarioConfig& cfg, const RunOptions& opt);
// Continue from a checkpointed state with its stored configuration.
RunResult resume_simulation(const std::filesystem::path& checkpoint, const RunOptions& opt);

struct Checkpoint {
  ScenarioConfig config;
  SurfaceState state;
  double x0 = 0.0;
};

void write_checkpoint(const std::filesystem::path& path, const ScenarioConfig& cfg, const SurfaceState& state,
                      double x0);
Checkpoint read_checkpoint(const std::filesystem::path& path);

std::vector<SweepRow> taylor_sweep(const SweepSpec& spec);
std::vector<SweepRow> run_taylor_sweep(const ScenarioConfig& cfg, const std::filesystem::path& csv);

// Column order of the diagnostics stream.
std::string diagnostics_header();
std::string diagnostics_row(const DiagnosticsRecord& r);

// Screening of the initial state: periodic A1 on a flat surface, A |zeta_alpha| otherwise.
HaltCheck screen_initial(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg);

}  // namespace wwv
