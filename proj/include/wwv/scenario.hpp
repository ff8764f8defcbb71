#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wwv/diagnostics.hpp"
#include "wwv/taylor.hpp"

namespace wwv {

inline constexpr const char* scenario_schema = "wwv-scenario v1";

struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> values() const;
};

struct SweepSpec {
  std::string kind = "single";  // single | pair
  // either ratio = lambda^2/|y|^3 or lambda is swept
  std::optional<Range> ratio;
  std::optional<Range> lambda;
  Range y{-1.0, -1.0, 1};
  // pair only: explicit x values, or x = |y|
  std::optional<Range> x;
};

struct ScenarioConfig {
  std::string name = "custom";
  int n = 256;
  double half_period = 16.0 * pi;
  // elevation a exp(-alpha^2/w^2) and odd g = v alpha exp(-alpha^2/w^2)
  double elevation_amplitude = 0.0;
  double velocity_amplitude = 0.0;
  double bump_width = 2.0;
  // standing wave a cos(k alpha) with k = pi m / L
  double wave_amplitude = 0.0;
  int wave_mode = 0;
  double epsilon = 1e-3;
  std::optional<SymmetricPair> pair;
  VortexSet vortices;
  EvolutionConfig evolution;
  int output_every = 1;
  int snapshot_every = 0;
  DiagnosticsOptions diagnostics;
  std::uint64_t seed = 0;
  std::optional<SweepSpec> sweep;

  VortexSet vortex_set() const;
  void validate() const;
};

std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

// Elevation and odd velocity seed sampled on the grid.
RField initial_elevation(const PeriodicGrid& grid, const ScenarioConfig& cfg);
RField initial_velocity_seed(const PeriodicGrid& grid, const ScenarioConfig& cfg);
SurfaceState initial_state(const PeriodicGrid& grid, const ScenarioConfig& cfg);

// 64-bit FNV-1a of the canonical JSON form.
std::string config_hash(const ScenarioConfig& cfg);

}  // namespace wwv
