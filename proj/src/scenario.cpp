#include "wwv/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace wwv {

using json = nlohmann::ordered_json;

std::vector<double> Range::values() const {
  std::vector<double> out;
  if (count <= 0) return out;
  if (count == 1) return {start};
  for (int i = 0; i < count; ++i) out.push_back(start + (stop - start) * i / (count - 1));
  return out;
}

VortexSet ScenarioConfig::vortex_set() const { return pair ? pair->to_set() : vortices; }

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::config, what); }

void check_range(const Range& r, const char* what) {
  if (r.count < 0) bad(std::string(what) + ".count must be >= 0");
  if (!std::isfinite(r.start) || !std::isfinite(r.stop)) bad(std::string(what) + " bounds must be finite");
}

}  // namespace

void ScenarioConfig::validate() const {
  if (n < 16 || n % 2 != 0) bad("grid.n must be even and >= 16");
  if (!(half_period > 0.0) || !std::isfinite(half_period)) bad("grid.half_period must be positive");
  if (!(bump_width > 0.0)) bad("initial.width must be positive");
  if (!std::isfinite(elevation_amplitude) || !std::isfinite(velocity_amplitude) || !std::isfinite(wave_amplitude)) {
    bad("initial amplitudes must be finite");
  }
  if (wave_mode < 0 || wave_mode >= n / 2) bad("initial.wave_mode must lie in [0, n/2)");
  if (!(epsilon > 0.0)) bad("epsilon must be positive");
  if (output_every < 1) bad("output.every must be >= 1");
  if (snapshot_every < 0) bad("output.snapshot_every must be >= 0");
  if (diagnostics.s < 0 || diagnostics.s > 6) bad("output.s must lie in [0, 6]");
  if (!(diagnostics.fd_step > 0.0)) bad("output.fd_step must be positive");
  if (pair && !vortices.empty()) bad("give either vortices.pair or vortices.points, not both");
  try {
    evolution.validate();
    if (pair) pair->validate();
    vortices.validate();
  } catch (const Error& e) {
    bad(e.what());
  }
  if (sweep) {
    if (sweep->kind != "single" && sweep->kind != "pair") bad("sweep.kind must be 'single' or 'pair'");
    if (sweep->ratio.has_value() == sweep->lambda.has_value()) bad("sweep needs exactly one of ratio or lambda");
    check_range(sweep->y, "sweep.y");
    for (double y : sweep->y.values()) {
      if (!(y < 0.0)) bad("sweep.y values must be negative");
    }
    if (sweep->ratio) check_range(*sweep->ratio, "sweep.ratio");
    if (sweep->lambda) check_range(*sweep->lambda, "sweep.lambda");
    if (sweep->x) {
      check_range(*sweep->x, "sweep.x");
      for (double x : sweep->x->values()) {
        if (!(x > 0.0)) bad("sweep.x values must be positive");
      }
    }
    if (sweep->ratio) {
      for (double r : sweep->ratio->values()) {
        if (!(r >= 0.0)) bad("sweep.ratio values must be non-negative");
      }
    }
  }
}

namespace {

json range_json(const Range& r) { return json{{"start", r.start}, {"stop", r.stop}, {"count", r.count}}; }

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) bad("unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Range range_from(const json& j, const std::string& where) {
  only_keys(j, {"start", "stop", "count"}, where);
  Range r;
  read(j, "start", r.start);
  r.stop = r.start;
  read(j, "stop", r.stop);
  read(j, "count", r.count);
  return r;
}

json vortex_json(cplx z, double lambda) { return json{{"x", z.real()}, {"y", z.imag()}, {"lambda", lambda}}; }

}  // namespace

std::string scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["schema"] = scenario_schema;
  j["name"] = c.name;
  j["grid"] = {{"n", c.n}, {"half_period", c.half_period}};
  j["initial"] = {{"elevation_amplitude", c.elevation_amplitude},
                  {"velocity_amplitude", c.velocity_amplitude},
                  {"width", c.bump_width},
                  {"wave_amplitude", c.wave_amplitude},
                  {"wave_mode", c.wave_mode}};
  j["epsilon"] = c.epsilon;
  json v = json::object();
  if (c.pair) v["pair"] = {{"x", c.pair->x}, {"y", c.pair->y}, {"lambda", c.pair->lambda}};
  if (!c.vortices.empty()) {
    json pts = json::array();
    for (std::size_t k = 0; k < c.vortices.size(); ++k) {
      pts.push_back(vortex_json(c.vortices.positions[k], c.vortices.strengths[k]));
    }
    v["points"] = pts;
  }
  j["vortices"] = v;
  const EvolutionConfig& e = c.evolution;
  j["evolution"] = {{"dt", e.dt},
                    {"t_end", e.t_end},
                    {"a_tolerance", e.a_tolerance},
                    {"a_max_iterations", e.a_max_iterations},
                    {"projection_cadence", e.projection_cadence},
                    {"enforce_symmetry", e.enforce_symmetry},
                    {"taylor_floor", e.taylor_floor},
                    {"chord_arc_floor", e.chord_arc_floor},
                    {"interface_floor", e.interface_floor},
                    {"collision_floor", e.collision_floor},
                    {"dealias", e.dealias}};
  j["output"] = {{"every", c.output_every},
                 {"snapshot_every", c.snapshot_every},
                 {"s", c.diagnostics.s},
                 {"flattened_energy", c.diagnostics.flattened_energy},
                 {"residuals", c.diagnostics.residuals},
                 {"at_monitor", c.diagnostics.at_monitor},
                 {"fd_step", c.diagnostics.fd_step}};
  j["seed"] = c.seed;
  if (c.sweep) {
    json s;
    s["kind"] = c.sweep->kind;
    if (c.sweep->ratio) s["ratio"] = range_json(*c.sweep->ratio);
    if (c.sweep->lambda) s["lambda"] = range_json(*c.sweep->lambda);
    s["y"] = range_json(c.sweep->y);
    if (c.sweep->x) s["x"] = range_json(*c.sweep->x);
    j["sweep"] = s;
  }
  return j.dump(2);
}

ScenarioConfig scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  ScenarioConfig c;
  try {
    only_keys(j, {"schema", "name", "grid", "initial", "epsilon", "vortices", "evolution", "output", "seed", "sweep"},
              "config");
    if (!j.contains("schema")) bad(std::string("config needs \"schema\": \"") + scenario_schema + "\"");
    if (j.at("schema") != scenario_schema) bad("unsupported config schema " + j.at("schema").dump());
    read(j, "name", c.name);
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      only_keys(g, {"n", "half_period"}, "grid");
      read(g, "n", c.n);
      read(g, "half_period", c.half_period);
    }
    if (j.contains("initial")) {
      const json& i = j.at("initial");
      only_keys(i, {"elevation_amplitude", "velocity_amplitude", "width", "wave_amplitude", "wave_mode"}, "initial");
      read(i, "elevation_amplitude", c.elevation_amplitude);
      read(i, "velocity_amplitude", c.velocity_amplitude);
      read(i, "width", c.bump_width);
      read(i, "wave_amplitude", c.wave_amplitude);
      read(i, "wave_mode", c.wave_mode);
    }
    read(j, "epsilon", c.epsilon);
    if (j.contains("vortices")) {
      const json& v = j.at("vortices");
      only_keys(v, {"pair", "points"}, "vortices");
      if (v.contains("pair")) {
        const json& p = v.at("pair");
        only_keys(p, {"x", "y", "lambda"}, "vortices.pair");
        SymmetricPair sp;
        sp.x = p.at("x").get<double>();
        sp.y = p.at("y").get<double>();
        sp.lambda = p.at("lambda").get<double>();
        c.pair = sp;
      }
      if (v.contains("points")) {
        for (const json& p : v.at("points")) {
          only_keys(p, {"x", "y", "lambda"}, "vortices.points[]");
          c.vortices.positions.emplace_back(p.at("x").get<double>(), p.at("y").get<double>());
          c.vortices.strengths.push_back(p.at("lambda").get<double>());
        }
      }
    }
    if (j.contains("evolution")) {
      const json& e = j.at("evolution");
      only_keys(e,
                {"dt", "t_end", "a_tolerance", "a_max_iterations", "projection_cadence", "enforce_symmetry",
                 "taylor_floor", "chord_arc_floor", "interface_floor", "collision_floor", "dealias"},
                "evolution");
      EvolutionConfig& ev = c.evolution;
      read(e, "dt", ev.dt);
      read(e, "t_end", ev.t_end);
      read(e, "a_tolerance", ev.a_tolerance);
      read(e, "a_max_iterations", ev.a_max_iterations);
      read(e, "projection_cadence", ev.projection_cadence);
      read(e, "enforce_symmetry", ev.enforce_symmetry);
      read(e, "taylor_floor", ev.taylor_floor);
      read(e, "chord_arc_floor", ev.chord_arc_floor);
      read(e, "interface_floor", ev.interface_floor);
      read(e, "collision_floor", ev.collision_floor);
      read(e, "dealias", ev.dealias);
    }
    if (j.contains("output")) {
      const json& o = j.at("output");
      only_keys(o, {"every", "snapshot_every", "s", "flattened_energy", "residuals", "at_monitor", "fd_step"},
                "output");
      read(o, "every", c.output_every);
      read(o, "snapshot_every", c.snapshot_every);
      read(o, "s", c.diagnostics.s);
      read(o, "flattened_energy", c.diagnostics.flattened_energy);
      read(o, "residuals", c.diagnostics.residuals);
      read(o, "at_monitor", c.diagnostics.at_monitor);
      read(o, "fd_step", c.diagnostics.fd_step);
    }
    read(j, "seed", c.seed);
    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      only_keys(s, {"kind", "ratio", "lambda", "y", "x"}, "sweep");
      SweepSpec sw;
      read(s, "kind", sw.kind);
      if (s.contains("ratio")) sw.ratio = range_from(s.at("ratio"), "sweep.ratio");
      if (s.contains("lambda")) sw.lambda = range_from(s.at("lambda"), "sweep.lambda");
      if (s.contains("y")) sw.y = range_from(s.at("y"), "sweep.y");
      if (s.contains("x")) sw.x = range_from(s.at("x"), "sweep.x");
      c.sweep = sw;
    }
  } catch (const json::exception& e) {
    bad(std::string("config field has the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

std::vector<std::string> preset_names() {
  return {"rest", "small-wave", "pair-longtime", "taylor-fail", "taylor-single-sweep", "taylor-pair-sweep"};
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  if (name == "rest") {
    c.n = 128;
    c.evolution.dt = 0.1;
    c.evolution.t_end = 1.0;
  } else if (name == "small-wave") {
    c.n = 256;
    c.elevation_amplitude = 1e-3;
    c.velocity_amplitude = 1e-3;
    c.evolution.dt = 0.05;
    c.evolution.t_end = 5.0;
    c.output_every = 10;
  } else if (name == "pair-longtime") {
    // |lambda| / x(0) = 1, depth 1; monitors use epsilon = 1e-3
    c.n = 512;
    c.pair = SymmetricPair{0.05, -1.0, -0.05};
    c.evolution.dt = 0.125;
    c.evolution.t_end = 50.0;
    c.output_every = 8;
    c.snapshot_every = 80;
  } else if (name == "taylor-fail") {
    // lambda^2 / |y|^3 = 10 pi^2
    c.n = 256;
    c.vortices.positions = {cplx(0.0, -1.0)};
    c.vortices.strengths = {pi * std::sqrt(10.0)};
    c.evolution.dt = 0.05;
    c.evolution.t_end = 1.0;
  } else if (name == "taylor-single-sweep") {
    SweepSpec s;
    s.kind = "single";
    s.ratio = Range{8.0, 30.0, 100};
    c.sweep = s;
  } else if (name == "taylor-pair-sweep") {
    SweepSpec s;
    s.kind = "pair";
    s.ratio = Range{100.0, 200.0, 100};
    c.sweep = s;
  } else {
    throw Error(ErrorCode::config, "unknown preset '" + name + "'");
  }
  c.validate();
  return c;
}

RField initial_elevation(const PeriodicGrid& grid, const ScenarioConfig& cfg) {
  const RField& a = grid.points();
  RField out(grid.size());
  const double k = pi * cfg.wave_mode / grid.half_period();
  for (int i = 0; i < grid.size(); ++i) {
    const double r = a[i] / cfg.bump_width;
    out[i] = cfg.elevation_amplitude * std::exp(-r * r) + cfg.wave_amplitude * std::cos(k * a[i]);
  }
  return out;
}

RField initial_velocity_seed(const PeriodicGrid& grid, const ScenarioConfig& cfg) {
  const RField& a = grid.points();
  RField out(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double r = a[i] / cfg.bump_width;
    out[i] = cfg.velocity_amplitude * r * std::exp(-r * r);
  }
  // the endpoint -L has no mirror partner inside the window
  out[0] = 0.0;
  return out;
}

SurfaceState initial_state(const PeriodicGrid& grid, const ScenarioConfig& cfg) {
  InitialOptions opt;
  opt.check_parity = cfg.vortices.empty();
  return build_initial_data(grid, initial_elevation(grid, cfg), initial_velocity_seed(grid, cfg), cfg.vortex_set(),
                            opt);
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string text = scenario_to_json(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wwv
