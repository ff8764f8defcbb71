#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wwv/runner.hpp"

using namespace wwv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wwv_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioConfig short_wave() {
  ScenarioConfig c;
  c.name = "short";
  c.n = 128;
  c.elevation_amplitude = 1e-3;
  c.velocity_amplitude = 1e-3;
  c.evolution.dt = 0.1;
  c.evolution.t_end = 1.0;
  c.output_every = 2;
  c.diagnostics.flattened_energy = false;
  return c;
}

}  // namespace

TEST_CASE("presets validate and round trip through JSON") {
  for (const std::string& name : preset_names()) {
    const ScenarioConfig c = preset(name);
    CHECK_NOTHROW(c.validate());
    const std::string text = scenario_to_json(c);
    CHECK(text.find("wwv-scenario v1") != std::string::npos);
    const ScenarioConfig back = scenario_from_json(text);
    CHECK(scenario_to_json(back) == text);
    CHECK(config_hash(back) == config_hash(c));
    CHECK(back.half_period == c.half_period);
  }
  CHECK_THROWS_AS(preset("nope"), Error);
  CHECK(config_hash(preset("rest")) != config_hash(preset("small-wave")));
}

TEST_CASE("awkward doubles survive the round trip") {
  ScenarioConfig c = short_wave();
  c.evolution.dt = 0.1 + 1e-17;
  c.elevation_amplitude = std::nextafter(1e-3, 1.0);
  c.pair = SymmetricPair{1.0 / 3.0, -std::sqrt(2.0), -0.05};
  const ScenarioConfig back = scenario_from_json(scenario_to_json(c));
  CHECK(back.evolution.dt == c.evolution.dt);
  CHECK(back.elevation_amplitude == c.elevation_amplitude);
  REQUIRE(back.pair);
  CHECK(back.pair->x == c.pair->x);
  CHECK(back.pair->y == c.pair->y);
}

TEST_CASE("bad configurations are rejected") {
  using json = nlohmann::ordered_json;
  json j = json::parse(scenario_to_json(preset("rest")));
  auto rejects = [](const json& v) {
    try {
      (void)scenario_from_json(v.dump());
    } catch (const Error& e) {
      return e.code() == ErrorCode::config;
    }
    return false;
  };
  json a = j;
  a["grid"]["nn"] = 3;
  CHECK(rejects(a));
  json b = j;
  b["schema"] = "wwv-scenario v0";
  CHECK(rejects(b));
  json c = j;
  c["grid"]["n"] = 7;
  CHECK(rejects(c));
  json d = j;
  d["evolution"]["dt"] = -0.1;
  CHECK(rejects(d));
  json e = j;
  e["vortices"] = {{"pair", {{"x", 0.5}, {"y", 1.0}, {"lambda", -0.1}}}};
  CHECK(rejects(e));
  CHECK_THROWS_AS(scenario_from_json("{not json"), Error);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), Error);
}

TEST_CASE("ranges") {
  CHECK(Range{0.0, 1.0, 0}.values().empty());
  CHECK(Range{2.0, 5.0, 1}.values() == std::vector<double>{2.0});
  const auto v = Range{8.0, 30.0, 100}.values();
  REQUIRE(v.size() == 100);
  CHECK(v.front() == 8.0);
  CHECK(v.back() == 30.0);
}

TEST_CASE("initial fields have the required parity") {
  ScenarioConfig c = short_wave();
  const PeriodicGrid g(c.n, c.half_period);
  const RField el = initial_elevation(g, c);
  const RField v = initial_velocity_seed(g, c);
  for (int i = 1; i < g.size(); ++i) {
    CHECK(el[i] == doctest::Approx(el[mirror_index(i, g.size())]));
    CHECK(v[i] == doctest::Approx(-v[mirror_index(i, g.size())]));
  }
}

TEST_CASE("rest preset writes all-zero diagnostics") {
  const fs::path dir = scratch_dir("rest");
  const RunResult r = run_simulation(preset("rest"), RunOptions{dir, {}, false});
  CHECK(r.status == HaltStatus::none);
  std::ifstream in(dir / "diagnostics.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == diagnostics_schema);
  std::getline(in, line);
  CHECK(line == diagnostics_header());
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 12);
    CHECK(std::abs(vals[1]) < 1e-20);   // E
    CHECK(std::abs(vals[2]) < 1e-20);   // E_s
    CHECK(std::abs(vals[10]) < 1e-12);  // G_c
  }
  CHECK(rows == 11);
  const auto status = nlohmann::json::parse(slurp(dir / "status.json"));
  CHECK(status["schema"] == status_schema);
  CHECK(status["status"] == "ok");
  CHECK(fs::exists(dir / "checkpoint.json"));
}

TEST_CASE("taylor-fail halts at the initial screening") {
  const fs::path dir = scratch_dir("taylor_fail");
  const RunResult r = run_simulation(preset("taylor-fail"), RunOptions{dir, {}, false});
  CHECK(r.status == HaltStatus::taylor_sign_failed);
  CHECK(r.steps == 0);
  CHECK(r.final_state.t == 0.0);
  const auto status = nlohmann::json::parse(slurp(dir / "status.json"));
  CHECK(status["status"] == "taylor_sign_failed");
}

TEST_CASE("identical configurations give identical bytes") {
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  run_simulation(short_wave(), RunOptions{a, {}, false});
  run_simulation(short_wave(), RunOptions{b, {}, false});
  CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
  CHECK(slurp(a / "checkpoint.json") == slurp(b / "checkpoint.json"));
}

TEST_CASE("checkpoints restore the state exactly and resume matches a straight run") {
  ScenarioConfig c = short_wave();
  c.pair = SymmetricPair{0.5, -3.0, -0.1};
  const fs::path half = scratch_dir("half"), rest = scratch_dir("rest_half"), full = scratch_dir("full");
  const RunResult r1 = run_simulation(c, RunOptions{half, 0.5, false});
  const Checkpoint cp = read_checkpoint(half / "checkpoint.json");
  CHECK(cp.state.t == r1.final_state.t);
  CHECK(cp.state.step == r1.final_state.step);
  CHECK(cp.state.zeta == r1.final_state.zeta);
  CHECK(cp.state.u == r1.final_state.u);
  CHECK(cp.state.vortices.positions == r1.final_state.vortices.positions);
  CHECK(scenario_to_json(cp.config) == scenario_to_json(c));

  const RunResult resumed = resume_simulation(half / "checkpoint.json", RunOptions{rest, {}, false});
  const RunResult straight = run_simulation(c, RunOptions{full, {}, false});
  REQUIRE(resumed.status == HaltStatus::none);
  CHECK(resumed.final_state.step == straight.final_state.step);
  CHECK((resumed.final_state.zeta - straight.final_state.zeta).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((resumed.final_state.u - straight.final_state.u).cwiseAbs().maxCoeff() <= 1e-12);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(std::abs(resumed.final_state.vortices.positions[j] - straight.final_state.vortices.positions[j]) <= 1e-12);
  }
  CHECK_THROWS_AS(read_checkpoint(half / "missing.json"), Error);
}

TEST_CASE("sweep CSV") {
  const fs::path dir = scratch_dir("sweep");
  ScenarioConfig c = preset("taylor-single-sweep");
  const auto rows = run_taylor_sweep(c, dir / "sweep.csv");
  CHECK(rows.size() == 100);
  const std::string text = slurp(dir / "sweep.csv");
  CHECK(text.rfind(std::string(sweep_schema) + "\nlambda,x,y,ratio,a1,classification\n", 0) == 0);

  c.sweep->ratio = Range{8.0, 30.0, 0};
  CHECK(run_taylor_sweep(c, dir / "empty.csv").empty());
  CHECK(slurp(dir / "empty.csv") == std::string(sweep_schema) + "\nlambda,x,y,ratio,a1,classification\n");
  CHECK_THROWS_AS(run_taylor_sweep(preset("rest"), dir / "none.csv"), Error);
}
