#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "wwv/wwv.h"

namespace fs = std::filesystem;

TEST_CASE("presets and JSON") {
  REQUIRE(wwv_preset_count() >= 6);
  CHECK(wwv_preset_name(wwv_preset_count()) == nullptr);
  wwv_scenario* s = nullptr;
  REQUIRE(wwv_scenario_preset("pair-longtime", &s) == WWV_OK);
  const std::string text = wwv_scenario_json(s);
  CHECK(text.find("\"pair\"") != std::string::npos);
  wwv_scenario* t = nullptr;
  REQUIRE(wwv_scenario_from_json(text.c_str(), &t) == WWV_OK);
  CHECK(std::string(wwv_scenario_json(t)) == text);
  CHECK(wwv_scenario_set_seed(t, 42) == WWV_OK);
  CHECK(std::string(wwv_scenario_json(t)).find("\"seed\": 42") != std::string::npos);
  wwv_scenario_free(s);
  wwv_scenario_free(t);

  wwv_scenario* bad = nullptr;
  CHECK(wwv_scenario_preset("no-such-preset", &bad) == WWV_ERR_CONFIG);
  CHECK(bad == nullptr);
  CHECK(std::strlen(wwv_last_error()) > 0);
  CHECK(wwv_scenario_from_json("{}", &bad) == WWV_ERR_CONFIG);
  CHECK(wwv_scenario_from_file("/nonexistent.json", &bad) != WWV_OK);
  CHECK(wwv_scenario_preset(nullptr, &bad) == WWV_ERR_INVALID_ARGUMENT);
}

TEST_CASE("closed forms") {
  double v = 0.0;
  int cls = -1;
  REQUIRE(wwv_a1_single_vortex(1.0, -1.0, &v, &cls) == WWV_OK);
  CHECK(v == doctest::Approx(1.0 - 3.0 / (8.0 * M_PI * M_PI)));
  CHECK(cls == 0);
  REQUIRE(wwv_a1_single_vortex(M_PI * std::sqrt(10.0), -1.0, &v, &cls) == WWV_OK);
  CHECK(v == doctest::Approx(-2.75));
  CHECK(cls == 2);
  REQUIRE(wwv_a1_pair(4.0 * M_PI, 1.0, -1.0, &v) == WWV_OK);
  CHECK(std::abs(v) < 1e-14);
  CHECK(wwv_a1_pair(1.0, 1.0, 1.0, &v) == WWV_ERR_INVALID_ARGUMENT);
}

TEST_CASE("simulate and resume") {
  const fs::path dir = fs::temp_directory_path() / "wwv_capi_rest";
  fs::remove_all(dir);
  wwv_scenario* s = nullptr;
  REQUIRE(wwv_scenario_preset("rest", &s) == WWV_OK);
  wwv_run_summary sum;
  REQUIRE(wwv_simulate(s, dir.c_str(), 0.5, &sum) == WWV_OK);
  CHECK(std::string(sum.halt) == "ok");
  CHECK(sum.t_final == doctest::Approx(0.5));
  CHECK(fs::exists(dir / "diagnostics.csv"));
  const fs::path more = dir / "more";
  REQUIRE(wwv_resume((dir / "checkpoint.json").c_str(), more.c_str(), -1.0, &sum) == WWV_OK);
  CHECK(sum.t_final == doctest::Approx(1.0));
  CHECK(wwv_resume((dir / "nope.json").c_str(), more.c_str(), -1.0, &sum) == WWV_ERR_IO);
  wwv_scenario_free(s);

  REQUIRE(wwv_scenario_preset("taylor-fail", &s) == WWV_OK);
  CHECK(wwv_simulate(s, nullptr, -1.0, &sum) == WWV_HALTED);
  CHECK(std::string(sum.halt) == "taylor_sign_failed");
  CHECK(sum.steps == 0);
  wwv_scenario_free(s);
}

TEST_CASE("taylor sweep") {
  const fs::path csv = fs::temp_directory_path() / "wwv_capi_sweep" / "s.csv";
  wwv_scenario* s = nullptr;
  REQUIRE(wwv_scenario_preset("taylor-pair-sweep", &s) == WWV_OK);
  size_t rows = 0;
  REQUIRE(wwv_sweep_taylor(s, csv.c_str(), &rows) == WWV_OK);
  CHECK(rows == 100);
  CHECK(fs::exists(csv));
  wwv_scenario_free(s);
  REQUIRE(wwv_scenario_preset("rest", &s) == WWV_OK);
  CHECK(wwv_sweep_taylor(s, csv.c_str(), &rows) == WWV_ERR_CONFIG);
  wwv_scenario_free(s);
}

namespace {
void collect(const wwv_criterion* c, void* user) {
  static_cast<std::vector<std::string>*>(user)->push_back(std::string(c->pass ? "PASS " : "FAIL ") + c->key);
}
}  // namespace

TEST_CASE("verify selectors") {
  std::vector<std::string> seen;
  int failed = -1;
  REQUIRE(wwv_verify("quadrature", 1, collect, &seen, &failed) == WWV_OK);
  CHECK(failed == 0);
  CHECK(seen == std::vector<std::string>{"PASS residue", "PASS projection", "PASS taylor-single", "PASS taylor-pair"});
  seen.clear();
  REQUIRE(wwv_verify("5", 1, collect, &seen, &failed) == WWV_OK);
  CHECK(seen == std::vector<std::string>{"PASS irrotational"});
  CHECK(wwv_verify("bogus", 1, nullptr, nullptr, &failed) == WWV_ERR_CONFIG);
}

TEST_CASE("stepping session") {
  wwv_scenario* s = nullptr;
  REQUIRE(wwv_scenario_preset("small-wave", &s) == WWV_OK);
  wwv_session* sess = nullptr;
  REQUIRE(wwv_session_create(s, &sess) == WWV_OK);
  const size_t n = wwv_session_size(sess);
  CHECK(n == 256);
  CHECK(wwv_session_vortex_count(sess) == 0);
  double e0 = 0.0, margin = 0.0, sym = 0.0;
  REQUIRE(wwv_session_diagnostics(sess, &e0, &margin, &sym) == WWV_OK);
  CHECK(e0 > 0.0);
  CHECK(margin > 0.0);
  CHECK(sym < 1e-13);
  REQUIRE(wwv_session_step(sess, 4) == WWV_OK);
  CHECK(wwv_session_time(sess) == doctest::Approx(0.2));
  std::vector<double> zeta(2 * n), u(2 * n);
  REQUIRE(wwv_session_surface(sess, zeta.data(), u.data()) == WWV_OK);
  for (double x : zeta) CHECK(std::isfinite(x));
  double e1 = 0.0;
  REQUIRE(wwv_session_diagnostics(sess, &e1, nullptr, nullptr) == WWV_OK);
  CHECK(e1 == doctest::Approx(e0).epsilon(0.05));
  CHECK(wwv_session_step(sess, -1) == WWV_ERR_INVALID_ARGUMENT);
  wwv_session_free(sess);
  wwv_scenario_free(s);
}
