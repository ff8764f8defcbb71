#include "wwv/wwv.h"

#include <cstring>
#include <new>
#include <string>

#include "wwv/runner.hpp"
#include "wwv/verify.hpp"

struct wwv_scenario {
  wwv::ScenarioConfig config;
  mutable std::string json;
};

struct wwv_session {
  wwv::ScenarioConfig config;
  wwv::PeriodicGrid grid;
  wwv::SurfaceState state;
  double x0 = 0.0;
};

namespace {

thread_local std::string last_error;

wwv_status fail(wwv_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

wwv_status code_of(wwv::ErrorCode c) {
  switch (c) {
    case wwv::ErrorCode::invalid_argument: return WWV_ERR_INVALID_ARGUMENT;
    case wwv::ErrorCode::non_finite: return WWV_ERR_NON_FINITE;
    case wwv::ErrorCode::chord_arc: return WWV_ERR_CHORD_ARC;
    case wwv::ErrorCode::near_boundary: return WWV_ERR_NEAR_BOUNDARY;
    case wwv::ErrorCode::singular_system: return WWV_ERR_SINGULAR_SYSTEM;
    case wwv::ErrorCode::collision: return WWV_ERR_COLLISION;
    case wwv::ErrorCode::not_converged: return WWV_ERR_NOT_CONVERGED;
    case wwv::ErrorCode::io: return WWV_ERR_IO;
    case wwv::ErrorCode::config: return WWV_ERR_CONFIG;
  }
  return WWV_ERR_INTERNAL;
}

template <class F>
wwv_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return WWV_OK;
  } catch (const wwv::Halt& h) {
    return fail(WWV_HALTED, h.what());
  } catch (const wwv::Error& e) {
    return fail(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WWV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WWV_ERR_INTERNAL, e.what());
  }
}

void copy_text(char* dst, std::size_t cap, const std::string& src) {
  const std::size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

wwv_status summarize(const wwv::RunResult& r, wwv_run_summary* out) {
  if (out) {
    std::memset(out, 0, sizeof *out);
    copy_text(out->halt, sizeof out->halt, wwv::halt_status_name(r.status));
    copy_text(out->message, sizeof out->message, r.message);
    out->t_final = r.final_state.t;
    out->steps = r.steps;
    out->min_energy = r.min_energy;
    out->max_symmetry_residual = r.max_symmetry_residual;
  }
  if (r.status != wwv::HaltStatus::none) return fail(WWV_HALTED, r.message);
  return WWV_OK;
}

wwv::RunOptions run_options(const char* out_dir, double until) {
  wwv::RunOptions opt;
  if (out_dir) opt.out_dir = out_dir;
  if (until >= 0.0) opt.until = until;
  return opt;
}

}  // namespace

extern "C" {

const char* wwv_last_error(void) { return last_error.c_str(); }
const char* wwv_version(void) { return "1.0.0"; }

wwv_status wwv_scenario_preset(const char* name, wwv_scenario** out) {
  if (!name || !out) return fail(WWV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new wwv_scenario{wwv::preset(name), {}}; });
}

wwv_status wwv_scenario_from_file(const char* path, wwv_scenario** out) {
  if (!path || !out) return fail(WWV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new wwv_scenario{wwv::load_scenario(path), {}}; });
}

wwv_status wwv_scenario_from_json(const char* text, wwv_scenario** out) {
  if (!text || !out) return fail(WWV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new wwv_scenario{wwv::scenario_from_json(text), {}}; });
}

void wwv_scenario_free(wwv_scenario* s) { delete s; }

wwv_status wwv_scenario_set_seed(wwv_scenario* s, uint64_t seed) {
  if (!s) return fail(WWV_ERR_INVALID_ARGUMENT, "null scenario");
  s->config.seed = seed;
  return WWV_OK;
}

const char* wwv_scenario_json(const wwv_scenario* s) {
  if (!s) return nullptr;
  s->json = wwv::scenario_to_json(s->config);
  return s->json.c_str();
}

size_t wwv_preset_count(void) { return wwv::preset_names().size(); }

const char* wwv_preset_name(size_t i) {
  static const std::vector<std::string> names = wwv::preset_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

wwv_status wwv_simulate(const wwv_scenario* s, const char* out_dir, double until, wwv_run_summary* summary) {
  if (!s) return fail(WWV_ERR_INVALID_ARGUMENT, "null scenario");
  wwv::RunResult r;
  const wwv_status st = guarded([&] { r = wwv::run_simulation(s->config, run_options(out_dir, until)); });
  return st == WWV_OK ? summarize(r, summary) : st;
}

wwv_status wwv_resume(const char* checkpoint, const char* out_dir, double until, wwv_run_summary* summary) {
  if (!checkpoint) return fail(WWV_ERR_INVALID_ARGUMENT, "null checkpoint path");
  wwv::RunResult r;
  const wwv_status st = guarded([&] { r = wwv::resume_simulation(checkpoint, run_options(out_dir, until)); });
  return st == WWV_OK ? summarize(r, summary) : st;
}

wwv_status wwv_sweep_taylor(const wwv_scenario* s, const char* csv_path, size_t* rows) {
  if (!s || !csv_path) return fail(WWV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto out = wwv::run_taylor_sweep(s->config, csv_path);
    if (rows) *rows = out.size();
  });
}

wwv_status wwv_verify(const char* selector, uint64_t seed, wwv_criterion_cb cb, void* user, int* failed) {
  if (!selector) return fail(WWV_ERR_INVALID_ARGUMENT, "null selector");
  return guarded([&] {
    int bad = 0;
    wwv::VerifyOptions opt;
    opt.seed = seed;
    wwv::run_verify(selector, opt, [&](const wwv::CriterionOutcome& o) {
      if (!o.pass) ++bad;
      if (cb) {
        const wwv_criterion c{o.id, o.key.c_str(), o.pass ? 1 : 0, o.detail.c_str(), o.seconds};
        cb(&c, user);
      }
    });
    if (failed) *failed = bad;
  });
}

wwv_status wwv_a1_single_vortex(double lambda, double y, double* value, int* classification) {
  return guarded([&] {
    const wwv::ClosedForm c = wwv::a1_single_vortex_closed(lambda, y);
    if (value) *value = c.value;
    if (classification) *classification = static_cast<int>(c.classification);
  });
}

wwv_status wwv_a1_pair(double lambda, double x, double y, double* value) {
  return guarded([&] {
    const double v = wwv::a1_pair_closed(lambda, x, y);
    if (value) *value = v;
  });
}

wwv_status wwv_session_create(const wwv_scenario* s, wwv_session** out) {
  if (!s || !out) return fail(WWV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    s->config.validate();
    const wwv::PeriodicGrid grid(s->config.n, s->config.half_period);
    wwv::SurfaceState state = wwv::initial_state(grid, s->config);
    const double x0 = wwv::pair_half_separation(state.vortices);
    *out = new wwv_session{s->config, grid, std::move(state), x0};
  });
}

void wwv_session_free(wwv_session* session) { delete session; }

wwv_status wwv_session_step(wwv_session* session, int count) {
  if (!session || count < 0) return fail(WWV_ERR_INVALID_ARGUMENT, "bad session or count");
  return guarded([&] {
    for (int k = 0; k < count; ++k) session->state = wwv::step(session->grid, session->state, session->config.evolution);
  });
}

double wwv_session_time(const wwv_session* session) { return session ? session->state.t : 0.0; }

size_t wwv_session_size(const wwv_session* session) {
  return session ? static_cast<size_t>(session->grid.size()) : 0;
}

wwv_status wwv_session_surface(const wwv_session* session, double* zeta, double* u) {
  if (!session) return fail(WWV_ERR_INVALID_ARGUMENT, "null session");
  const auto& st = session->state;
  for (int i = 0; i < session->grid.size(); ++i) {
    if (zeta) {
      zeta[2 * i] = st.zeta[i].real();
      zeta[2 * i + 1] = st.zeta[i].imag();
    }
    if (u) {
      u[2 * i] = st.u[i].real();
      u[2 * i + 1] = st.u[i].imag();
    }
  }
  return WWV_OK;
}

size_t wwv_session_vortex_count(const wwv_session* session) { return session ? session->state.vortices.size() : 0; }

wwv_status wwv_session_vortices(const wwv_session* session, double* positions, double* strengths) {
  if (!session) return fail(WWV_ERR_INVALID_ARGUMENT, "null session");
  const auto& v = session->state.vortices;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (positions) {
      positions[2 * j] = v.positions[j].real();
      positions[2 * j + 1] = v.positions[j].imag();
    }
    if (strengths) strengths[j] = v.strengths[j];
  }
  return WWV_OK;
}

wwv_status wwv_session_diagnostics(const wwv_session* session, double* energy, double* taylor_margin,
                                   double* symmetry_residual) {
  if (!session) return fail(WWV_ERR_INVALID_ARGUMENT, "null session");
  return guarded([&] {
    wwv::DiagnosticsOptions opt = session->config.diagnostics;
    opt.flattened_energy = false;
    opt.residuals = false;
    opt.at_monitor = false;
    const wwv::DiagnosticsRecord r =
        wwv::make_record(session->grid, session->state, session->config.evolution, opt, session->x0);
    if (energy) *energy = r.E_lagrangian;
    if (taylor_margin) *taylor_margin = r.taylor_margin;
    if (symmetry_residual) *symmetry_residual = r.symmetry_residual;
  });
}

}  // extern "C"
