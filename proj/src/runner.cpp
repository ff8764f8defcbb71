#include "wwv/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace wwv {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double unhex(const json& j) {
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw Error(ErrorCode::io, "bad number '" + s + "' in checkpoint");
  return v;
}

json hex_array(const RField& f) {
  json a = json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i) a.push_back(hex(f[i]));
  return a;
}

RField unhex_array(const json& a, int n) {
  if (!a.is_array() || static_cast<int>(a.size()) != n) throw Error(ErrorCode::io, "checkpoint array has wrong length");
  RField out(n);
  for (int i = 0; i < n; ++i) out[i] = unhex(a[i]);
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::io, "write to '" + path.string() + "' failed");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot(const fs::path& dir, const PeriodicGrid& grid, const SurfaceState& s) {
  json j;
  j["schema"] = snapshot_schema;
  j["t"] = s.t;
  j["step"] = s.step;
  json pts = json::array();
  for (int i = 0; i < grid.size(); ++i) pts.push_back({grid.points()[i], s.zeta[i].real(), s.zeta[i].imag()});
  j["points"] = pts;
  json vs = json::array();
  for (std::size_t k = 0; k < s.vortices.size(); ++k) {
    vs.push_back({s.vortices.positions[k].real(), s.vortices.positions[k].imag(), s.vortices.strengths[k]});
  }
  j["vortices"] = vs;
  char name[64];
  std::snprintf(name, sizeof name, "snapshot_%08lld.json", static_cast<long long>(s.step));
  write_text(dir / name, j.dump());
}

void write_status(const fs::path& dir, const RunResult& r) {
  json j;
  j["schema"] = status_schema;
  j["status"] = halt_status_name(r.status);
  j["message"] = r.message;
  j["t"] = r.final_state.t;
  j["step"] = r.final_state.step;
  j["min_energy"] = r.min_energy;
  j["max_symmetry_residual"] = r.max_symmetry_residual;
  write_text(dir / "status.json", j.dump(2) + "\n");
}

HaltStatus status_of(const Error& e) {
  if (const auto* h = dynamic_cast<const Halt*>(&e)) return h->status();
  switch (e.code()) {
    case ErrorCode::chord_arc: return HaltStatus::chord_arc_collapse;
    case ErrorCode::near_boundary: return HaltStatus::vortex_interface_contact;
    case ErrorCode::collision: return HaltStatus::vortex_collision;
    case ErrorCode::not_converged: return HaltStatus::picard_not_converged;
    case ErrorCode::non_finite: return HaltStatus::non_finite;
    default: return HaltStatus::solver_failure;
  }
}

RunResult run_from(const ScenarioConfig& cfg, SurfaceState state, double x0, const RunOptions& opt) {
  const PeriodicGrid grid(cfg.n, cfg.half_period);
  const EvolutionConfig& ev = cfg.evolution;
  const double t_end = opt.until.value_or(ev.t_end);
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::config, "--until must be a finite time >= 0");
  const std::int64_t target = std::llround(t_end / ev.dt);

  const bool files = !opt.out_dir.empty();
  std::ofstream csv;
  if (files) {
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (cfg.snapshot_every > 0) fs::create_directories(opt.out_dir / "snapshots", ec);
    if (ec) throw Error(ErrorCode::io, "cannot create output directory '" + opt.out_dir.string() + "'");
    csv.open(opt.out_dir / "diagnostics.csv", std::ios::binary | std::ios::trunc);
    if (!csv) throw Error(ErrorCode::io, "cannot open diagnostics.csv in '" + opt.out_dir.string() + "'");
    csv << diagnostics_schema << "\n" << diagnostics_header() << "\n";
  }

  RunResult res;
  res.x0 = x0;
  res.min_energy = std::numeric_limits<double>::infinity();
  res.final_state = state;

  auto accept = [&](const Flow& flow) {
    const SurfaceState& s = flow.state();
    res.min_energy = std::min(res.min_energy, energy_lagrangian(flow, cfg.diagnostics.s, ev.taylor_floor).total);
    res.max_symmetry_residual = std::max(res.max_symmetry_residual, symmetry_residual(grid, s));
    res.final_state = s;
    res.steps = s.step;
    if (s.step % cfg.output_every == 0) {
      DiagnosticsRecord r;
      try {
        r = make_record(grid, s, ev, cfg.diagnostics, x0);
      } catch (const Error&) {
        // the flattened energy probes a neighbourhood in time; keep the row
        DiagnosticsOptions cheap = cfg.diagnostics;
        cheap.flattened_energy = false;
        r = make_record(grid, s, ev, cheap, x0);
        r.E_s = std::numeric_limits<double>::quiet_NaN();
      }
      res.records.push_back(r);
      if (files) {
        csv << diagnostics_row(r) << "\n";
        if (!csv) throw Error(ErrorCode::io, "write to diagnostics.csv failed");
      }
      if (opt.verbose) {
        std::fprintf(stderr, "t=%.4f E=%.6g d_I=%.6g margin=%.6g\n", r.t, r.E_lagrangian, r.d_I, r.taylor_margin);
      }
    }
    if (files && cfg.snapshot_every > 0 && s.step % cfg.snapshot_every == 0) {
      write_snapshot(opt.out_dir / "snapshots", grid, s);
    }
  };

  auto halt = [&](HaltStatus st, const std::string& msg) {
    res.status = st;
    res.message = msg;
  };

  try {
    HaltCheck first = state.step == 0 ? screen_initial(grid, state, ev) : HaltCheck{};
    if (first.status == HaltStatus::none) {
      const Flow flow(grid, state, ev);
      first = check_halt(flow, ev);
      if (first.status == HaltStatus::none) accept(flow);
    }
    if (first.status != HaltStatus::none) halt(first.status, first.message);
  } catch (const Error& e) {
    halt(status_of(e), e.what());
  }

  while (res.status == HaltStatus::none && state.step < target) {
    try {
      SurfaceState next = step(grid, state, ev);
      const Flow flow(grid, next, ev);
      const HaltCheck hc = check_halt(flow, ev);
      if (hc.status != HaltStatus::none) {
        halt(hc.status, hc.message + " at t=" + num(next.t));
        break;
      }
      accept(flow);
      state = std::move(next);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::io) throw;
      halt(status_of(e), std::string(e.what()) + " at t=" + num(state.t + ev.dt));
    }
  }
  if (!std::isfinite(res.min_energy)) res.min_energy = 0.0;
  if (res.status == HaltStatus::none) res.message = "completed";

  if (files) {
    csv.close();
    write_status(opt.out_dir, res);
    write_checkpoint(opt.out_dir / "checkpoint.json", cfg, res.final_state, x0);
  }
  return res;
}

}  // namespace

std::string diagnostics_header() {
  return "t,E,E_s,d_I,d_P,x_ratio,taylor_margin,C1,C2,sym_residual,Gc_norm,Gd_norm";
}

std::string diagnostics_row(const DiagnosticsRecord& r) {
  std::string s;
  for (double v : {r.t, r.E_lagrangian, r.E_s, r.d_I, r.d_P, r.x_ratio, r.taylor_margin, r.C1, r.C2,
                   r.symmetry_residual, r.gc_norm, r.gd_norm}) {
    if (!s.empty()) s += ',';
    s += num(v);
  }
  return s;
}

HaltCheck screen_initial(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg) {
  HaltCheck out;
  const double flat = (state.zeta - to_complex(grid.points())).cwiseAbs().maxCoeff();
  if (flat > 1e-12) return out;
  try {
    const CurveTrace curve(grid, state.zeta, cfg.chord_arc_floor);
    VortexFloors floors;
    floors.near_spacings = cfg.interface_floor;
    floors.collision = cfg.collision_floor;
    const std::vector<cplx> zdot = vortex_velocities(curve, state.u, state.vortices, floors);
    const ConformalData conformal{state.vortices.positions, std::vector<cplx>(state.vortices.size(), 1.0)};
    const TaylorReport rep =
        a1_general(grid, state.zeta, state.u, state.vortices, zdot, conformal, A1Domain::periodic);
    if (!(rep.infimum > cfg.taylor_floor)) {
      out.status = HaltStatus::taylor_sign_failed;
      out.message = "initial screening: inf A1 = " + num(rep.infimum) + " at alpha = " + num(rep.argmin);
    }
  } catch (const Error& e) {
    out.status = status_of(e);
    out.message = e.what();
  }
  return out;
}

RunResult run_simulation(const ScenarioConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  const PeriodicGrid grid(cfg.n, cfg.half_period);
  SurfaceState state;
  try {
    state = initial_state(grid, cfg);
  } catch (const Error& e) {
    throw Error(ErrorCode::config, std::string("initial data: ") + e.what());
  }
  const double x = pair_half_separation(state.vortices);
  return run_from(cfg, std::move(state), std::isfinite(x) ? x : 0.0, opt);
}

RunResult resume_simulation(const fs::path& checkpoint, const RunOptions& opt) {
  Checkpoint cp = read_checkpoint(checkpoint);
  return run_from(cp.config, std::move(cp.state), cp.x0, opt);
}

void write_checkpoint(const fs::path& path, const ScenarioConfig& cfg, const SurfaceState& s, double x0) {
  json j;
  j["schema"] = checkpoint_schema;
  j["config"] = json::parse(scenario_to_json(cfg));
  j["config_hash"] = config_hash(cfg);
  j["grid"] = {{"n", cfg.n}, {"half_period", hex(cfg.half_period)}};
  j["t"] = hex(s.t);
  j["step"] = s.step;
  j["x0"] = hex(x0);
  j["zeta_re"] = hex_array(s.zeta.real());
  j["zeta_im"] = hex_array(s.zeta.imag());
  j["u_re"] = hex_array(s.u.real());
  j["u_im"] = hex_array(s.u.imag());
  RField vx(s.vortices.size()), vy(s.vortices.size()), vl(s.vortices.size());
  for (std::size_t k = 0; k < s.vortices.size(); ++k) {
    vx[k] = s.vortices.positions[k].real();
    vy[k] = s.vortices.positions[k].imag();
    vl[k] = s.vortices.strengths[k];
  }
  j["vortex_x"] = hex_array(vx);
  j["vortex_y"] = hex_array(vy);
  j["vortex_lambda"] = hex_array(vl);
  write_text(path, j.dump() + "\n");
}

Checkpoint read_checkpoint(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open checkpoint '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Checkpoint cp;
  try {
    const json j = json::parse(ss.str());
    if (j.at("schema") != checkpoint_schema) throw Error(ErrorCode::io, "not a checkpoint file");
    cp.config = scenario_from_json(j.at("config").dump());
    if (j.at("config_hash") != config_hash(cp.config)) throw Error(ErrorCode::io, "checkpoint config hash mismatch");
    const int n = j.at("grid").at("n").get<int>();
    if (n != cp.config.n || unhex(j.at("grid").at("half_period")) != cp.config.half_period) {
      throw Error(ErrorCode::io, "checkpoint grid does not match its config");
    }
    cp.state.t = unhex(j.at("t"));
    cp.state.step = j.at("step").get<std::int64_t>();
    cp.x0 = unhex(j.at("x0"));
    const RField zr = unhex_array(j.at("zeta_re"), n), zi = unhex_array(j.at("zeta_im"), n);
    const RField ur = unhex_array(j.at("u_re"), n), ui = unhex_array(j.at("u_im"), n);
    cp.state.zeta.resize(n);
    cp.state.u.resize(n);
    for (int i = 0; i < n; ++i) {
      cp.state.zeta[i] = cplx(zr[i], zi[i]);
      cp.state.u[i] = cplx(ur[i], ui[i]);
    }
    const int nv = static_cast<int>(j.at("vortex_x").size());
    const RField vx = unhex_array(j.at("vortex_x"), nv), vy = unhex_array(j.at("vortex_y"), nv);
    const RField vl = unhex_array(j.at("vortex_lambda"), nv);
    for (int k = 0; k < nv; ++k) {
      cp.state.vortices.positions.emplace_back(vx[k], vy[k]);
      cp.state.vortices.strengths.push_back(vl[k]);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, std::string("malformed checkpoint: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::io) throw;
    throw Error(ErrorCode::io, std::string("checkpoint: ") + e.what());
  }
  return cp;
}

std::vector<SweepRow> taylor_sweep(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  const bool by_ratio = spec.ratio.has_value();
  const std::vector<double> sweep = by_ratio ? spec.ratio->values() : spec.lambda->values();
  for (double y : spec.y.values()) {
    const double depth3 = std::pow(std::abs(y), 3);
    const std::vector<double> xs = spec.kind == "pair" ? (spec.x ? spec.x->values() : std::vector<double>{std::abs(y)})
                                                       : std::vector<double>{0.0};
    for (double x : xs) {
      for (double v : sweep) {
        SweepRow r;
        r.y = y;
        r.x = x;
        r.lambda = by_ratio ? std::sqrt(v * depth3) : v;
        r.ratio = by_ratio ? v : r.lambda * r.lambda / depth3;
        if (spec.kind == "single") {
          const ClosedForm c = a1_single_vortex_closed(r.lambda, y);
          r.a1 = c.value;
          r.classification = c.classification;
        } else {
          r.a1 = a1_pair_closed(r.lambda, x, y);
          r.classification = classify_taylor(r.a1, std::max(1.0, std::abs(r.a1)));
        }
        rows.push_back(r);
      }
    }
  }
  return rows;
}

std::vector<SweepRow> run_taylor_sweep(const ScenarioConfig& cfg, const fs::path& csv) {
  cfg.validate();
  if (!cfg.sweep) throw Error(ErrorCode::config, "config has no sweep section");
  const std::vector<SweepRow> rows = taylor_sweep(*cfg.sweep);
  std::string text = std::string(sweep_schema) + "\nlambda,x,y,ratio,a1,classification\n";
  for (const SweepRow& r : rows) {
    text += num(r.lambda) + "," + num(r.x) + "," + num(r.y) + "," + num(r.ratio) + "," + num(r.a1) + "," +
            taylor_class_name(r.classification) + "\n";
  }
  if (!csv.empty()) {
    std::error_code ec;
    if (csv.has_parent_path()) fs::create_directories(csv.parent_path(), ec);
    write_text(csv, text);
  }
  return rows;
}

}  // namespace wwv
