#include "wwv/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <random>

#include "wwv/runner.hpp"

namespace wwv {

namespace {

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const std::vector<std::string>& keys() {
  static const std::vector<std::string> k = {"residue",  "projection", "taylor-single", "taylor-pair", "irrotational",
                                             "dispersion", "rk4",      "scaling",       "key-control", "bootstrap",
                                             "symmetry", "at",         "energy"};
  return k;
}

// ---- shared runs ----------------------------------------------------------

const RunResult& pair_longtime_run() {
  static std::mutex mu;
  static std::optional<RunResult> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached) cached = run_simulation(preset("pair-longtime"), RunOptions{});
  return *cached;
}

struct ScalingStudy {
  std::vector<double> eps, a_dev, b_sup, gc, es_gap;
};

ScenarioConfig small_irrotational(double eps) {
  ScenarioConfig c;
  c.n = 256;
  c.elevation_amplitude = eps;
  c.velocity_amplitude = eps;
  c.validate();
  return c;
}

const ScalingStudy& scaling_study() {
  static std::mutex mu;
  static std::optional<ScalingStudy> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (cached) return *cached;
  ScalingStudy s;
  for (double eps : {1e-3, 5e-4, 2.5e-4}) {
    const ScenarioConfig c = small_irrotational(eps);
    const PeriodicGrid grid(c.n, c.half_period);
    const SurfaceState state = initial_state(grid, c);
    const Flow flow(grid, state, c.evolution);
    s.eps.push_back(eps);
    s.a_dev.push_back((flow.A().array() - 1.0).abs().maxCoeff());
    s.b_sup.push_back(flow.b().cwiseAbs().maxCoeff());
    s.gc.push_back(cubic_residuals(flow, 4.0).cubic_norm);
    const FlattenedEnergy e = energy_Es(grid, state, c.evolution, 4);
    s.es_gap.push_back(std::abs(e.value - e.comparison));
  }
  cached = s;
  return *cached;
}

// ---- individual criteria ---------------------------------------------------

CriterionOutcome residue() {
  const cplx value = residue_pair_integral(512, 16.0 * pi, cplx(0.0, -1.0), cplx(0.0, -2.0));
  const double err = std::abs(value - 2.0 * pi / 3.0);
  return {1, "residue", err <= 1e-8, fmt("value %.12f%+.1ei, |error| %.2e (tol 1e-8)", value.real(), value.imag(), err)};
}

CriterionOutcome projection() {
  const PeriodicGrid grid(512);
  double worst = 0.0;
  std::string detail;
  for (double amp : {0.0, 0.01}) {
    ScenarioConfig c;
    c.n = grid.size();
    c.elevation_amplitude = amp;
    const SurfaceState s = initial_state(grid, c);
    const CurveTrace curve(grid, s.zeta);
    for (cplx zj : {cplx(0.0, -1.0 - amp), cplx(0.7, -2.0)}) {
      CField k(grid.size());
      for (int i = 0; i < grid.size(); ++i) k[i] = vortex_kernel(s.zeta[i] - zj, grid.half_period());
      const double r = l2_norm(grid, CField(k - curve_hilbert(curve, k) - 2.0 * k));
      worst = std::max(worst, r);
      detail += fmt("%s d=%.2f: %.2e; ", amp == 0.0 ? "flat" : "1%", curve.distance_to(zj), r);
    }
  }
  return {2, "projection", worst <= 1e-6, detail + fmt("max %.2e (tol 1e-6)", worst)};
}

double quadrature_a1_at_center(const VortexSet& v) {
  const PeriodicGrid grid(512);
  const CurveTrace flat = CurveTrace::flat(grid);
  CField dtz(grid.size());
  for (int i = 0; i < grid.size(); ++i) dtz[i] = line_vortex_velocity(v, grid.points()[i]);
  const TaylorReport r = a1_flat_general(flat, dtz, v, line_vortex_velocities(v), A1Path::quadrature);
  return r.samples[grid.size() / 2];
}

TaylorReport quadrature_report(const VortexSet& v) {
  const PeriodicGrid grid(512);
  const CurveTrace flat = CurveTrace::flat(grid);
  CField dtz(grid.size());
  for (int i = 0; i < grid.size(); ++i) dtz[i] = line_vortex_velocity(v, grid.points()[i]);
  return a1_flat_general(flat, dtz, v, line_vortex_velocities(v), A1Path::quadrature);
}

CriterionOutcome taylor_single() {
  bool ok = true;
  std::string d;
  const double closed = a1_single_vortex_closed(1.0, -1.0).value;
  const double formula = 1.0 - 3.0 / (8.0 * pi * pi);
  ok &= std::abs(closed - formula) <= 1e-14;
  const VortexSet v{{cplx(0.0, -1.0)}, {1.0}};
  const double quad = quadrature_a1_at_center(v);
  ok &= std::abs(quad - closed) <= 1e-6;
  d += fmt("A1(0) closed %.10f quad %.10f (diff %.1e); ", closed, quad, std::abs(quad - closed));

  const double lam_c = 2.0 * pi * std::sqrt(2.0 / 3.0);
  const TaylorReport at = quadrature_report(VortexSet{{cplx(0.0, -1.0)}, {lam_c}});
  const bool degenerate = a1_single_vortex_closed(lam_c, -1.0).classification == TaylorClass::degenerate &&
                          at.classification == TaylorClass::degenerate;
  const bool flips = a1_single_vortex_closed(lam_c * (1.0 - 1e-6), -1.0).classification == TaylorClass::strong &&
                     a1_single_vortex_closed(lam_c * (1.0 + 1e-6), -1.0).classification == TaylorClass::failed;
  ok &= degenerate && flips;
  d += fmt("threshold: closed/quad degenerate %s, flips across %s; ", degenerate ? "yes" : "no", flips ? "yes" : "no");

  const Bracket b = sign_change_bracket(taylor_sweep(preset("taylor-single-sweep").sweep.value()));
  const double target = 8.0 * pi * pi / 3.0;
  const bool in = b.found && b.lower <= target && target <= b.upper;
  ok &= in;
  d += fmt("sweep bracket [%.4f, %.4f] contains %.4f: %s", b.lower, b.upper, target, in ? "yes" : "no");
  return {3, "taylor-single", ok, d};
}

CriterionOutcome taylor_pair() {
  bool ok = true;
  std::string d;
  const double lam = 4.0 * pi;
  const double closed = a1_pair_closed(lam, 1.0, -1.0);
  ok &= std::abs(closed - (1.0 - lam * lam / (16.0 * pi * pi))) <= 1e-12;
  double worst = 0.0;
  for (auto [l, x, y] : {std::tuple{4.0 * pi, 1.0, -1.0}, std::tuple{1.0, 2.0, -1.0}, std::tuple{2.0, 1.5, -1.5}}) {
    const SymmetricPair p{x, y, -l};
    const double q = quadrature_a1_at_center(p.to_set());
    const double c = a1_pair_closed(l, x, y);
    worst = std::max(worst, std::abs(q - c));
  }
  ok &= worst <= 1e-6;
  d += fmt("closed A1(0) at 16pi^2 = %.2e, max path diff %.2e (tol 1e-6); ", closed, worst);
  const Bracket b = sign_change_bracket(taylor_sweep(preset("taylor-pair-sweep").sweep.value()));
  const double target = 16.0 * pi * pi;
  const bool in = b.found && b.lower <= target && target <= b.upper;
  ok &= in;
  d += fmt("sweep bracket [%.3f, %.3f] contains %.3f: %s", b.lower, b.upper, target, in ? "yes" : "no");
  return {4, "taylor-pair", ok, d};
}

CriterionOutcome irrotational(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> size(1e-4, 1e-2);
  const PeriodicGrid grid(128);
  const CurveTrace flat = CurveTrace::flat(grid);
  const VortexSet none;
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 500; ++trial) {
    const double eps = size(rng);
    CField c = CField::Zero(grid.size());
    for (int m = 1; m <= 12; ++m) {
      const cplx a(coef(rng), coef(rng));
      c[grid.size() - m] = eps * a / double(m * m);
    }
    const CField dtz = grid.inverse(c);
    const TaylorReport line = a1_flat_general(flat, dtz, none, {}, A1Path::quadrature);
    const TaylorReport per = a1_general(grid, flat.z(), dtz, none, {}, ConformalData{}, A1Domain::periodic);
    worst = std::min({worst, line.infimum, per.infimum});
  }
  return {5, "irrotational", worst >= 1.0 - 1e-6, fmt("500 configurations, min A1 = %.15f (floor 1 - 1e-6)", worst)};
}

double measured_frequency(int mode) {
  ScenarioConfig c;
  c.n = 128;
  c.wave_amplitude = 1e-5;
  c.wave_mode = mode;
  c.evolution.dt = mode >= 32 ? 0.05 : 0.1;
  const PeriodicGrid grid(c.n, c.half_period);
  const double omega = std::sqrt(pi * mode / c.half_period);
  const double period = 2.0 * pi / omega;
  SurfaceState s = initial_state(grid, c);
  auto amplitude = [&](const SurfaceState& st) {
    const CField coef = grid.forward(CField(st.zeta - to_complex(grid.points())));
    return (coef[mode] + coef[grid.size() - mode]).imag();
  };
  std::vector<double> crossings;
  double prev = amplitude(s);
  while (s.t < 10.5 * period && crossings.size() < 21) {
    const double t0 = s.t;
    s = step(grid, s, c.evolution);
    const double cur = amplitude(s);
    if ((prev > 0.0) != (cur > 0.0)) crossings.push_back(t0 + c.evolution.dt * prev / (prev - cur));
    prev = cur;
  }
  if (crossings.size() < 3) return 0.0;
  return pi * double(crossings.size() - 1) / (crossings.back() - crossings.front());
}

CriterionOutcome dispersion() {
  bool ok = true;
  std::string d;
  for (int mode : {16, 32}) {
    const double k = pi * mode / (16.0 * pi);
    const double w = measured_frequency(mode);
    const double rel = std::abs(w - std::sqrt(k)) / std::sqrt(k);
    ok &= rel <= 0.01;
    d += fmt("k=%.3f omega %.6f vs %.6f (rel %.1e); ", k, w, std::sqrt(k), rel);
  }
  return {6, "dispersion", ok, d + "tol 1%"};
}

CriterionOutcome rk4() {
  ScenarioConfig c;
  c.n = 256;
  c.elevation_amplitude = 1e-2;
  c.velocity_amplitude = 1e-2;
  c.pair = SymmetricPair{0.5, -1.5, -0.1};
  c.evolution.projection_cadence = 0;
  const PeriodicGrid grid(c.n, c.half_period);
  const SurfaceState start = initial_state(grid, c);
  const double t_end = 2.0;
  std::vector<SurfaceState> finals;
  for (double dt : {0.2, 0.1, 0.05}) {
    EvolutionConfig ev = c.evolution;
    ev.dt = dt;
    SurfaceState s = start;
    for (int k = 0; k < static_cast<int>(std::lround(t_end / dt)); ++k) s = step(grid, s, ev);
    finals.push_back(s);
  }
  auto dist = [](const SurfaceState& a, const SurfaceState& b) {
    double d = std::max((a.zeta - b.zeta).cwiseAbs().maxCoeff(), (a.u - b.u).cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < a.vortices.size(); ++j) {
      d = std::max(d, std::abs(a.vortices.positions[j] - b.vortices.positions[j]));
    }
    return d;
  };
  const double e1 = dist(finals[0], finals[1]);
  const double e2 = dist(finals[1], finals[2]);
  const double ratio = e1 / e2;
  return {7, "rk4", ratio >= 12.0 && ratio <= 20.0,
          fmt("differences %.3e, %.3e; ratio %.3f (band [12, 20])", e1, e2, ratio)};
}

CriterionOutcome scaling() {
  const ScalingStudy& s = scaling_study();
  const double sa = loglog_slope(s.eps, s.a_dev);
  const double sb = loglog_slope(s.eps, s.b_sup);
  const double sg = loglog_slope(s.eps, s.gc);
  return {8, "scaling", sa >= 1.8 && sb >= 1.8 && sg >= 2.7,
          fmt("slopes |A-1| %.3f, |b| %.3f (min 1.8), |G_c|_H4 %.3f (min 2.7)", sa, sb, sg)};
}

PairRunParams pair_params(const RunResult& run) {
  const ScenarioConfig c = preset("pair-longtime");
  PairRunParams p;
  p.epsilon = c.epsilon;
  p.lambda = c.pair->lambda;
  p.x0 = run.x0;
  const double h = 2.0 * c.half_period / c.n;
  p.grid_tolerance = h * h;
  return p;
}

CriterionOutcome key_control() {
  const RunResult& run = pair_longtime_run();
  const MonitorReport m = longtime_monitors(run.records, pair_params(run));
  const bool horizon = run.status == HaltStatus::none && run.final_state.t >= 50.0 - 1e-9;
  const bool ok = horizon && m.applicable && m.x_ratio_ok && m.ydot_ok && m.d_i_ok;
  return {9, "key-control", ok,
          fmt("status %s to t=%.2f; x/x0 in [%.5f, %.5f]; max ydot %.5f vs -%.5f; min d_I margin %.4f",
              halt_status_name(run.status), run.final_state.t, m.min_x_ratio, m.max_x_ratio, m.max_ydot, m.rate,
              m.min_di_margin)};
}

CriterionOutcome bootstrap() {
  const RunResult& run = pair_longtime_run();
  const PairRunParams p = pair_params(run);
  const MonitorReport m = longtime_monitors(run.records, p);
  const double initial = run.records.empty() ? 0.0 : run.records.front().triple.max();
  const bool ok = m.applicable && m.bootstrap_ok && !run.records.empty();
  return {10, "bootstrap", ok,
          fmt("max triple %.4e vs 5 eps = %.1e (initial %.4e, growth x%.2f)", m.max_triple, 5.0 * p.epsilon, initial,
              initial > 0.0 ? m.max_triple / initial : 0.0)};
}

CriterionOutcome symmetry() {
  const RunResult& run = pair_longtime_run();
  double off = run.max_symmetry_residual;
  ScenarioConfig c;
  c.n = 256;
  c.elevation_amplitude = 1e-2;
  c.velocity_amplitude = 1e-2;
  c.pair = SymmetricPair{0.5, -1.5, -0.1};
  c.evolution.dt = 0.1;
  c.evolution.t_end = 5.0;
  c.output_every = 1000;
  c.diagnostics.flattened_energy = false;
  const RunResult wave_off = run_simulation(c, RunOptions{});
  off = std::max(off, wave_off.max_symmetry_residual);
  c.evolution.enforce_symmetry = true;
  const RunResult wave_on = run_simulation(c, RunOptions{});
  const bool ok = off <= 1e-9 && wave_on.max_symmetry_residual <= 1e-12 && wave_off.status == HaltStatus::none &&
                  wave_on.status == HaltStatus::none;
  return {11, "symmetry", ok,
          fmt("enforcement off: max residual %.2e (tol 1e-9); on: %.2e (tol 1e-12)", off,
              wave_on.max_symmetry_residual)};
}

CriterionOutcome at_consistency() {
  ScenarioConfig c;
  c.n = 256;
  c.elevation_amplitude = 1e-2;
  c.velocity_amplitude = 1e-2;
  c.pair = SymmetricPair{0.5, -2.0, -0.3};
  c.evolution.dt = 0.01;
  const PeriodicGrid grid(c.n, c.half_period);
  std::vector<SurfaceState> traj{initial_state(grid, c)};
  for (int k = 0; k < 6; ++k) traj.push_back(step(grid, traj.back(), c.evolution));
  const double h = c.evolution.dt;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const Flow mid(grid, traj[k], c.evolution);
    const Flow ahead(grid, traj[k + 1], c.evolution);
    const Flow behind(grid, traj[k - 1], c.evolution);
    const RField& A = mid.A();
    const RField& b = mid.b();
    const RField fd = ((ahead.A() - behind.A()) / (2.0 * h)).array() / A.array() +
                      b.array() * fourier_derivative(grid, A).array() / A.array() -
                      fourier_derivative(grid, b).array();
    const RField at = quasilinear_at(mid).at_over_a;
    worst = std::max(worst, (at - fd).cwiseAbs().maxCoeff() / at.cwiseAbs().maxCoeff());
  }
  return {12, "at", worst <= 1e-4, fmt("max relative difference %.3e at h = %.2g (tol 1e-4)", worst, h)};
}

CriterionOutcome energy() {
  bool ok = true;
  std::string d;
  double min_e = std::numeric_limits<double>::infinity();
  for (const char* name : {"rest", "small-wave", "taylor-fail"}) {
    const RunResult r = run_simulation(preset(name), RunOptions{});
    const bool accepted = std::string(name) != "taylor-fail" || r.status == HaltStatus::taylor_sign_failed;
    ok &= accepted;
    if (r.steps > 0 || r.status == HaltStatus::none) min_e = std::min(min_e, r.min_energy);
    d += fmt("%s: %s, min E %.3e; ", name, halt_status_name(r.status), r.min_energy);
  }
  const RunResult& pair = pair_longtime_run();
  min_e = std::min(min_e, pair.min_energy);
  d += fmt("pair-longtime: min E %.3e; ", pair.min_energy);
  ok &= min_e >= 0.0;
  const ScalingStudy& s = scaling_study();
  const double slope = loglog_slope(s.eps, s.es_gap);
  ok &= slope >= 2.7;
  d += fmt("E_s gap slope %.3f (min 2.7)", slope);
  return {13, "energy", ok, d};
}

}  // namespace

cplx residue_pair_integral(int n, double half_period, cplx w1, cplx w2) {
  const PeriodicGrid grid(n, half_period);
  const double s = pi / grid.period();
  const cplx c = std::conj(w2);
  // partial fractions; each periodized pole sum is a cotangent
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double b = grid.points()[i];
    acc += s * (cot(s * (b - w1)) - cot(s * (b - c)));
  }
  return grid.spacing() * acc / (w1 - c);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

std::vector<std::string> criterion_keys() { return keys(); }

std::vector<std::string> verify_selectors() {
  std::vector<std::string> out = {"all", "quadrature", "taylor", "evolution", "longtime"};
  for (const std::string& k : keys()) out.push_back(k);
  return out;
}

std::vector<int> criteria_for(const std::string& selector) {
  static const std::map<std::string, std::vector<int>> groups = {
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13}},
      {"quadrature", {1, 2, 3, 4}},
      {"taylor", {3, 4, 5}},
      {"evolution", {6, 7, 8, 11, 12}},
      {"longtime", {9, 10, 11, 13}},
  };
  if (auto it = groups.find(selector); it != groups.end()) return it->second;
  for (std::size_t i = 0; i < keys().size(); ++i) {
    if (selector == keys()[i] || selector == std::to_string(i + 1)) return {static_cast<int>(i) + 1};
  }
  throw Error(ErrorCode::config, "unknown verify selector '" + selector + "'");
}

CriterionOutcome run_criterion(int id, const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionOutcome out;
  try {
    switch (id) {
      case 1: out = residue(); break;
      case 2: out = projection(); break;
      case 3: out = taylor_single(); break;
      case 4: out = taylor_pair(); break;
      case 5: out = irrotational(opt.seed); break;
      case 6: out = dispersion(); break;
      case 7: out = rk4(); break;
      case 8: out = scaling(); break;
      case 9: out = key_control(); break;
      case 10: out = bootstrap(); break;
      case 11: out = symmetry(); break;
      case 12: out = at_consistency(); break;
      case 13: out = energy(); break;
      default: throw Error(ErrorCode::config, "no criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config && (id < 1 || id > 13)) throw;
    out.id = id;
    out.key = keys()[id - 1];
    out.pass = false;
    out.detail = std::string("error: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<CriterionOutcome> run_verify(const std::string& selector, const VerifyOptions& opt,
                                         const std::function<void(const CriterionOutcome&)>& on_result) {
  std::vector<CriterionOutcome> out;
  for (int id : criteria_for(selector)) {
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace wwv
