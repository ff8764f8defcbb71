#include "doctest.h"
#include "wwv/runner.hpp"
#include "wwv/verify.hpp"

using namespace wwv;

namespace {

ScenarioConfig small(double eps, bool vortices) {
  ScenarioConfig c;
  c.n = 256;
  c.elevation_amplitude = eps;
  c.velocity_amplitude = eps;
  if (vortices) c.pair = SymmetricPair{0.5, -2.0, -0.3};
  c.evolution.dt = 0.01;
  c.evolution.projection_cadence = 0;
  return c;
}

CField theta(const PeriodicGrid& g, const SurfaceState& s) {
  const CurveTrace c(g, s.zeta);
  const CField d = s.zeta - s.zeta.conjugate();
  return d - curve_hilbert(c, d);
}

DiagnosticsRecord record(double t, double x_ratio, double ydot, double d_i, double triple) {
  DiagnosticsRecord r;
  r.t = t;
  r.x_ratio = x_ratio;
  r.pair_ydot = ydot;
  r.d_I = d_i;
  r.triple.zeta_alpha = triple;
  return r;
}

}  // namespace

TEST_CASE("everything vanishes at rest") {
  const PeriodicGrid g(128);
  SurfaceState s;
  s.zeta = to_complex(g.points());
  s.u = CField::Zero(g.size());
  const Flow f(g, s);
  CHECK(sobolev_triple(f).max() < 1e-11);
  CHECK(energy_lagrangian(f).total == doctest::Approx(0.0));
  const FlattenedEnergy e = energy_Es(g, s, EvolutionConfig{});
  CHECK(std::abs(e.value) < 1e-20);
  CHECK(std::abs(e.comparison) < 1e-20);
  const CubicResiduals r = cubic_residuals(f);
  CHECK(r.cubic_norm < 1e-14);
  CHECK(r.vortex_norm < 1e-14);
  CHECK(std::isnan(pair_half_separation(s.vortices)));
}

TEST_CASE("pair bookkeeping") {
  CHECK(pair_half_separation(SymmetricPair{0.7, -1.0, 0.2}.to_set()) == doctest::Approx(0.7));
  CHECK(std::isnan(pair_half_separation(VortexSet{{cplx(0.0, -1.0)}, {1.0}})));
}

TEST_CASE("sizes scale with the amplitude") {
  const PeriodicGrid g(256);
  std::vector<double> eps, triple, energy;
  for (double e : {2e-3, 1e-3, 5e-4}) {
    const ScenarioConfig c = small(e, false);
    const Flow f(g, initial_state(g, c), c.evolution);
    eps.push_back(e);
    triple.push_back(sobolev_triple(f).max());
    energy.push_back(energy_lagrangian(f).total);
    CHECK(energy.back() > 0.0);
  }
  CHECK(loglog_slope(eps, triple) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(loglog_slope(eps, energy) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("D_t theta matches finite differences along the flow") {
  const ScenarioConfig c = small(1e-2, true);
  const PeriodicGrid g(c.n, c.half_period);
  const SurfaceState s0 = initial_state(g, c);
  EvolutionConfig ev = c.evolution;
  ev.dt = 1e-3;
  const SurfaceState s1 = step(g, s0, ev), s2 = step(g, s1, ev);
  const Flow f(g, s0, ev);
  const CField th0 = theta(g, s0);
  const CField fd = (-3.0 * th0 + 4.0 * theta(g, s1) - theta(g, s2)) / (2.0 * ev.dt) +
                    CField(f.b().cast<cplx>().cwiseProduct(fourier_derivative(g, th0)));
  const CField dt = dt_theta(f);
  CHECK((dt - fd).cwiseAbs().maxCoeff() < 1e-5 * dt.cwiseAbs().maxCoeff());
}

TEST_CASE("a_t / a matches finite differences of A") {
  const ScenarioConfig c = small(1e-2, true);
  const PeriodicGrid g(c.n, c.half_period);
  const SurfaceState s0 = initial_state(g, c);
  const SurfaceState s1 = step(g, s0, c.evolution), s2 = step(g, s1, c.evolution);
  const Flow mid(g, s1, c.evolution);
  const RField& A = mid.A();
  const RField& b = mid.b();
  const RField fd = ((Flow(g, s2, c.evolution).A() - Flow(g, s0, c.evolution).A()) / (2.0 * c.evolution.dt))
                        .cwiseQuotient(A) +
                    RField(b.array() * fourier_derivative(g, A).array() / A.array()) - fourier_derivative(g, b);
  const RField at = quasilinear_at(mid).at_over_a;
  CHECK((at - fd).cwiseAbs().maxCoeff() < 1e-4 * at.cwiseAbs().maxCoeff());
}

TEST_CASE("records carry finite diagnostics") {
  const ScenarioConfig c = small(1e-3, true);
  const PeriodicGrid g(c.n, c.half_period);
  const SurfaceState s = initial_state(g, c);
  const DiagnosticsRecord r = make_record(g, s, c.evolution, DiagnosticsOptions{}, 0.5);
  for (double v : {r.E_lagrangian, r.E_s, r.d_I, r.d_P, r.x_ratio, r.taylor_margin, r.C1, r.C2, r.symmetry_residual,
                   r.gc_norm, r.gd_norm, r.at_over_a_sup, r.pair_ydot}) {
    CHECK(std::isfinite(v));
  }
  CHECK(r.x_ratio == doctest::Approx(1.0));
  CHECK(r.d_P == doctest::Approx(1.0));
  CHECK(r.C1 <= 1.0);
  CHECK(r.C2 >= 1.0);
  CHECK(r.taylor_margin > 0.0);
  CHECK(r.pair_ydot < 0.0);
}

TEST_CASE("long-time monitors") {
  PairRunParams p;
  p.lambda = -0.05;
  p.x0 = 0.05;
  const double rate = 0.05 / (20.0 * pi * 0.05);
  std::vector<DiagnosticsRecord> h = {record(0.0, 1.0, -0.05, 1.0, 1e-3), record(10.0, 1.1, -0.05, 1.01 + 10.0 * rate, 2e-3)};
  MonitorReport m = longtime_monitors(h, p);
  CHECK(m.applicable);
  CHECK(m.pass);
  CHECK(m.rate == doctest::Approx(rate));
  CHECK(m.max_triple == doctest::Approx(2e-3));

  h.push_back(record(20.0, 1.1, -0.001, 2.0, 2e-3));
  m = longtime_monitors(h, p);
  CHECK_FALSE(m.pass);
  CHECK_FALSE(m.ydot_ok);
  CHECK(m.d_i_ok);
  CHECK(m.first_violation_t == 20.0);
  CHECK(m.violation == "ydot");

  h.back() = record(20.0, 3.0, -0.05, 2.0, 6e-3);
  m = longtime_monitors(h, p);
  CHECK_FALSE(m.x_ratio_ok);
  CHECK_FALSE(m.bootstrap_ok);

  p.pair_hypotheses = false;
  CHECK_FALSE(longtime_monitors(h, p).applicable);
}
