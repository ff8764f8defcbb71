#include "wwv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wwv {

namespace {

CField derivative(const PeriodicGrid& grid, CField f, int order) {
  while (order > 0) {
    const int k = std::min(order, 4);
    f = fourier_derivative(grid, f, k);
    order -= k;
  }
  return f;
}

double integral(const PeriodicGrid& grid, const RField& f) { return grid.spacing() * f.sum(); }

CField anti_projection(const CurveTrace& curve, const CField& f) { return f - curve_hilbert(curve, f); }

}  // namespace

double SobolevTriple::max() const { return std::max({zeta_alpha, holo, dt_holo}); }

SobolevTriple sobolev_triple(const Flow& flow, double s) {
  const PeriodicGrid& grid = flow.grid();
  SobolevTriple t;
  CField za = flow.zeta_alpha();
  za.array() -= 1.0;
  t.zeta_alpha = sobolev_norm(grid, za, s);
  t.holo = sobolev_norm(grid, flow.holo(), s + 0.5);
  t.dt_holo = sobolev_norm(grid, flow.dt_holo(), s);
  return t;
}

LagrangianEnergy energy_lagrangian(const Flow& flow, int s, double taylor_floor) {
  if (s < 0 || s > 6) throw Error(ErrorCode::invalid_argument, "energy order must lie in [0, 6]");
  const PeriodicGrid& grid = flow.grid();
  const CField& za = flow.zeta_alpha();
  const RField& speed = flow.curve().speed();
  const RField a_speed = flow.A().cwiseProduct(speed);
  if (!(a_speed.minCoeff() > taylor_floor)) {
    throw Error(ErrorCode::invalid_argument, "a|z_alpha| is not above the Taylor floor");
  }
  const CField ut = flow.accel().conjugate();
  LagrangianEnergy e;
  CField dk = flow.holo();
  CField dk1 = (fourier_derivative(grid, dk).array() / za.array()).matrix();
  for (int k = 0; k <= s; ++k) {
    const CField uk = derivative(grid, ut, k);
    const RField weight = speed.array().pow(1.0 - 2.0 * k) / a_speed.array();
    e.kinetic += integral(grid, RField(weight.array() * uk.array().abs2()));
    const CField form = I * za.array() * dk1.array() * dk.conjugate().array();
    e.dirichlet += integral(grid, RField(form.real()));
    dk = dk1;
    dk1 = (fourier_derivative(grid, dk).array() / za.array()).matrix();
  }
  e.total = e.kinetic + e.dirichlet;
  return e;
}

CField dt_theta(const Flow& flow) {
  const CField& u = flow.state().u;
  const CField& za = flow.zeta_alpha();
  const CField diff = u - u.conjugate();
  const CField g = ((za - za.conjugate()).array() / za.array()).matrix();
  return anti_projection(flow.curve(), diff) - commutator(flow.curve(), u, g);
}

namespace {

struct EnergyPieces {
  std::vector<CField> theta;  // (I - H) d^k theta~
  std::vector<CField> sigma;  // (I - H) d^k sigma~
  CField theta_tilde;
  CField sigma_tilde;
  CField dt_theta_tilde;
};

EnergyPieces energy_pieces(const Flow& flow, int s) {
  const PeriodicGrid& grid = flow.grid();
  const CurveTrace& curve = flow.curve();
  const CField& zeta = flow.state().zeta;
  EnergyPieces p;
  p.theta_tilde = anti_projection(curve, CField(zeta - zeta.conjugate()));
  p.dt_theta_tilde = dt_theta(flow);
  p.sigma_tilde = anti_projection(curve, p.dt_theta_tilde);
  for (int k = 0; k <= s; ++k) {
    p.theta.push_back(anti_projection(curve, derivative(grid, p.theta_tilde, k)));
    p.sigma.push_back(anti_projection(curve, derivative(grid, p.sigma_tilde, k)));
  }
  return p;
}

}  // namespace

FlattenedEnergy energy_Es(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg, int s,
                          double fd_step) {
  if (s < 0 || s > 6) throw Error(ErrorCode::invalid_argument, "energy order must lie in [0, 6]");
  if (!(fd_step > 0.0)) throw Error(ErrorCode::invalid_argument, "difference step must be positive");
  EvolutionConfig sub = cfg;
  sub.projection_cadence = 0;
  sub.enforce_symmetry = false;
  sub.dt = fd_step;
  const SurfaceState ahead = step(grid, state, sub);
  sub.dt = -fd_step;
  const SurfaceState behind = step(grid, state, sub);

  const Flow flow(grid, state, cfg);
  const RField& A = flow.A();
  if (!(A.minCoeff() > 0.0)) throw Error(ErrorCode::invalid_argument, "A must be positive for the flattened energy");
  const EnergyPieces now = energy_pieces(flow, s);
  const EnergyPieces next = energy_pieces(Flow(grid, ahead, cfg), s);
  const EnergyPieces prev = energy_pieces(Flow(grid, behind, cfg), s);
  const CField b = to_complex(flow.b());
  auto material = [&](const CField& plus, const CField& minus, const CField& mid) {
    return CField((plus - minus) / (2.0 * fd_step) + b.cwiseProduct(fourier_derivative(grid, mid)));
  };
  auto piece = [&](const CField& f, const CField& dtf) {
    const RField kinetic = dtf.array().abs2() / A.array();
    const CField form = I * f.array() * fourier_derivative(grid, f).conjugate().array();
    return integral(grid, kinetic) + integral(grid, RField(form.real()));
  };

  FlattenedEnergy e;
  for (int k = 0; k <= s; ++k) {
    e.value += piece(now.theta[k], material(next.theta[k], prev.theta[k], now.theta[k]));
    e.value += piece(now.sigma[k], material(next.sigma[k], prev.sigma[k], now.sigma[k]));
  }
  const CField dt_sigma = material(next.sigma_tilde, prev.sigma_tilde, now.sigma_tilde);
  e.comparison = 4.0 * (derivative_sum_norm_sq(grid, now.dt_theta_tilde, s) + derivative_sum_norm_sq(grid, dt_sigma, s) +
                        derivative_sum_norm_sq(grid, half_derivative(grid, now.theta_tilde), s) +
                        derivative_sum_norm_sq(grid, half_derivative(grid, now.sigma_tilde), s));
  return e;
}

CubicResiduals cubic_residuals(const Flow& flow, double s) {
  const PeriodicGrid& grid = flow.grid();
  const CurveTrace& curve = flow.curve();
  const CField& za = flow.zeta_alpha();
  const CField& u = flow.state().u;
  const CField fbar = flow.holo().conjugate();
  const CField qbar = flow.q().conjugate();
  const CField fbar_a = fourier_derivative(grid, fbar);
  const CField qbar_a = fourier_derivative(grid, qbar);
  const CField f_a = fbar_a.conjugate();
  auto over_za = [&](const CField& f) { return CField(f.array() / za.array()); };

  CubicResiduals r;
  // [conj F, H](conj F_a / zeta_a) plus its counterpart with the conjugate transform
  const CField c1 = commutator(curve, fbar, over_za(fbar_a)) +
                    commutator(curve, flow.holo(), over_za(f_a)).conjugate();
  r.cubic = -2.0 * c1 + squared_difference_integral(curve, u, CField(za - za.conjugate()));
  r.vortex = -2.0 * commutator(curve, qbar, over_za(fbar_a)) - 2.0 * commutator(curve, fbar, over_za(qbar_a)) -
             2.0 * commutator(curve, qbar, over_za(qbar_a)) - 4.0 * flow.dt_q();
  r.cubic_norm = sobolev_norm(grid, r.cubic, s);
  r.vortex_norm = sobolev_norm(grid, r.vortex, s);
  return r;
}

QuasilinearAt quasilinear_at(const Flow& flow) {
  const PeriodicGrid& grid = flow.grid();
  const CurveTrace& curve = flow.curve();
  const CField& za = flow.zeta_alpha();
  const CField& u = flow.state().u;
  const CField& w = flow.accel();
  const VortexSet& vortices = flow.state().vortices;
  const double L = grid.half_period();

  const CField ubar_a = fourier_derivative(grid, CField(u.conjugate()));
  const CField wbar_a = fourier_derivative(grid, CField(w.conjugate()));
  QuasilinearAt out;
  out.g1 = 2.0 * commutator(curve, w, CField(ubar_a.array() / za.array())) +
           2.0 * commutator(curve, u, CField(wbar_a.array() / za.array())) -
           squared_difference_integral(curve, u, ubar_a);

  out.g2 = CField::Zero(grid.size());
  if (!vortices.empty()) {
    const std::vector<cplx>& zdot = flow.vortex_velocities();
    const std::vector<cplx>& zddot = flow.vortex_accelerations();
    for (std::size_t j = 0; j < vortices.size(); ++j) {
      const cplx c = I / pi * vortices.strengths[j];
      for (Eigen::Index i = 0; i < out.g2.size(); ++i) {
        const cplx d = flow.state().zeta[i] - vortices.positions[j];
        const cplx rel = u[i] - zdot[j];
        out.g2[i] += c * ((2.0 * w[i] + I - zddot[j]) * inverse_square(d, L) - 2.0 * rel * rel * inverse_cube(d, L));
      }
    }
  }
  const RField& speed = curve.speed();
  const CField unit = (I * za.array() / speed.array().cast<cplx>()).matrix();
  const RField rhs = (unit.array() * (out.g1 + out.g2).array()).real();
  out.at_speed = solve_second_kind(curve, SecondKind::i_plus_kstar, rhs);
  out.at_over_a = out.at_speed.array() / (flow.A().array() * speed.array());
  return out;
}

double pair_half_separation(const VortexSet& v) {
  if (v.size() != 2) return std::numeric_limits<double>::quiet_NaN();
  return 0.5 * std::abs(v.positions[1].real() - v.positions[0].real());
}

DiagnosticsRecord make_record(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg,
                              const DiagnosticsOptions& opt, double x0) {
  const Flow flow(grid, state, cfg);
  DiagnosticsRecord r;
  r.t = state.t;
  r.E_lagrangian = energy_lagrangian(flow, opt.s, cfg.taylor_floor).total;
  if (opt.flattened_energy) r.E_s = energy_Es(grid, state, cfg, opt.s, opt.fd_step).value;
  r.triple = sobolev_triple(flow, opt.s);
  const Separations sep = separations(flow.curve(), state.vortices);
  r.d_I = sep.d_interface;
  r.d_P = sep.d_pair;
  r.pair_x = pair_half_separation(state.vortices);
  r.x_ratio = x0 > 0.0 ? r.pair_x / x0 : std::numeric_limits<double>::quiet_NaN();
  r.pair_ydot = state.vortices.empty() ? 0.0 : flow.vortex_velocities()[0].imag();
  r.taylor_margin = (flow.A().array() * flow.curve().speed().array()).minCoeff();
  r.C1 = flow.curve().chord_arc().lower;
  r.C2 = flow.curve().chord_arc().upper;
  r.symmetry_residual = symmetry_residual(grid, state);
  if (opt.residuals) {
    const CubicResiduals c = cubic_residuals(flow, opt.s);
    r.gc_norm = c.cubic_norm;
    r.gd_norm = c.vortex_norm;
  }
  if (opt.at_monitor) r.at_over_a_sup = quasilinear_at(flow).at_over_a.cwiseAbs().maxCoeff();
  return r;
}

MonitorReport longtime_monitors(const std::vector<DiagnosticsRecord>& history, const PairRunParams& params) {
  MonitorReport rep;
  rep.applicable = params.pair_hypotheses && params.x0 > 0.0 && params.lambda < 0.0;
  rep.rate = std::abs(params.lambda) / (20.0 * pi * params.x0);
  rep.min_x_ratio = std::numeric_limits<double>::infinity();
  rep.max_x_ratio = -std::numeric_limits<double>::infinity();
  rep.max_ydot = -std::numeric_limits<double>::infinity();
  rep.min_di_margin = std::numeric_limits<double>::infinity();
  auto fail = [&](double t, const std::string& what) {
    if (rep.pass) {
      rep.pass = false;
      rep.first_violation_t = t;
      rep.violation = what;
    }
  };
  for (std::size_t i = 0; i < history.size(); ++i) {
    const DiagnosticsRecord& r = history[i];
    rep.min_x_ratio = std::min(rep.min_x_ratio, r.x_ratio);
    rep.max_x_ratio = std::max(rep.max_x_ratio, r.x_ratio);
    rep.max_ydot = std::max(rep.max_ydot, r.pair_ydot);
    const double margin = r.d_I - 1.0 - rep.rate * r.t;
    rep.min_di_margin = std::min(rep.min_di_margin, margin);
    rep.max_triple = std::max(rep.max_triple, r.triple.max());
    if (i > 0) rep.gd_integral += 0.5 * (r.t - history[i - 1].t) * (r.gd_norm + history[i - 1].gd_norm);
    if (!rep.applicable) continue;
    if (!(r.x_ratio >= 0.5 && r.x_ratio <= 2.0)) {
      rep.x_ratio_ok = false;
      fail(r.t, "x_ratio");
    }
    if (!(r.pair_ydot <= -rep.rate)) {
      rep.ydot_ok = false;
      fail(r.t, "ydot");
    }
    if (!(margin >= -params.grid_tolerance)) {
      rep.d_i_ok = false;
      fail(r.t, "d_I");
    }
    if (!(r.triple.max() <= 5.0 * params.epsilon)) {
      rep.bootstrap_ok = false;
      fail(r.t, "bootstrap");
    }
  }
  if (!rep.applicable) rep.pass = false;
  return rep;
}

}  // namespace wwv
