#include "wwv/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace wwv {

const char* halt_status_name(HaltStatus s) {
  switch (s) {
    case HaltStatus::none: return "ok";
    case HaltStatus::taylor_sign_failed: return "taylor_sign_failed";
    case HaltStatus::chord_arc_collapse: return "chord_arc_collapse";
    case HaltStatus::vortex_interface_contact: return "vortex_interface_contact";
    case HaltStatus::vortex_collision: return "vortex_collision";
    case HaltStatus::picard_not_converged: return "picard_not_converged";
    case HaltStatus::solver_failure: return "solver_failure";
    case HaltStatus::non_finite: return "non_finite";
  }
  return "unknown";
}

HaltStatus halt_status_from_name(const std::string& name) {
  for (HaltStatus s : {HaltStatus::none, HaltStatus::taylor_sign_failed, HaltStatus::chord_arc_collapse,
                       HaltStatus::vortex_interface_contact, HaltStatus::vortex_collision,
                       HaltStatus::picard_not_converged, HaltStatus::solver_failure, HaltStatus::non_finite}) {
    if (name == halt_status_name(s)) return s;
  }
  throw Error(ErrorCode::invalid_argument, "unknown halt status '" + name + "'");
}

Halt::Halt(HaltStatus status, const std::string& what)
    : Error(ErrorCode::invalid_argument, what), status_(status) {}

namespace {

HaltStatus halt_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::chord_arc: return HaltStatus::chord_arc_collapse;
    case ErrorCode::near_boundary: return HaltStatus::vortex_interface_contact;
    case ErrorCode::collision: return HaltStatus::vortex_collision;
    case ErrorCode::not_converged: return HaltStatus::picard_not_converged;
    case ErrorCode::non_finite: return HaltStatus::non_finite;
    default: return HaltStatus::solver_failure;
  }
}

template <class Fn>
auto as_halt(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Halt&) {
    throw;
  } catch (const Error& e) {
    throw Halt(halt_for(e.code()), e.what());
  }
}

VortexFloors floors_of(const EvolutionConfig& cfg) {
  VortexFloors f;
  f.near_spacings = cfg.interface_floor;
  f.collision = cfg.collision_floor;
  return f;
}

void check_state(const PeriodicGrid& grid, const SurfaceState& s) {
  if (s.zeta.size() != grid.size() || s.u.size() != grid.size()) {
    throw Error(ErrorCode::invalid_argument, "state fields do not match the grid");
  }
  require_finite(s.zeta, "zeta");
  require_finite(s.u, "u");
  s.vortices.validate();
}

}  // namespace

void EvolutionConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::config, "dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::config, "t_end must be non-negative");
  if (!(a_tolerance > 0.0)) throw Error(ErrorCode::config, "A tolerance must be positive");
  if (a_max_iterations < 1) throw Error(ErrorCode::config, "A iteration cap must be at least 1");
  if (projection_cadence < 0) throw Error(ErrorCode::config, "projection cadence must be >= 0");
  if (!(chord_arc_floor > 0.0) || !(interface_floor > 0.0) || !(collision_floor > 0.0)) {
    throw Error(ErrorCode::config, "halt floors must be positive");
  }
}

Flow::Flow(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg)
    : state_(state), cfg_(cfg), curve_((check_state(grid, state), grid), state.zeta, cfg.chord_arc_floor) {
  q_ = vortex_trace(curve_, state_.vortices);
  holo_ = state_.u.conjugate() - q_;
  psi_zeta_ = (curve_.z_alpha().conjugate().array() - 1.0) / curve_.z_alpha().array();
  zdot_ = wwv::vortex_velocities(curve_, state_.u, state_.vortices, floors_of(cfg_));
}

CField Flow::product(const CField& f, const CField& g) const {
  return cfg_.dealias ? grid().dealiased_product(f, g) : CField(f.cwiseProduct(g));
}

const SecondKindSolver& Flow::solver() const {
  if (!solver_) solver_.emplace(curve_, SecondKind::i_minus_k);
  return *solver_;
}

CField Flow::b_rhs() const { return 2.0 * q_ - commutator(curve_, state_.u, psi_zeta_); }

const RField& Flow::b() const {
  if (!b_) b_ = solver().solve(b_rhs().real());
  return *b_;
}

double Flow::b_residual() const {
  const CField bc = to_complex(b());
  const CField lhs = bc - curve_hilbert(curve_, bc);
  return l2_norm(grid(), CField(lhs - b_rhs()));
}

CField Flow::vortex_a_term() const {
  const double L = grid().half_period();
  CField v = CField::Zero(grid().size());
  for (std::size_t j = 0; j < state_.vortices.size(); ++j) {
    const double lam = state_.vortices.strengths[j];
    const cplx zj = state_.vortices.positions[j];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i] += lam / (2.0 * pi) * (state_.u[i] - zdot_[j]) * inverse_square(state_.zeta[i] - zj, L);
    }
  }
  return v;
}

const RField& Flow::A() const {
  if (a_) return *a_;
  const CField& za = curve_.z_alpha();
  const CField holo_a = fourier_derivative(grid(), holo_);
  const CField fixed_part = I * commutator(curve_, state_.u, CField(holo_a.array() / za.array()));
  const CField v = vortex_a_term();
  const CField vortex_part = v - curve_hilbert(curve_, v);
  RField a = RField::Ones(grid().size());
  for (int it = 1; it <= cfg_.a_max_iterations; ++it) {
    const CField w = I * (a.cast<cplx>().cwiseProduct(za).array() - 1.0).matrix();
    CField rhs = fixed_part + I * commutator(curve_, w, psi_zeta_) - vortex_part;
    rhs.array() += 1.0;
    RField next = solver().solve(rhs.real());
    require_finite(next, "A iterate");
    const double change = (next - a).cwiseAbs().maxCoeff();
    a = std::move(next);
    if (change <= cfg_.a_tolerance) {
      a_iterations_ = it;
      a_ = std::move(a);
      return *a_;
    }
  }
  throw Halt(HaltStatus::picard_not_converged,
             "A iteration did not converge in " + std::to_string(cfg_.a_max_iterations) + " iterations");
}

int Flow::a_iterations() const {
  A();
  return a_iterations_;
}

const CField& Flow::accel() const {
  if (!accel_) {
    CField w = I * A().cast<cplx>().cwiseProduct(curve_.z_alpha());
    w.array() -= I;
    accel_ = std::move(w);
  }
  return *accel_;
}

CField Flow::dt_q() const {
  const double L = grid().half_period();
  CField out = CField::Zero(grid().size());
  for (std::size_t j = 0; j < state_.vortices.size(); ++j) {
    const cplx c = state_.vortices.strengths[j] * I / (2.0 * pi);
    const cplx zj = state_.vortices.positions[j];
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      out[i] += c * inverse_square(state_.zeta[i] - zj, L) * (state_.u[i] - zdot_[j]);
    }
  }
  return out;
}

CField Flow::dt_holo() const { return accel().conjugate() - dt_q(); }

const std::vector<cplx>& Flow::vortex_accelerations() const {
  if (!zddot_) {
    const CField fz = (fourier_derivative(grid(), holo_).array() / curve_.z_alpha().array()).matrix();
    const CField ft = dt_holo() - fz.cwiseProduct(state_.u);
    std::vector<cplx> out(state_.vortices.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = vortex_acceleration(curve_, fz, ft, state_.vortices, zdot_, j, floors_of(cfg_));
    }
    zddot_ = std::move(out);
  }
  return *zddot_;
}

RField Flow::dt_b() const {
  const CField& za = curve_.z_alpha();
  const CField& u = state_.u;
  const CField b_a = fourier_derivative(grid(), to_complex(b()));
  const CField ubar_a = fourier_derivative(grid(), CField(u.conjugate()));
  CField rhs = commutator(curve_, u, CField(b_a.array() / za.array())) -
               commutator(curve_, accel(), psi_zeta_) -
               commutator(curve_, u, CField(ubar_a.array() / za.array())) +
               squared_difference_integral(curve_, u, CField(za.conjugate().array() - 1.0));
  const double L = grid().half_period();
  for (std::size_t j = 0; j < state_.vortices.size(); ++j) {
    const double lam = state_.vortices.strengths[j];
    const cplx zj = state_.vortices.positions[j];
    for (Eigen::Index i = 0; i < rhs.size(); ++i) {
      rhs[i] += I / pi * lam * (u[i] - zdot_[j]) * inverse_square(state_.zeta[i] - zj, L);
    }
  }
  return solver().solve(rhs.real());
}

RField compute_b(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg) {
  return Flow(grid, state, cfg).b();
}

AResult compute_A(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg) {
  Flow flow(grid, state, cfg);
  AResult r;
  r.A = flow.A();
  r.iterations = flow.a_iterations();
  return r;
}

RField compute_Dt_b(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg) {
  return Flow(grid, state, cfg).dt_b();
}

HaltCheck check_halt(const Flow& flow, const EvolutionConfig& cfg) {
  HaltCheck out;
  try {
    const double margin = (flow.A().array() * flow.curve().speed().array()).minCoeff();
    if (!(margin > cfg.taylor_floor)) {
      out.status = HaltStatus::taylor_sign_failed;
      out.message = "min A|zeta_alpha| = " + std::to_string(margin);
      return out;
    }
    const Separations sep = separations(flow.curve(), flow.state().vortices);
    if (sep.d_interface < cfg.interface_floor * flow.grid().spacing()) {
      out.status = HaltStatus::vortex_interface_contact;
      out.message = "d_I = " + std::to_string(sep.d_interface);
    } else if (sep.d_pair < cfg.collision_floor) {
      out.status = HaltStatus::vortex_collision;
      out.message = "d_P = " + std::to_string(sep.d_pair);
    }
  } catch (const Halt& h) {
    out.status = h.status();
    out.message = h.what();
  } catch (const Error& e) {
    out.status = halt_for(e.code());
    out.message = e.what();
  }
  return out;
}

StateDerivative evolution_rhs(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg) {
  return as_halt([&] {
    Flow flow(grid, state, cfg);
    const double margin = (flow.A().array() * flow.curve().speed().array()).minCoeff();
    if (!(margin > cfg.taylor_floor)) {
      throw Halt(HaltStatus::taylor_sign_failed, "min A|zeta_alpha| = " + std::to_string(margin));
    }
    const CField b = to_complex(flow.b());
    StateDerivative d;
    d.dzeta = state.u - flow.product(b, flow.zeta_alpha());
    d.du = flow.accel() - flow.product(b, fourier_derivative(grid, state.u));
    d.dz = flow.vortex_velocities();
    return d;
  });
}

namespace {

SurfaceState advance(const SurfaceState& s, const StateDerivative& d, double h) {
  SurfaceState out = s;
  out.zeta += h * d.dzeta;
  out.u += h * d.du;
  for (std::size_t j = 0; j < out.vortices.size(); ++j) out.vortices.positions[j] += h * d.dz[j];
  return out;
}

}  // namespace

SurfaceState step(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg) {
  const double dt = cfg.dt;
  const StateDerivative k1 = evolution_rhs(grid, state, cfg);
  const StateDerivative k2 = evolution_rhs(grid, advance(state, k1, 0.5 * dt), cfg);
  const StateDerivative k3 = evolution_rhs(grid, advance(state, k2, 0.5 * dt), cfg);
  const StateDerivative k4 = evolution_rhs(grid, advance(state, k3, dt), cfg);
  SurfaceState next = state;
  next.zeta += dt / 6.0 * (k1.dzeta + 2.0 * k2.dzeta + 2.0 * k3.dzeta + k4.dzeta);
  next.u += dt / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
  for (std::size_t j = 0; j < next.vortices.size(); ++j) {
    next.vortices.positions[j] += dt / 6.0 * (k1.dz[j] + 2.0 * k2.dz[j] + 2.0 * k3.dz[j] + k4.dz[j]);
  }
  next.t = state.t + dt;
  next.step = state.step + 1;
  return as_halt([&] {
    if (cfg.projection_cadence > 0 && next.step % cfg.projection_cadence == 0) {
      next = project_constraints(grid, next, cfg.chord_arc_floor);
    }
    if (cfg.enforce_symmetry) next = symmetrize(grid, next);
    check_state(grid, next);
    return next;
  });
}

SurfaceState project_constraints(const PeriodicGrid& grid, const SurfaceState& state, double chord_arc_floor) {
  const CField alpha = to_complex(grid.points());
  const CurveTrace before(grid, state.zeta, chord_arc_floor);
  const CField holo = state.u.conjugate() - vortex_trace(before, state.vortices);
  const CField x = holomorphic_part(before, CField((state.zeta - alpha).conjugate()));
  SurfaceState out = state;
  out.zeta = alpha + x.conjugate();
  const CurveTrace after(grid, out.zeta, chord_arc_floor);
  const CField holo_new = holomorphic_part(after, holo);
  out.u = (holo_new + vortex_trace(after, state.vortices)).conjugate();
  return out;
}

namespace {

std::vector<std::size_t> mirror_partners(const VortexSet& v) {
  std::vector<std::size_t> partner(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double d = std::abs(v.positions[k] + std::conj(v.positions[j]));
      if (d < best) {
        best = d;
        partner[j] = k;
      }
    }
  }
  return partner;
}

}  // namespace

SurfaceState symmetrize(const PeriodicGrid& grid, const SurfaceState& state) {
  const int n = grid.size();
  const CField alpha = to_complex(grid.points());
  const CField x = state.zeta - alpha;
  SurfaceState out = state;
  for (int i = 0; i < n; ++i) {
    const int m = mirror_index(i, n);
    out.zeta[i] = alpha[i] + 0.5 * (x[i] - std::conj(x[m]));
    out.u[i] = 0.5 * (state.u[i] - std::conj(state.u[m]));
  }
  const std::vector<std::size_t> partner = mirror_partners(state.vortices);
  for (std::size_t j = 0; j < partner.size(); ++j) {
    out.vortices.positions[j] =
        0.5 * (state.vortices.positions[j] - std::conj(state.vortices.positions[partner[j]]));
  }
  return out;
}

double symmetry_residual(const PeriodicGrid& grid, const SurfaceState& state) {
  const int n = grid.size();
  const CField x = state.zeta - to_complex(grid.points());
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    const int m = mirror_index(i, n);
    r = std::max(r, std::abs(x[m] + std::conj(x[i])));
    r = std::max(r, std::abs(state.u[m] + std::conj(state.u[i])));
  }
  const std::vector<std::size_t> partner = mirror_partners(state.vortices);
  for (std::size_t j = 0; j < partner.size(); ++j) {
    const std::size_t k = partner[j];
    r = std::max(r, std::abs(state.vortices.positions[k] + std::conj(state.vortices.positions[j])));
    r = std::max(r, std::abs(state.vortices.strengths[k] + state.vortices.strengths[j]));
  }
  return r;
}

ConstraintResidual constraint_residual(const PeriodicGrid& grid, const SurfaceState& state) {
  const CurveTrace curve(grid, state.zeta);
  const CField x = (state.zeta - to_complex(grid.points())).conjugate();
  const CField holo = state.u.conjugate() - vortex_trace(curve, state.vortices);
  ConstraintResidual r;
  r.coordinates = l2_norm(grid, CField(x - curve_hilbert(curve, x)));
  r.holomorphic = l2_norm(grid, CField(holo - curve_hilbert(curve, holo)));
  return r;
}

SurfaceState build_initial_data(const PeriodicGrid& grid, const RField& elevation, const RField& g,
                                const VortexSet& vortices, const InitialOptions& opt) {
  const int n = grid.size();
  if (elevation.size() != n || g.size() != n) {
    throw Error(ErrorCode::invalid_argument, "initial data does not match the grid");
  }
  require_finite(elevation, "elevation");
  require_finite(g, "g");
  vortices.validate();
  if (opt.check_parity) {
    const double scale = 1.0 + elevation.cwiseAbs().maxCoeff() + g.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      const int m = mirror_index(i, n);
      if (std::abs(elevation[i] - elevation[m]) > 1e-12 * scale) {
        throw Error(ErrorCode::invalid_argument, "elevation must be even");
      }
      if (std::abs(g[i] + g[m]) > 1e-12 * scale) throw Error(ErrorCode::invalid_argument, "g must be odd");
    }
    for (std::size_t j = 0; j < vortices.size(); ++j) {
      bool found = false;
      for (std::size_t k = 0; k < vortices.size(); ++k) {
        if (std::abs(vortices.positions[k] + std::conj(vortices.positions[j])) <= 1e-12 &&
            std::abs(vortices.strengths[k] + vortices.strengths[j]) <= 1e-12) {
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::invalid_argument, "vortices must form mirror pairs of opposite strength");
    }
  }

  const CField alpha = to_complex(grid.points());
  RField eta = elevation.array() - elevation.mean();
  CField zeta = alpha + I * (to_complex(eta) - flat_hilbert(grid, to_complex(eta)));
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    const CurveTrace curve(grid, zeta);
    const CField x = (zeta - alpha).conjugate();
    const double res = l2_norm(grid, CField(x - curve_hilbert(curve, x))) / (1.0 + l2_norm(grid, x));
    if (res <= opt.tolerance) break;
    // under-resolved data stalls at a discretization floor
    if (res > 0.99 * prev && res <= opt.stall_tolerance) break;
    prev = res;
    if (it >= opt.max_iterations) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "coordinate constraint iteration did not converge (relative residual %.3e)", res);
      throw Error(ErrorCode::not_converged, msg);
    }
    zeta = alpha + holomorphic_part(curve, x).conjugate();
  }
  const CurveTrace curve(grid, zeta);
  const CField holo = holomorphic_part(curve, to_complex(g));
  SurfaceState s;
  s.zeta = zeta;
  s.u = (holo + vortex_trace(curve, vortices)).conjugate();
  s.vortices = vortices;
  return s;
}

}  // namespace wwv
