#pragma once

#include <string>
#include <vector>

#include "wwv/evolution.hpp"

namespace wwv {

// (||zeta_alpha - 1||_{H^s}, ||F||_{H^{s+1/2}}, ||D_t F||_{H^s})
struct SobolevTriple {
  double zeta_alpha = 0.0;
  double holo = 0.0;
  double dt_holo = 0.0;

  double max() const;
};
SobolevTriple sobolev_triple(const Flow& flow, double s = 4.0);

// Lagrangian energy on flat labels (the zeta labels are used as Lagrangian
// labels). `kinetic` is the u_t sum, `dirichlet` the boundary form of the
// Dirichlet integral of D^k F, which must be nonnegative.
struct LagrangianEnergy {
  double total = 0.0;
  double kinetic = 0.0;
  double dirichlet = 0.0;
};
LagrangianEnergy energy_lagrangian(const Flow& flow, int s = 4, double taylor_floor = 0.0);

// Flattened energy built from theta = (I - H)(zeta - conj zeta) and
// sigma = (I - H) D_t theta. D_t of the higher pieces is taken by centered
// differences over RK4 sub-steps of size `fd_step`, plus b d_alpha.
struct FlattenedEnergy {
  double value = 0.0;
  double comparison = 0.0;
};
FlattenedEnergy energy_Es(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg,
                          int s = 4, double fd_step = 1e-4);

// D_t theta from the commutator identity [D_t, H] f = [D_t zeta, H](f_alpha / zeta_alpha).
CField dt_theta(const Flow& flow);

struct CubicResiduals {
  CField cubic;   // G_c
  CField vortex;  // G_d
  double cubic_norm = 0.0;
  double vortex_norm = 0.0;
};
CubicResiduals cubic_residuals(const Flow& flow, double s = 4.0);

struct QuasilinearAt {
  CField g1;
  CField g2;
  RField at_speed;    // a_t |z_alpha| in zeta labels
  RField at_over_a;   // a_t / a in zeta labels
};
QuasilinearAt quasilinear_at(const Flow& flow);

struct DiagnosticsOptions {
  int s = 4;
  bool flattened_energy = true;
  bool residuals = true;
  bool at_monitor = true;
  double fd_step = 1e-4;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double E_lagrangian = 0.0;
  double E_s = 0.0;
  SobolevTriple triple;
  double d_I = 0.0;
  double d_P = 0.0;
  double x_ratio = 1.0;
  double taylor_margin = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double symmetry_residual = 0.0;
  double gc_norm = 0.0;
  double gd_norm = 0.0;
  double at_over_a_sup = 0.0;
  // pair bookkeeping for the long-time monitors
  double pair_x = 0.0;
  double pair_ydot = 0.0;
};

// Half-separation of a mirror pair; NaN when the set is not a pair.
double pair_half_separation(const VortexSet& vortices);

DiagnosticsRecord make_record(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg,
                              const DiagnosticsOptions& opt, double x0);

struct PairRunParams {
  double epsilon = 1e-3;
  double lambda = 0.0;
  double x0 = 0.0;
  // set when the run satisfies the mirror-pair hypotheses
  bool pair_hypotheses = true;
  double grid_tolerance = 0.0;
};

struct MonitorReport {
  bool applicable = true;
  bool pass = true;
  bool x_ratio_ok = true;
  bool ydot_ok = true;
  bool d_i_ok = true;
  bool bootstrap_ok = true;
  double first_violation_t = -1.0;
  std::string violation;
  double rate = 0.0;
  double min_x_ratio = 1.0;
  double max_x_ratio = 1.0;
  double max_ydot = 0.0;
  double min_di_margin = 0.0;
  double max_triple = 0.0;
  double gd_integral = 0.0;
};

MonitorReport longtime_monitors(const std::vector<DiagnosticsRecord>& history, const PairRunParams& params);

}  // namespace wwv
