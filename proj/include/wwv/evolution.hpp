#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wwv/vortex.hpp"

namespace wwv {

enum class HaltStatus {
  none,
  taylor_sign_failed,
  chord_arc_collapse,
  vortex_interface_contact,
  vortex_collision,
  picard_not_converged,
  solver_failure,
  non_finite,
};

const char* halt_status_name(HaltStatus s);
HaltStatus halt_status_from_name(const std::string& name);

class Halt : public Error {
 public:
  Halt(HaltStatus status, const std::string& what);
  HaltStatus status() const noexcept { return status_; }

 private:
  HaltStatus status_;
};

// Flattened-coordinate state: zeta with conj(zeta) - alpha holomorphic below,
// u = D_t zeta, and the vortex set.
struct SurfaceState {
  double t = 0.0;
  std::int64_t step = 0;
  CField zeta;
  CField u;
  VortexSet vortices;
};

struct EvolutionConfig {
  double dt = 0.05;
  double t_end = 1.0;
  double a_tolerance = 1e-12;
  int a_max_iterations = 50;
  // project onto the constraint set every this many steps; 0 disables
  int projection_cadence = 1;
  bool enforce_symmetry = false;
  double taylor_floor = 0.0;
  double chord_arc_floor = 1e-2;
  // in grid spacings
  double interface_floor = 2.0;
  double collision_floor = 1e-10;
  bool dealias = true;

  void validate() const;
};

// Everything derived from one state: the curve, q, the holomorphic part F of
// conj(u), vortex velocities, b and A. Expensive pieces are computed lazily.
class Flow {
 public:
  Flow(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg = {});

  const PeriodicGrid& grid() const { return curve_.grid(); }
  const SurfaceState& state() const { return state_; }
  const CurveTrace& curve() const { return curve_; }
  const CField& zeta_alpha() const { return curve_.z_alpha(); }
  const CField& q() const { return q_; }
  // conj(u) - q
  const CField& holo() const { return holo_; }
  // (conj(zeta_alpha) - 1) / zeta_alpha
  const CField& psi_zeta() const { return psi_zeta_; }
  const std::vector<cplx>& vortex_velocities() const { return zdot_; }

  const SecondKindSolver& solver() const;
  const RField& b() const;
  const RField& A() const;
  int a_iterations() const;
  // D_t^2 zeta = i A zeta_alpha - i
  const CField& accel() const;
  // D_t q and D_t F
  CField dt_q() const;
  CField dt_holo() const;
  const std::vector<cplx>& vortex_accelerations() const;
  RField dt_b() const;

  // (I - H) b minus its right-hand side, complex; the real part is solved exactly.
  double b_residual() const;

  // vortex term (1/2 pi) sum lambda_j (u - zdot_j) P2(zeta - z_j)
  CField vortex_a_term() const;

  CField product(const CField& f, const CField& g) const;

 private:
  SurfaceState state_;
  EvolutionConfig cfg_;
  CurveTrace curve_;
  CField q_;
  CField holo_;
  CField psi_zeta_;
  std::vector<cplx> zdot_;
  mutable std::optional<SecondKindSolver> solver_;
  mutable std::optional<RField> b_;
  mutable std::optional<RField> a_;
  mutable int a_iterations_ = 0;
  mutable std::optional<CField> accel_;
  mutable std::optional<std::vector<cplx>> zddot_;
  CField b_rhs() const;
};

RField compute_b(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg = {});

struct AResult {
  RField A;
  int iterations = 0;
};
AResult compute_A(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg = {});
RField compute_Dt_b(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg = {});

struct StateDerivative {
  CField dzeta;
  CField du;
  std::vector<cplx> dz;
};

// Time derivative of (zeta, u, z_j); throws Halt when a floor is crossed.
StateDerivative evolution_rhs(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg);

// One RK4 step followed by the configured projection and symmetry enforcement.
SurfaceState step(const PeriodicGrid& grid, const SurfaceState& state, const EvolutionConfig& cfg);

// Re-impose (I - H)(conj(zeta) - alpha) = 0 and (I - H) F = 0.
SurfaceState project_constraints(const PeriodicGrid& grid, const SurfaceState& state,
                                 double chord_arc_floor = CurveTrace::default_chord_arc_floor);

// Average with the mirror image alpha -> -alpha, conj-reflected.
SurfaceState symmetrize(const PeriodicGrid& grid, const SurfaceState& state);

// Largest deviation from mirror symmetry over zeta, u and the vortex pairing.
double symmetry_residual(const PeriodicGrid& grid, const SurfaceState& state);

struct ConstraintResidual {
  double coordinates = 0.0;  // ||(I - H)(conj(zeta) - alpha)||_2
  double holomorphic = 0.0;  // ||(I - H) F||_2
};
ConstraintResidual constraint_residual(const PeriodicGrid& grid, const SurfaceState& state);

// Halt checks on an accepted state (Taylor margin, chord-arc, separations).
struct HaltCheck {
  HaltStatus status = HaltStatus::none;
  std::string message;
};
HaltCheck check_halt(const Flow& flow, const EvolutionConfig& cfg);

struct InitialOptions {
  bool check_parity = true;
  double tolerance = 1e-13;
  // accepted once the iteration stops improving
  double stall_tolerance = 1e-8;
  int max_iterations = 60;
};

// Surface with elevation close to `elevation` (even, zero mean) satisfying the
// coordinate constraint, velocity from F = 1/2 (I + H) g for real odd g plus
// the vortex trace q.
SurfaceState build_initial_data(const PeriodicGrid& grid, const RField& elevation, const RField& g,
                                const VortexSet& vortices, const InitialOptions& opt = {});

// Mirror index of grid slot i: alpha_{mirror(i)} = -alpha_i modulo the period.
inline int mirror_index(int i, int n) { return (n - i) % n; }

}  // namespace wwv
