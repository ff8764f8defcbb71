#pragma once

#include <limits>
#include <vector>

#include "wwv/singular.hpp"

namespace wwv {

struct VortexSet {
  std::vector<cplx> positions;
  std::vector<double> strengths;

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
  void validate() const;
};

// Mirror pair: z1 = -x + iy carries lambda, z2 = x + iy carries -lambda.
struct SymmetricPair {
  double x = 0.0;
  double y = 0.0;
  double lambda = 0.0;

  VortexSet to_set() const;
  void validate() const;
};

// Periodized point-vortex kernel (pi/2L)(cot(pi w/2L) + i): behaves like 1/w
// near 0, decays as Im w -> +inf and tends to i pi/L as Im w -> -inf.
cplx vortex_kernel(cplx w, double half_period);
// Symmetric variant (pi/2L) cot(pi w/2L), odd in w.
cplx vortex_kernel_symmetric(cplx w, double half_period);
// Periodized 1/w^2 and 1/w^3.
cplx inverse_square(cplx w, double half_period);
cplx inverse_cube(cplx w, double half_period);

// q = -sum_j (lambda_j i / 2 pi) K(z - z_j) sampled on the curve.
CField vortex_trace(const CurveTrace& curve, const VortexSet& vortices);
// Same with the symmetric kernel.
CField vortex_trace_symmetric(const CurveTrace& curve, const VortexSet& vortices);

// Conjugate velocity of the vortex field at an interior point w, excluding
// vortex `skip` (pass -1 to include all).
cplx vortex_field(const VortexSet& vortices, cplx w, double half_period, int skip = -1);

struct Separations {
  double d_interface = 0.0;
  double d_pair = std::numeric_limits<double>::infinity();
};

Separations separations(const CurveTrace& curve, const VortexSet& vortices);

struct VortexFloors {
  double near_spacings = 2.0;
  double collision = 1e-10;
};

// Velocity of vortex j from the material velocity trace u = D_t z. The
// holomorphic part is recovered by Cauchy integral of conj(u) minus the
// symmetric vortex trace, so a lone vortex in its own periodic field is at rest.
cplx vortex_velocity(const CurveTrace& curve, const CField& velocity_trace, const VortexSet& vortices,
                     std::size_t j, const VortexFloors& floors = {});
std::vector<cplx> vortex_velocities(const CurveTrace& curve, const CField& velocity_trace,
                                    const VortexSet& vortices, const VortexFloors& floors = {});

// Acceleration of vortex j from the boundary traces of F_z and F_t.
cplx vortex_acceleration(const CurveTrace& curve, const CField& fz_trace, const CField& ft_trace,
                         const VortexSet& vortices, const std::vector<cplx>& velocities, std::size_t j,
                         const VortexFloors& floors = {});

}  // namespace wwv
