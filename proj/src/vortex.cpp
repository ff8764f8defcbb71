#include "wwv/vortex.hpp"

#include <cmath>

namespace wwv {

void VortexSet::validate() const {
  if (positions.size() != strengths.size()) {
    throw Error(ErrorCode::invalid_argument, "vortex positions and strengths differ in length");
  }
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (!std::isfinite(positions[j].real()) || !std::isfinite(positions[j].imag()) ||
        !std::isfinite(strengths[j])) {
      throw Error(ErrorCode::non_finite, "vortex " + std::to_string(j) + " is not finite");
    }
  }
}

VortexSet SymmetricPair::to_set() const {
  validate();
  return VortexSet{{cplx(-x, y), cplx(x, y)}, {lambda, -lambda}};
}

void SymmetricPair::validate() const {
  if (!(x > 0.0) || !(y < 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::invalid_argument, "pair needs x > 0, y < 0 and finite strength");
  }
}

cplx vortex_kernel(cplx w, double half_period) {
  const double s = pi / (2.0 * half_period);
  return s * (cot(s * w) + I);
}

cplx vortex_kernel_symmetric(cplx w, double half_period) {
  const double s = pi / (2.0 * half_period);
  return s * cot(s * w);
}

cplx inverse_square(cplx w, double half_period) {
  const double s = pi / (2.0 * half_period);
  const cplx c = cot(s * w);
  return s * s * (1.0 + c * c);
}

cplx inverse_cube(cplx w, double half_period) {
  const double s = pi / (2.0 * half_period);
  const cplx c = cot(s * w);
  return s * s * s * (1.0 + c * c) * c;
}

namespace {

CField trace_with(const CurveTrace& curve, const VortexSet& vortices, cplx (*kernel)(cplx, double)) {
  vortices.validate();
  const double L = curve.grid().half_period();
  CField q = CField::Zero(curve.grid().size());
  for (std::size_t j = 0; j < vortices.size(); ++j) {
    const cplx c = -vortices.strengths[j] * I / (2.0 * pi);
    for (Eigen::Index i = 0; i < q.size(); ++i) q[i] += c * kernel(curve.z()[i] - vortices.positions[j], L);
  }
  return q;
}

double periodic_gap(cplx a, cplx b, double period) {
  const cplx d = a - b;
  const double dx = d.real() - period * std::round(d.real() / period);
  return std::hypot(dx, d.imag());
}

void check_floors(const CurveTrace& curve, const VortexSet& vortices, const VortexFloors& floors) {
  const Separations sep = separations(curve, vortices);
  if (sep.d_interface < floors.near_spacings * curve.grid().spacing()) {
    throw Error(ErrorCode::near_boundary, "vortex within the near-boundary band (d_I = " +
                                              std::to_string(sep.d_interface) + ")");
  }
  if (sep.d_pair < floors.collision) {
    throw Error(ErrorCode::collision, "vortex collision (d_P = " + std::to_string(sep.d_pair) + ")");
  }
}

}  // namespace

CField vortex_trace(const CurveTrace& curve, const VortexSet& vortices) {
  return trace_with(curve, vortices, vortex_kernel);
}

CField vortex_trace_symmetric(const CurveTrace& curve, const VortexSet& vortices) {
  return trace_with(curve, vortices, vortex_kernel_symmetric);
}

cplx vortex_field(const VortexSet& vortices, cplx w, double half_period, int skip) {
  cplx acc = 0.0;
  for (std::size_t k = 0; k < vortices.size(); ++k) {
    if (static_cast<int>(k) == skip) continue;
    acc -= vortices.strengths[k] * I / (2.0 * pi) * vortex_kernel(w - vortices.positions[k], half_period);
  }
  return acc;
}

Separations separations(const CurveTrace& curve, const VortexSet& vortices) {
  Separations out;
  out.d_interface = std::numeric_limits<double>::infinity();
  const double period = curve.grid().period();
  for (std::size_t j = 0; j < vortices.size(); ++j) {
    out.d_interface = std::min(out.d_interface, curve.distance_to(vortices.positions[j]));
    for (std::size_t k = j + 1; k < vortices.size(); ++k) {
      out.d_pair = std::min(out.d_pair, periodic_gap(vortices.positions[j], vortices.positions[k], period));
    }
  }
  return out;
}

cplx vortex_velocity(const CurveTrace& curve, const CField& velocity_trace, const VortexSet& vortices,
                     std::size_t j, const VortexFloors& floors) {
  return vortex_velocities(curve, velocity_trace, vortices, floors).at(j);
}

std::vector<cplx> vortex_velocities(const CurveTrace& curve, const CField& velocity_trace,
                                    const VortexSet& vortices, const VortexFloors& floors) {
  require_finite(velocity_trace, "velocity trace");
  check_floors(curve, vortices, floors);
  const double L = curve.grid().half_period();
  const CField density = velocity_trace.conjugate() - vortex_trace_symmetric(curve, vortices);
  CauchyOptions opt;
  opt.near_spacings = floors.near_spacings;
  const std::vector<cplx> f = cauchy_interior(curve, density, vortices.positions, opt);
  std::vector<cplx> out(vortices.size());
  for (std::size_t j = 0; j < vortices.size(); ++j) {
    cplx conj_vel = f[j];
    for (std::size_t k = 0; k < vortices.size(); ++k) {
      if (k == j) continue;
      conj_vel -= vortices.strengths[k] * I / (2.0 * pi) *
                  vortex_kernel_symmetric(vortices.positions[j] - vortices.positions[k], L);
    }
    out[j] = std::conj(conj_vel);
  }
  return out;
}

cplx vortex_acceleration(const CurveTrace& curve, const CField& fz_trace, const CField& ft_trace,
                         const VortexSet& vortices, const std::vector<cplx>& velocities, std::size_t j,
                         const VortexFloors& floors) {
  if (j >= vortices.size() || velocities.size() != vortices.size()) {
    throw Error(ErrorCode::invalid_argument, "vortex index or velocity list out of range");
  }
  check_floors(curve, vortices, floors);
  const double L = curve.grid().half_period();
  CauchyOptions opt;
  opt.near_spacings = floors.near_spacings;
  const cplx zj = vortices.positions[j];
  cplx conj_acc = cauchy_interior(curve, fz_trace, zj, opt) * velocities[j] +
                  cauchy_interior(curve, ft_trace, zj, opt);
  for (std::size_t k = 0; k < vortices.size(); ++k) {
    if (k == j) continue;
    // d/dt of -(lambda_k i/2pi) K(z_j - z_k), with K' = -inverse_square
    conj_acc += vortices.strengths[k] * I / (2.0 * pi) * inverse_square(zj - vortices.positions[k], L) *
                (velocities[j] - velocities[k]);
  }
  return std::conj(conj_acc);
}

}  // namespace wwv
