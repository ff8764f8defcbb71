#pragma once

#include <vector>

#include <Eigen/LU>

#include "wwv/spectral.hpp"

namespace wwv {

// Complex cotangent evaluated through exponentials of the decaying sign, so
// arguments far from the real axis do not overflow.
cplx cot(cplx w);

struct ChordArc {
  double lower = 0.0;  // C1
  double upper = 0.0;  // C2
  double min_speed = 0.0;
  double max_speed = 0.0;
};

// Sampled interface z(alpha) with z - alpha periodic. Builds the periodized
// kernel tables once; the object is immutable afterwards.
class CurveTrace {
 public:
  static constexpr double default_chord_arc_floor = 1e-2;

  CurveTrace(const PeriodicGrid& grid, CField z, double chord_arc_floor = default_chord_arc_floor);

  static CurveTrace flat(const PeriodicGrid& grid) { return CurveTrace(grid, to_complex(grid.points())); }

  const PeriodicGrid& grid() const { return grid_; }
  const CField& z() const { return z_; }
  const CField& z_alpha() const { return z_alpha_; }
  const RField& speed() const { return speed_; }
  const ChordArc& chord_arc() const { return chord_; }

  // (pi/2L) cot(pi (z_i - z_j)/2L) on entries with j - i odd, zero elsewhere.
  const Eigen::MatrixXcd& cot_kernel() const { return cot_; }
  // Dense matrix of the curve Hilbert transform under the alternating rule.
  const Eigen::MatrixXcd& hilbert_matrix() const { return hmat_; }

  // Periodized distance from w to the sampled interface.
  double distance_to(cplx w) const;

 private:
  PeriodicGrid grid_;
  CField z_;
  CField z_alpha_;
  RField speed_;
  ChordArc chord_;
  Eigen::MatrixXcd cot_;
  Eigen::MatrixXcd hmat_;
};

ChordArc measure_chord_arc(const PeriodicGrid& grid, const CField& z, const CField& z_alpha);

CField curve_hilbert(const CurveTrace& curve, const CField& f);
// conj(H conj f): the transform with the conjugated kernel.
CField curve_hilbert_conj(const CurveTrace& curve, const CField& f);

RField double_layer(const CurveTrace& curve, const RField& f);
RField adjoint_double_layer(const CurveTrace& curve, const RField& f);
Eigen::MatrixXd double_layer_matrix(const CurveTrace& curve);
Eigen::MatrixXd adjoint_double_layer_matrix(const CurveTrace& curve);

// [g, H] h evaluated with the difference kernel directly.
CField commutator(const CurveTrace& curve, const CField& g, const CField& h);

// (1/pi i) pv int ((u(a) - u(b)) / (z(a) - z(b)))^2 dg(b) db with the
// periodized csc^2 kernel; dg is the derivative density.
CField squared_difference_integral(const CurveTrace& curve, const CField& u, const CField& dg);

// (1/pi i) pv int (g(a) - g(b)) K(a, b) h(b) db where K is the periodized
// 1/(z(a) - z(b)) or its complex conjugate.
CField difference_integral(const CurveTrace& curve, const CField& g, const CField& h, bool conjugate_kernel);

enum class SecondKind { i_minus_k, i_plus_k, i_plus_kstar, i_minus_kr };

class SecondKindSolver {
 public:
  SecondKindSolver(const CurveTrace& curve, SecondKind kind);
  RField solve(const RField& rhs) const;
  RField apply(const RField& f) const { return op_ * f; }
  double rcond() const { return rcond_; }

 private:
  Eigen::MatrixXd op_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double rcond_ = 0.0;
};

RField solve_second_kind(const CurveTrace& curve, SecondKind kind, const RField& rhs);
RField apply_second_kind(const CurveTrace& curve, SecondKind kind, const RField& f);

struct CauchyOptions {
  // Minimum distance to the interface in grid spacings.
  double near_spacings = 2.0;
};

// (1/2 pi i) int z_b/(w - z(b)) f(b) db for w below the curve, with the
// periodized kernel normalized so that constants are reproduced.
std::vector<cplx> cauchy_interior(const CurveTrace& curve, const CField& density,
                                  const std::vector<cplx>& points, const CauchyOptions& opt = {});
cplx cauchy_interior(const CurveTrace& curve, const CField& density, cplx point,
                     const CauchyOptions& opt = {});

// Limit of the Cauchy integral as Im w -> -inf: (1/2L) int z_b f db.
cplx lower_limit(const CurveTrace& curve, const CField& density);

// Holomorphic projection 1/2 (I + H) f with the lower limit removed.
CField holomorphic_part(const CurveTrace& curve, const CField& f);

}  // namespace wwv
