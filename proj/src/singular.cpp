#include "wwv/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wwv {

cplx cot(cplx w) {
  if (w.imag() >= 0.0) {
    const cplx e = std::exp(2.0 * I * w);
    return I * (e + 1.0) / (e - 1.0);
  }
  const cplx e = std::exp(-2.0 * I * w);
  return I * (1.0 + e) / (1.0 - e);
}

ChordArc measure_chord_arc(const PeriodicGrid& grid, const CField& z, const CField& z_alpha) {
  const int n = grid.size();
  const double L = grid.half_period();
  const RField& a = grid.points();
  ChordArc out;
  out.min_speed = std::numeric_limits<double>::infinity();
  out.max_speed = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = std::abs(z_alpha[i]);
    out.min_speed = std::min(out.min_speed, s);
    out.max_speed = std::max(out.max_speed, s);
  }
  double lo = out.min_speed, hi = out.max_speed;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double da = a[j] - a[i];
      cplx dz = z[j] - z[i];
      if (da > L) {
        da -= 2.0 * L;
        dz -= 2.0 * L;
      }
      const double r = std::abs(dz) / std::abs(da);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  out.lower = lo;
  out.upper = hi;
  return out;
}

CurveTrace::CurveTrace(const PeriodicGrid& grid, CField z, double chord_arc_floor)
    : grid_(grid), z_(std::move(z)) {
  const int n = grid_.size();
  if (z_.size() != n) throw Error(ErrorCode::invalid_argument, "curve samples do not match grid");
  require_finite(z_, "curve");
  const CField disp = z_ - to_complex(grid_.points());
  z_alpha_ = fourier_derivative(grid_, disp);
  z_alpha_.array() += 1.0;
  speed_ = z_alpha_.cwiseAbs();
  chord_ = measure_chord_arc(grid_, z_, z_alpha_);
  if (!(chord_.lower > chord_arc_floor)) {
    throw Error(ErrorCode::chord_arc, "chord-arc lower constant " + std::to_string(chord_.lower) +
                                          " below floor " + std::to_string(chord_arc_floor) +
                                          " (upper " + std::to_string(chord_.upper) + ")");
  }

  const double scale = pi / grid_.period();
  cot_ = Eigen::MatrixXcd::Zero(n, n);
  // alternating rule: only odd offsets j - i carry weight
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; j += 2) {
      const cplx c = scale * cot(scale * (z_[i] - z_[j]));
      cot_(i, j) = c;
      cot_(j, i) = -c;
    }
  }
  const cplx w = 2.0 * grid_.spacing() / (pi * I);
  hmat_ = cot_ * (w * z_alpha_).asDiagonal();
}

double CurveTrace::distance_to(cplx w) const {
  const double period = grid_.period();
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < z_.size(); ++j) {
    cplx d = w - z_[j];
    const double dx = d.real() - period * std::round(d.real() / period);
    best = std::min(best, std::hypot(dx, d.imag()));
  }
  return best;
}

CField curve_hilbert(const CurveTrace& curve, const CField& f) {
  require_finite(f, "curve_hilbert");
  return curve.hilbert_matrix() * f;
}

CField curve_hilbert_conj(const CurveTrace& curve, const CField& f) {
  return curve_hilbert(curve, f.conjugate()).conjugate();
}

Eigen::MatrixXd double_layer_matrix(const CurveTrace& curve) { return curve.hilbert_matrix().real(); }

Eigen::MatrixXd adjoint_double_layer_matrix(const CurveTrace& curve) {
  const int n = curve.grid().size();
  const cplx w = -2.0 * curve.grid().spacing() / (pi * I);
  const CField unit = (curve.z_alpha().array() / curve.speed().array().cast<cplx>()).matrix();
  Eigen::MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out(i, j) = (w * unit[i] * curve.speed()[j] * curve.cot_kernel()(i, j)).real();
    }
  }
  return out;
}

RField double_layer(const CurveTrace& curve, const RField& f) {
  require_finite(f, "double_layer");
  return (curve.hilbert_matrix() * to_complex(f)).real();
}

RField adjoint_double_layer(const CurveTrace& curve, const RField& f) {
  require_finite(f, "adjoint_double_layer");
  return adjoint_double_layer_matrix(curve) * f;
}

CField commutator(const CurveTrace& curve, const CField& g, const CField& h) {
  require_finite(g, "commutator");
  require_finite(h, "commutator");
  const Eigen::MatrixXcd& H = curve.hilbert_matrix();
  const int n = curve.grid().size();
  CField out = CField::Zero(n);
  for (int j = 0; j < n; ++j) {
    const cplx gj = g[j], hj = h[j];
    for (int i = (j + 1) % 2; i < n; i += 2) out[i] += H(i, j) * (g[i] - gj) * hj;
  }
  return out;
}

CField squared_difference_integral(const CurveTrace& curve, const CField& u, const CField& dg) {
  const Eigen::MatrixXcd& C = curve.cot_kernel();
  const int n = curve.grid().size();
  const double s2 = std::pow(pi / curve.grid().period(), 2);
  const cplx w = 2.0 * curve.grid().spacing() / (pi * I);
  CField out = CField::Zero(n);
  for (int j = 0; j < n; ++j) {
    for (int i = (j + 1) % 2; i < n; i += 2) {
      const cplx du = u[i] - u[j];
      const cplx c = C(i, j);
      out[i] += du * du * (c * c + s2) * dg[j];
    }
  }
  return w * out;
}

CField difference_integral(const CurveTrace& curve, const CField& g, const CField& h, bool conjugate_kernel) {
  const Eigen::MatrixXcd& C = curve.cot_kernel();
  const int n = curve.grid().size();
  const cplx w = 2.0 * curve.grid().spacing() / (pi * I);
  CField out = CField::Zero(n);
  for (int j = 0; j < n; ++j) {
    for (int i = (j + 1) % 2; i < n; i += 2) {
      const cplx k = conjugate_kernel ? std::conj(C(i, j)) : C(i, j);
      out[i] += (g[i] - g[j]) * k * h[j];
    }
  }
  return w * out;
}

namespace {

Eigen::MatrixXd second_kind_matrix(const CurveTrace& curve, SecondKind kind) {
  const int n = curve.grid().size();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  switch (kind) {
    case SecondKind::i_minus_k:
    case SecondKind::i_minus_kr: return id - double_layer_matrix(curve);
    case SecondKind::i_plus_k: return id + double_layer_matrix(curve);
    case SecondKind::i_plus_kstar: return id + adjoint_double_layer_matrix(curve);
  }
  return id;
}

}  // namespace

SecondKindSolver::SecondKindSolver(const CurveTrace& curve, SecondKind kind)
    : op_(second_kind_matrix(curve, kind)), lu_(op_) {
  rcond_ = lu_.rcond();
  if (!(rcond_ > 1e-12)) {
    throw Error(ErrorCode::singular_system,
                "second-kind system is near singular (rcond estimate " + std::to_string(rcond_) + ")");
  }
}

RField SecondKindSolver::solve(const RField& rhs) const {
  require_finite(rhs, "second-kind rhs");
  RField x = lu_.solve(rhs);
  const double tol = 1e-11 * (1.0 + rhs.cwiseAbs().maxCoeff());
  for (int pass = 0; pass < 3; ++pass) {
    const RField r = rhs - op_ * x;
    if (r.cwiseAbs().maxCoeff() <= tol) break;
    x += lu_.solve(r);
  }
  return x;
}

RField solve_second_kind(const CurveTrace& curve, SecondKind kind, const RField& rhs) {
  return SecondKindSolver(curve, kind).solve(rhs);
}

RField apply_second_kind(const CurveTrace& curve, SecondKind kind, const RField& f) {
  return second_kind_matrix(curve, kind) * f;
}

cplx cauchy_interior(const CurveTrace& curve, const CField& density, cplx point, const CauchyOptions& opt) {
  const PeriodicGrid& grid = curve.grid();
  const double h = grid.spacing();
  if (curve.distance_to(point) < opt.near_spacings * h) {
    throw Error(ErrorCode::near_boundary, "evaluation point within the near-boundary band of the interface");
  }
  // below-ness: compare with the sample nearest in the periodized horizontal sense
  const double period = grid.period();
  Eigen::Index nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < curve.z().size(); ++j) {
    const double d = point.real() - curve.z()[j].real();
    const double dx = std::abs(d - period * std::round(d / period));
    if (dx < best) {
      best = dx;
      nearest = j;
    }
  }
  if (!(point.imag() < curve.z()[nearest].imag())) {
    throw Error(ErrorCode::near_boundary, "evaluation point is not below the interface");
  }
  const double scale = pi / period;
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j < density.size(); ++j) {
    acc += curve.z_alpha()[j] * (cot(scale * (point - curve.z()[j])) + I) * density[j];
  }
  return acc * (h * scale / (2.0 * pi * I));
}

cplx lower_limit(const CurveTrace& curve, const CField& density) {
  return curve.grid().spacing() * (curve.z_alpha().array() * density.array()).sum() / curve.grid().period();
}

CField holomorphic_part(const CurveTrace& curve, const CField& f) {
  CField p = 0.5 * (f + curve_hilbert(curve, f));
  p.array() -= lower_limit(curve, p);
  return p;
}

std::vector<cplx> cauchy_interior(const CurveTrace& curve, const CField& density,
                                  const std::vector<cplx>& points, const CauchyOptions& opt) {
  require_finite(density, "cauchy density");
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const cplx& w : points) out.push_back(cauchy_interior(curve, density, w, opt));
  return out;
}

}  // namespace wwv
