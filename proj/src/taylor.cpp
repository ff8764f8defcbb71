#include "wwv/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

namespace wwv {

const char* taylor_class_name(TaylorClass c) {
  switch (c) {
    case TaylorClass::strong: return "strong";
    case TaylorClass::degenerate: return "degenerate";
    case TaylorClass::failed: return "failed";
  }
  return "unknown";
}

TaylorClass classify_taylor(double infimum, double sup_abs) {
  if (std::abs(infimum) <= 1e-8 * (1.0 + sup_abs)) return TaylorClass::degenerate;
  return infimum > 0.0 ? TaylorClass::strong : TaylorClass::failed;
}

TaylorReport make_report(const PeriodicGrid& grid, RField samples, const RField& speed) {
  require_finite(samples, "A1 samples");
  TaylorReport r;
  Eigen::Index idx = 0;
  r.infimum = samples.minCoeff(&idx);
  r.argmin_index = static_cast<int>(idx);
  r.argmin = grid.points()[idx];
  r.margin = (samples.array() / speed.array()).minCoeff();
  r.classification = classify_taylor(r.infimum, samples.cwiseAbs().maxCoeff());
  r.samples = std::move(samples);
  return r;
}

ClosedForm a1_single_vortex_closed(double lambda, double y) {
  if (!(y < 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::invalid_argument, "single vortex needs y < 0 and finite strength");
  }
  ClosedForm out;
  out.value = 1.0 - 3.0 * lambda * lambda / (8.0 * pi * pi * std::pow(std::abs(y), 3));
  // the minimum over the line sits at alpha = x, and A1 -> 1 far away
  out.classification = classify_taylor(out.value, std::max(1.0, std::abs(out.value)));
  return out;
}

double a1_pair_closed(double lambda, double x, double y) {
  if (!(x > 0.0) || !(y < 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::invalid_argument, "pair needs x > 0, y < 0 and finite strength");
  }
  const double x2 = x * x, y2 = y * y;
  const double r2 = x2 + y2;
  return 1.0 + lambda * lambda / (4.0 * pi * pi) * (x2 * x2 + 4.0 * y2 * y2 - 7.0 * x2 * y2) /
                   (std::abs(y) * r2 * r2 * r2);
}

cplx line_vortex_velocity(const VortexSet& vortices, double alpha) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < vortices.size(); ++j) {
    acc += vortices.strengths[j] * I / (2.0 * pi * std::conj(alpha - vortices.positions[j]));
  }
  return acc;
}

std::vector<cplx> line_vortex_velocities(const VortexSet& vortices) {
  std::vector<cplx> out(vortices.size(), 0.0);
  for (std::size_t j = 0; j < vortices.size(); ++j) {
    for (std::size_t k = 0; k < vortices.size(); ++k) {
      if (k == j) continue;
      out[j] += vortices.strengths[k] * I / (2.0 * pi * std::conj(vortices.positions[j] - vortices.positions[k]));
    }
  }
  return out;
}

double a1_double_sum(const VortexSet& vortices, double alpha) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < vortices.size(); ++j) {
    const cplx zj = vortices.positions[j];
    for (std::size_t k = 0; k < vortices.size(); ++k) {
      const cplx zk = vortices.positions[k];
      acc += vortices.strengths[j] * vortices.strengths[k] / (4.0 * pi * pi) * I /
             ((alpha - zj) * std::conj(alpha - zk) * (std::conj(zk) - zj));
    }
  }
  return acc.real();
}

namespace {

void check_inputs(const PeriodicGrid& grid, const CField& dtz, const VortexSet& vortices,
                  const std::vector<cplx>& velocities) {
  vortices.validate();
  if (dtz.size() != grid.size()) throw Error(ErrorCode::invalid_argument, "D_t Z does not match grid");
  if (velocities.size() != vortices.size()) {
    throw Error(ErrorCode::invalid_argument, "one velocity per vortex is required");
  }
  require_finite(dtz, "D_t Z");
}

// (1/2pi) int |D(a) - D(b)|^2 / (a - b)^2 db on the line. The window is
// covered by the trapezoid rule on the full grid, with the diagonal limit
// |D'(a)|^2; the derivative combines the analytic line field with a spectral
// derivative of the sampled remainder. Beyond the window D is the line field.
RField line_integral_term(const PeriodicGrid& grid, const CField& dtz, const VortexSet& vortices) {
  const int n = grid.size();
  const double h = grid.spacing();
  const RField& a = grid.points();
  CField line(n), line_d(n);
  for (int i = 0; i < n; ++i) {
    line[i] = line_vortex_velocity(vortices, a[i]);
    cplx d = 0.0;
    for (std::size_t j = 0; j < vortices.size(); ++j) {
      const cplx c = std::conj(a[i] - vortices.positions[j]);
      d -= vortices.strengths[j] * I / (2.0 * pi * c * c);
    }
    line_d[i] = d;
  }
  const CField deriv = line_d + fourier_derivative(grid, CField(dtz - line));

  // Gauss-Legendre on t = 1/(b - edge + 1) maps each tail onto (0, 1].
  static const auto nodes = [] {
    std::vector<std::pair<double, double>> out;
    const auto& gl = boost::math::quadrature::gauss<double, 60>::abscissa();
    const auto& w = boost::math::quadrature::gauss<double, 60>::weights();
    for (std::size_t k = 0; k < gl.size(); ++k) {
      out.emplace_back(0.5 * (1.0 + gl[k]), 0.5 * w[k]);
      if (gl[k] != 0.0) out.emplace_back(0.5 * (1.0 - gl[k]), 0.5 * w[k]);
    }
    return out;
  }();
  const double hi = a[n - 1];
  const double lo = a[0];
  RField out(n);
  for (int i = 0; i < n; ++i) {
    double acc = h * std::norm(deriv[i]);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = (j == 0 || j == n - 1) ? 0.5 * h : h;
      acc += w * std::norm(dtz[i] - dtz[j]) / ((a[i] - a[j]) * (a[i] - a[j]));
    }
    const cplx di = dtz[i];
    const double ai = a[i];
    auto g = [&](double b) {
      const double d = ai - b;
      return std::norm(di - line_vortex_velocity(vortices, b)) / (d * d);
    };
    for (const auto& [t, w] : nodes) {
      const double u = 1.0 / t - 1.0;
      const double jac = 1.0 / (t * t);
      acc += w * jac * (g(hi + u) + g(lo - u));
    }
    out[i] = acc / (2.0 * pi);
  }
  return out;
}

RField periodic_integral_term(const PeriodicGrid& grid, const CField& dtz) {
  const int n = grid.size();
  const double h = grid.spacing();
  const double s = pi / grid.period();
  const RField& a = grid.points();
  RField out(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = (i + 1) % 2; j < n; j += 2) {
      const double sn = std::sin(s * (a[i] - a[j]));
      acc += 2.0 * h * std::norm(dtz[i] - dtz[j]) * s * s / (sn * sn);
    }
    out[i] = acc / (2.0 * pi);
  }
  return out;
}

}  // namespace

TaylorReport a1_general(const PeriodicGrid& grid, const CField& conformal_z, const CField& dtz,
                        const VortexSet& vortices, const std::vector<cplx>& vortex_velocities,
                        const ConformalData& conformal, A1Domain domain) {
  check_inputs(grid, dtz, vortices, vortex_velocities);
  if (conformal.images.size() != vortices.size() || conformal.derivatives.size() != vortices.size()) {
    throw Error(ErrorCode::invalid_argument, "conformal images and derivatives are required for every vortex");
  }
  if (conformal_z.size() != grid.size()) throw Error(ErrorCode::invalid_argument, "Z does not match grid");
  const int n = grid.size();
  const double L = grid.half_period();
  RField a1 = RField::Ones(n);
  a1 += domain == A1Domain::line ? line_integral_term(grid, dtz, vortices) : periodic_integral_term(grid, dtz);
  for (std::size_t j = 0; j < vortices.size(); ++j) {
    const double lam = vortices.strengths[j];
    const cplx w0 = conformal.images[j];
    const cplx c0 = conformal.derivatives[j];
    for (int i = 0; i < n; ++i) {
      const double al = grid.points()[i];
      const cplx inv2 = domain == A1Domain::line ? 1.0 / ((al - w0) * (al - w0)) : inverse_square(al - w0, L);
      a1[i] -= lam / pi * ((dtz[i] - vortex_velocities[j]) * inv2 / c0).real();
    }
  }
  const CField za = fourier_derivative(grid, CField(conformal_z - to_complex(grid.points())));
  const RField speed = (za.array() + 1.0).abs();
  return make_report(grid, std::move(a1), speed);
}

TaylorReport a1_flat_general(const CurveTrace& curve, const CField& dtz, const VortexSet& vortices,
                             const std::vector<cplx>& vortex_velocities, A1Path path) {
  const PeriodicGrid& grid = curve.grid();
  const double flat_dev = (curve.z() - to_complex(grid.points())).cwiseAbs().maxCoeff();
  if (flat_dev > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "a1_flat_general needs Z = alpha; use a1_general");
  }
  check_inputs(grid, dtz, vortices, vortex_velocities);
  if (path == A1Path::quadrature) {
    ConformalData flat{vortices.positions, std::vector<cplx>(vortices.size(), 1.0)};
    return a1_general(grid, curve.z(), dtz, vortices, vortex_velocities, flat, A1Domain::line);
  }
  const int n = grid.size();
  RField a1(n);
  for (int i = 0; i < n; ++i) {
    const double al = grid.points()[i];
    double v = 1.0 + a1_double_sum(vortices, al);
    for (std::size_t j = 0; j < vortices.size(); ++j) {
      const cplx d = al - vortices.positions[j];
      v -= vortices.strengths[j] / pi * ((dtz[i] - vortex_velocities[j]) / (d * d)).real();
    }
    a1[i] = v;
  }
  return make_report(grid, std::move(a1), RField::Ones(n));
}

CriterionResult strong_taylor_criterion(const CurveTrace& curve, const VortexSet& vortices, double f_sup,
                                        double beta0) {
  if (!(beta0 > 0.0)) throw Error(ErrorCode::invalid_argument, "beta0 must be positive");
  CriterionResult r;
  double lam = 0.0;
  for (double s : vortices.strengths) lam += std::abs(s);
  lam /= pi;
  if (lam > 0.0) {
    const Separations sep = separations(curve, vortices);
    const double di = sep.d_interface / curve.chord_arc().upper;
    const double dp = sep.d_pair;
    r.lhs = lam * lam / (2.0 * di * di * di * beta0) + 2.0 * f_sup * lam / (di * di);
    if (std::isfinite(dp)) r.lhs += lam * lam / (2.0 * di * di * dp);
  }
  r.slack = beta0 - r.lhs;
  r.pass = r.lhs < beta0;
  return r;
}

Bracket sign_change_bracket(std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.ratio < b.ratio; });
  Bracket b;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].classification != rows[i - 1].classification) {
      b.found = true;
      b.lower = rows[i - 1].ratio;
      b.upper = rows[i].ratio;
      return b;
    }
  }
  return b;
}

}  // namespace wwv
