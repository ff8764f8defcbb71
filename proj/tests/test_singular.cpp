#include "doctest.h"
#include "wwv/singular.hpp"
#include "wwv/vortex.hpp"

using namespace wwv;

namespace {

CField bumped(const PeriodicGrid& g, double amp) {
  // z = alpha + i amp exp(-alpha^2/4) - amp-scale odd shift, a smooth graph-like curve
  CField z(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const double a = g.points()[i];
    z[i] = cplx(a + 0.5 * amp * a * std::exp(-a * a / 8.0), amp * std::exp(-a * a / 4.0));
  }
  return z;
}

CField mode(const PeriodicGrid& g, int m) {
  CField f(g.size());
  for (int i = 0; i < g.size(); ++i) f[i] = std::exp(I * g.wavenumbers()[(m + g.size()) % g.size()] * g.points()[i]);
  return f;
}

}  // namespace

TEST_CASE("cot matches the library and survives large imaginary parts") {
  for (cplx w : {cplx(0.3, 0.2), cplx(-1.1, 0.7), cplx(2.0, -0.5)}) {
    CHECK(std::abs(cot(w) - std::cos(w) / std::sin(w)) < 1e-13);
  }
  CHECK(std::abs(cot(cplx(1.0, 800.0)) + I) < 1e-14);
  CHECK(std::abs(cot(cplx(1.0, -800.0)) - I) < 1e-14);
}

TEST_CASE("flat curve") {
  const PeriodicGrid g(128);
  const CurveTrace c = CurveTrace::flat(g);
  CHECK(c.chord_arc().lower == doctest::Approx(1.0));
  CHECK(c.chord_arc().upper == doctest::Approx(1.0));
  CHECK(c.distance_to(cplx(0.0, -2.0)) == doctest::Approx(2.0));
  // modes decaying downward (negative frequency) are fixed, the others flip
  for (int m : {1, 5, 20}) {
    CHECK((curve_hilbert(c, mode(g, -m)) - mode(g, -m)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((curve_hilbert(c, mode(g, m)) + mode(g, m)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((holomorphic_part(c, mode(g, -m)) - mode(g, -m)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(holomorphic_part(c, mode(g, m)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("curve Hilbert fixes traces holomorphic below a bumped curve") {
  // the alternating rule sees spacing 2h, so the pole must sit many spacings away
  const PeriodicGrid g(512);
  const CurveTrace c(g, bumped(g, 0.3));
  for (cplx zj : {cplx(0.0, 3.0), cplx(4.0, 4.0)}) {
    // cot kernel with the pole above the curve, shifted so it vanishes far below
    CField f(g.size());
    for (int i = 0; i < g.size(); ++i) f[i] = vortex_kernel_symmetric(c.z()[i] - zj, g.half_period()) - I * pi / g.period();
    const CField r = f - curve_hilbert(c, f);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-8);
  }
  // the conjugate transform fixes conjugates
  CField f(g.size());
  for (int i = 0; i < g.size(); ++i) f[i] = std::conj(vortex_kernel(c.z()[i] - cplx(0.0, 3.0), g.half_period()) - 2.0 * I * pi / g.period());
  CHECK(l2_norm(g, CField(f - curve_hilbert_conj(c, f))) < 1e-8);
}

TEST_CASE("commutator agrees with its definition") {
  const PeriodicGrid g(256);
  const CurveTrace c(g, bumped(g, 0.2));
  const CField u = 0.1 * mode(g, 3) + 0.05 * mode(g, -7);
  const CField h = mode(g, -2) + 0.3 * mode(g, 4);
  const CField direct = u.cwiseProduct(curve_hilbert(c, h)) - curve_hilbert(c, CField(u.cwiseProduct(h)));
  CHECK((commutator(c, u, h) - direct).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("second kind solves invert their operators") {
  const PeriodicGrid g(128);
  const CurveTrace c(g, bumped(g, 0.3));
  RField rhs(g.size());
  for (int i = 0; i < g.size(); ++i) rhs[i] = std::exp(-g.points()[i] * g.points()[i] / 10.0);
  for (SecondKind k : {SecondKind::i_minus_k, SecondKind::i_plus_k, SecondKind::i_plus_kstar, SecondKind::i_minus_kr}) {
    const SecondKindSolver s(c, k);
    CHECK((s.apply(s.solve(rhs)) - rhs).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((apply_second_kind(c, k, solve_second_kind(c, k, rhs)) - rhs).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(s.rcond() > 0.0);
  }
  // double layer and adjoint are transposes of each other under the trapezoid weight
  const Eigen::MatrixXd k = double_layer_matrix(c);
  const Eigen::MatrixXd ks = adjoint_double_layer_matrix(c);
  CHECK((double_layer(c, rhs) - k * rhs).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((adjoint_double_layer(c, rhs) - ks * rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Cauchy integral reproduces holomorphic functions inside") {
  const PeriodicGrid g(256);
  const CurveTrace c(g, bumped(g, 0.2));
  CField ones = CField::Ones(g.size());
  CHECK(std::abs(cauchy_interior(c, ones, cplx(1.0, -3.0)) - 1.0) < 1e-10);
  // exp(-i k z) decays below the curve and has zero lower limit
  const double k = g.wavenumbers()[2];
  CField f(g.size());
  for (int i = 0; i < g.size(); ++i) f[i] = std::exp(-I * k * c.z()[i]);
  for (cplx w : {cplx(0.0, -2.0), cplx(10.0, -1.0)}) {
    CHECK(std::abs(cauchy_interior(c, f, w) - std::exp(-I * k * w)) < 1e-6);
  }
  CHECK(std::abs(lower_limit(c, f)) < 1e-12);
  CHECK_THROWS_AS(cauchy_interior(c, f, cplx(0.0, 0.19)), Error);
}

TEST_CASE("self-intersecting samples are rejected") {
  const PeriodicGrid g(64);
  CField z = to_complex(g.points());
  z[10] = z[20];
  CHECK_THROWS_AS(CurveTrace(g, z), Error);
}
