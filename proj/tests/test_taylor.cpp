#include <random>

#include "doctest.h"
#include "wwv/runner.hpp"

using namespace wwv;

namespace {

TaylorReport flat_report(const VortexSet& v, A1Path path, int n = 512) {
  const PeriodicGrid g(n);
  const CurveTrace c = CurveTrace::flat(g);
  CField dtz(g.size());
  for (int i = 0; i < g.size(); ++i) dtz[i] = line_vortex_velocity(v, g.points()[i]);
  return a1_flat_general(c, dtz, v, line_vortex_velocities(v), path);
}

}  // namespace

TEST_CASE("single vortex closed form") {
  CHECK(a1_single_vortex_closed(0.0, -1.0).value == 1.0);
  CHECK(a1_single_vortex_closed(1.0, -1.0).value == doctest::Approx(0.962004556));
  // lambda^2/|y|^3 = 10 pi^2 gives 1 - 30/8
  CHECK(a1_single_vortex_closed(pi * std::sqrt(10.0), -1.0).value == doctest::Approx(-2.75));
  CHECK(a1_single_vortex_closed(pi * std::sqrt(10.0), -1.0).classification == TaylorClass::failed);
  const double crit = std::sqrt(8.0 * pi * pi / 3.0);
  CHECK(a1_single_vortex_closed(crit, -1.0).classification == TaylorClass::degenerate);
  CHECK(a1_single_vortex_closed(0.99 * crit, -1.0).classification == TaylorClass::strong);
  // scale invariance in lambda^2/|y|^3
  CHECK(a1_single_vortex_closed(2.0 * std::sqrt(8.0), -2.0).value ==
        doctest::Approx(a1_single_vortex_closed(2.0, -1.0).value));
  CHECK_THROWS_AS(a1_single_vortex_closed(1.0, 0.5), Error);
}

TEST_CASE("pair closed form") {
  for (double y : {-0.5, -1.0, -3.0}) {
    const double lam = 1.7;
    CHECK(a1_pair_closed(lam, -y, y) ==
          doctest::Approx(1.0 - lam * lam / (16.0 * pi * pi * std::pow(-y, 3))).epsilon(1e-14));
  }
  CHECK(a1_pair_closed(4.0 * pi, 1.0, -1.0) == doctest::Approx(0.0).epsilon(1e-14));
  // far apart, A1(0) -> 1
  CHECK(a1_pair_closed(1.0, 1e5, -1.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(a1_pair_closed(1.0, -1.0, -1.0), Error);
}

TEST_CASE("closed and quadrature paths agree on the flat line") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-2.0, 2.0), depth(-2.5, -0.8), lam(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const VortexSet v{{cplx(pos(rng), depth(rng)), cplx(pos(rng), depth(rng))}, {lam(rng), lam(rng)}};
    const TaylorReport a = flat_report(v, A1Path::closed_form);
    const TaylorReport b = flat_report(v, A1Path::quadrature);
    CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() < 1e-6);
  }
  const TaylorReport one = flat_report(VortexSet{{cplx(0.0, -1.0)}, {1.0}}, A1Path::quadrature);
  CHECK(one.samples[256] == doctest::Approx(a1_single_vortex_closed(1.0, -1.0).value).epsilon(1e-9));
  CHECK(one.argmin == doctest::Approx(0.0));
  // the pointwise double sum is nonnegative
  const VortexSet v{{cplx(0.3, -1.0), cplx(-1.0, -2.0)}, {1.0, 0.4}};
  for (double a : {-3.0, 0.0, 0.3, 5.0}) CHECK(a1_double_sum(v, a) >= 0.0);
}

TEST_CASE("periodic A1 tends to the line value for a deep vortex in a long period") {
  const PeriodicGrid g(512);
  const VortexSet v{{cplx(0.0, -1.0)}, {1.0}};
  const CurveTrace c = CurveTrace::flat(g);
  const CField u = vortex_trace_symmetric(c, v).conjugate();
  const auto zdot = vortex_velocities(c, u, v);
  const ConformalData cd{v.positions, {1.0}};
  const TaylorReport per = a1_general(g, c.z(), u, v, zdot, cd, A1Domain::periodic);
  // periodization of the quadratic term moves the value by about 1e-4
  CHECK(per.samples[256] == doctest::Approx(a1_single_vortex_closed(1.0, -1.0).value).epsilon(2e-4));
}

TEST_CASE("classification band and brackets") {
  CHECK(classify_taylor(1e-9, 1.0) == TaylorClass::degenerate);
  CHECK(classify_taylor(1e-7, 1.0) == TaylorClass::strong);
  CHECK(classify_taylor(-1e-7, 1.0) == TaylorClass::failed);
  CHECK(std::string(taylor_class_name(TaylorClass::degenerate)) == "degenerate");

  std::vector<SweepRow> rows(3);
  rows[0].ratio = 30.0;
  rows[0].classification = TaylorClass::failed;
  rows[1].ratio = 10.0;
  rows[2].ratio = 20.0;
  const Bracket b = sign_change_bracket(rows);
  CHECK(b.found);
  CHECK(b.lower == 20.0);
  CHECK(b.upper == 30.0);
  CHECK_FALSE(sign_change_bracket({}).found);
}

TEST_CASE("sweeps bracket the analytic thresholds") {
  const Bracket one = sign_change_bracket(taylor_sweep(preset("taylor-single-sweep").sweep.value()));
  REQUIRE(one.found);
  CHECK(one.lower <= 8.0 * pi * pi / 3.0);
  CHECK(one.upper >= 8.0 * pi * pi / 3.0);
  const Bracket two = sign_change_bracket(taylor_sweep(preset("taylor-pair-sweep").sweep.value()));
  REQUIRE(two.found);
  CHECK(two.lower <= 16.0 * pi * pi);
  CHECK(two.upper >= 16.0 * pi * pi);
  SweepSpec empty;
  empty.ratio = Range{1.0, 2.0, 0};
  CHECK(taylor_sweep(empty).empty());
}

TEST_CASE("sufficient criterion") {
  const PeriodicGrid g(128);
  const CurveTrace c = CurveTrace::flat(g);
  const VortexSet weak{{cplx(0.0, -3.0)}, {0.1}};
  const CriterionResult r = strong_taylor_criterion(c, weak, 0.0, 1.0);
  CHECK(r.pass);
  CHECK(r.slack == doctest::Approx(1.0 - r.lhs));
  CHECK_FALSE(strong_taylor_criterion(c, VortexSet{{cplx(0.0, -1.0)}, {20.0}}, 0.0, 1.0).pass);
  // the criterion is sufficient: whenever it passes the closed form is positive
  for (double lam : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const VortexSet v{{cplx(0.0, -1.0)}, {lam}};
    if (strong_taylor_criterion(c, v, 0.0, 1.0).pass) CHECK(a1_single_vortex_closed(lam, -1.0).value > 0.0);
  }
}

TEST_CASE("pair closed form off the diagonal") {
  CHECK(a1_pair_closed(1.0, 2.0, -1.0) == doctest::Approx(1.0 - 8.0 / (125.0 * 4.0 * pi * pi)).epsilon(1e-14));
  CHECK(a1_pair_closed(0.0, 2.0, -1.0) == 1.0);
  const VortexSet v = SymmetricPair{2.0, -1.0, -1.0}.to_set();
  const TaylorReport q = flat_report(v, A1Path::quadrature);
  CHECK(std::abs(q.samples[256] - a1_pair_closed(1.0, 2.0, -1.0)) < 1e-6);
}

TEST_CASE("general formula on flat data") {
  const PeriodicGrid g(512);
  const CurveTrace c = CurveTrace::flat(g);
  const VortexSet v{{cplx(0.0, -1.0)}, {1.0}};
  CField dtz(g.size());
  for (int i = 0; i < g.size(); ++i) dtz[i] = line_vortex_velocity(v, g.points()[i]);
  const auto zdot = line_vortex_velocities(v);
  const ConformalData cd{v.positions, {1.0}};
  const TaylorReport line = a1_general(g, c.z(), dtz, v, zdot, cd, A1Domain::line);
  const TaylorReport flat = a1_flat_general(c, dtz, v, zdot, A1Path::quadrature);
  CHECK((line.samples - flat.samples).cwiseAbs().maxCoeff() < 1e-8);
  // unique minimum above the vortex, and A1 -> 1 far away
  CHECK(std::abs(line.argmin) <= g.spacing());
  CHECK(line.samples[0] == doctest::Approx(1.0).epsilon(1e-3));
  // rest state
  const TaylorReport rest = a1_general(g, c.z(), CField::Zero(g.size()), VortexSet{}, {}, ConformalData{}, A1Domain::periodic);
  CHECK((rest.samples.array() - 1.0).abs().maxCoeff() < 1e-14);
  // vortices without conformal data are rejected
  CHECK_THROWS_AS(a1_general(g, c.z(), dtz, v, zdot, ConformalData{}, A1Domain::line), Error);
}

TEST_CASE("sufficient criterion examples") {
  const PeriodicGrid g(256);
  const CurveTrace c = CurveTrace::flat(g);
  const CriterionResult none = strong_taylor_criterion(c, VortexSet{}, 0.0, 1.0);
  CHECK(none.pass);
  CHECK(none.slack == 1.0);
  CHECK(strong_taylor_criterion(c, VortexSet{{cplx(0.0, -10.0)}, {1e-3}}, 0.0, 1.0).pass);
  const double crit = std::sqrt(8.0 * pi * pi / 3.0);
  CHECK_FALSE(strong_taylor_criterion(c, VortexSet{{cplx(0.0, -1.0)}, {crit}}, 0.0, 1.0).pass);
}
