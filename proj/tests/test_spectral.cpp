#include <random>

#include "doctest.h"
#include "wwv/spectral.hpp"
#include "wwv/evolution.hpp"

using namespace wwv;

namespace {

CField random_band(const PeriodicGrid& g, int modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CField c = CField::Zero(g.size());
  for (int m = -modes; m <= modes; ++m) c[(m + g.size()) % g.size()] = cplx(nd(rng), nd(rng));
  return g.inverse(c);
}

CField wave(const PeriodicGrid& g, double k, bool cosine) {
  CField f(g.size());
  for (int i = 0; i < g.size(); ++i) f[i] = cosine ? std::cos(k * g.points()[i]) : std::sin(k * g.points()[i]);
  return f;
}

}  // namespace

TEST_CASE("grid points and wavenumbers") {
  const PeriodicGrid g(64, 16.0 * pi);
  CHECK(g.points()[0] == doctest::Approx(-16.0 * pi));
  CHECK(g.points()[32] == doctest::Approx(0.0));
  CHECK(g.spacing() == doctest::Approx(pi / 2.0));
  CHECK(g.wavenumbers()[3] == doctest::Approx(3.0 / 16.0));
  CHECK(g.wavenumbers()[63] == doctest::Approx(-1.0 / 16.0));
  CHECK(g.mode_index(32) == -32);
  for (int i = 0; i < 64; ++i) {
    const int j = mirror_index(i, 64);
    const double s = g.points()[i] + g.points()[j];
    CHECK(std::abs(std::remainder(s, g.period())) < 1e-12);
  }
  CHECK_THROWS_AS(PeriodicGrid(0), Error);
}

TEST_CASE("forward and inverse are exact inverses") {
  const PeriodicGrid g(128);
  const CField f = random_band(g, 60, 1);
  CHECK((g.inverse(g.forward(f)) - f).cwiseAbs().maxCoeff() < 1e-12);
  // the grid starts at -L, so mode m picks up (-1)^m
  const CField c = g.forward(wave(g, g.wavenumbers()[5], true));
  CHECK(std::abs(c[5] + 0.5) < 1e-14);
  CHECK(std::abs(c[123] + 0.5) < 1e-14);
}

TEST_CASE("spectral derivative and Hilbert multiplier on trig modes") {
  const PeriodicGrid g(128);
  const double k = g.wavenumbers()[7];
  const CField d = fourier_derivative(g, wave(g, k, false));
  CHECK((d - k * wave(g, k, true)).cwiseAbs().maxCoeff() < 1e-12);
  const CField d2 = fourier_derivative(g, wave(g, k, true), 2);
  CHECK((d2 + k * k * wave(g, k, true)).cwiseAbs().maxCoeff() < 1e-12);
  // -sgn(k): cos -> -i sin
  const CField h = flat_hilbert(g, wave(g, k, true));
  CHECK((h + I * wave(g, k, false)).cwiseAbs().maxCoeff() < 1e-13);
  // H^2 = I on mean-free, Nyquist-free data
  const CField f = random_band(g, 40, 2);
  const CField f0 = f.array() - f.mean();
  CHECK((flat_hilbert(g, flat_hilbert(g, f0)) - f0).cwiseAbs().maxCoeff() < 1e-12);
  const CField hd = half_derivative(g, half_derivative(g, wave(g, k, true)));
  CHECK((hd - k * wave(g, k, true)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("norms") {
  const PeriodicGrid g(128);
  const double L = g.half_period();
  const double k = g.wavenumbers()[4];
  // int cos^2 over one period is L
  CHECK(l2_norm(g, wave(g, k, true)) == doctest::Approx(std::sqrt(L)).epsilon(1e-13));
  CHECK(sobolev_norm(g, wave(g, k, true), 0.0) == doctest::Approx(std::sqrt(L)).epsilon(1e-13));
  CHECK(sobolev_norm(g, wave(g, k, true), 2.0) ==
        doctest::Approx(std::sqrt(L) * (1.0 + k * k)).epsilon(1e-13));
  CHECK(derivative_sum_norm_sq(g, wave(g, k, false), 2) ==
        doctest::Approx(L * (1.0 + k * k + k * k * k * k)).epsilon(1e-13));
  const CField f = random_band(g, 50, 3);
  double prev = 0.0;
  for (double s : {0.0, 0.5, 1.0, 2.5, 4.0, 4.5}) {
    const double v = sobolev_norm(g, f, s);
    CHECK(v >= prev);
    prev = v;
  }
  const RField re = f.real();
  CHECK(sobolev_norm(g, re, 1.5) == doctest::Approx(sobolev_norm(g, to_complex(re), 1.5)));
}

TEST_CASE("dealiased product and filters") {
  const PeriodicGrid g(64);
  const double k = g.wavenumbers()[5];
  const CField p = g.dealiased_product(wave(g, k, true), wave(g, k, true));
  CField expect(g.size());
  for (int i = 0; i < g.size(); ++i) expect[i] = 0.5 * (1.0 + std::cos(2.0 * k * g.points()[i]));
  CHECK((p - expect).cwiseAbs().maxCoeff() < 1e-13);
  // mode 20 squared lands on 40, which is beyond n/2 and must be dropped
  const double k20 = g.wavenumbers()[20];
  const CField q = g.dealiased_product(wave(g, k20, true), wave(g, k20, true));
  CHECK((q.array() - 0.5).abs().maxCoeff() < 1e-13);
  const CField c = g.forward(two_thirds_filter(g, random_band(g, 31, 4)));
  for (int s = 0; s < g.size(); ++s) {
    if (std::abs(g.mode_index(s)) > g.size() / 3) CHECK(std::abs(c[s]) < 1e-15);
  }
}

TEST_CASE("interpolation is exact off the grid") {
  const PeriodicGrid g(64);
  const double k = g.wavenumbers()[3];
  for (double x : {0.1234, -40.0, 77.0}) {
    CHECK(std::abs(interpolate(g, wave(g, k, false), x) - std::sin(k * x)) < 1e-12);
  }
}
