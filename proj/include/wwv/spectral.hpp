#pragma once

#include <memory>

#include "wwv/common.hpp"

namespace wwv {

// Uniform periodic grid on [-L, L). Coefficient arrays use FFT order: slot m
// holds the mode with index m for m < n/2 and m - n otherwise, so the Nyquist
// mode sits at slot n/2 with index -n/2.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(int n_points, double half_period = 16.0 * pi);

  int size() const { return n_; }
  double half_period() const { return L_; }
  double period() const { return 2.0 * L_; }
  double spacing() const { return 2.0 * L_ / n_; }
  double k_max() const { return pi * (n_ / 2) / L_; }
  int nyquist_slot() const { return n_ / 2; }

  const RField& points() const { return alpha_; }
  // Angular wavenumbers k = pi*m/L in FFT order.
  const RField& wavenumbers() const { return k_; }
  int mode_index(int slot) const { return slot < n_ / 2 ? slot : slot - n_; }

  // c_m = (1/n) sum_j f_j exp(-2 pi i m j / n); inverse undoes it exactly.
  CField forward(const CField& f) const;
  CField inverse(const CField& c) const;

  CField apply_symbol(const CField& f, const CField& symbol) const;
  CField apply_symbol(const CField& f, const RField& symbol) const;

  // Product of the trigonometric interpolants of f and g, truncated back to
  // n modes (3/2 padding).
  CField dealiased_product(const CField& f, const CField& g) const;

  bool same_as(const PeriodicGrid& other) const { return n_ == other.n_ && L_ == other.L_; }

 private:
  struct Plans;
  int n_;
  double L_;
  RField alpha_;
  RField k_;
  std::shared_ptr<const Plans> plans_;
};

CField fourier_derivative(const PeriodicGrid& grid, const CField& f, int order = 1);
RField fourier_derivative(const PeriodicGrid& grid, const RField& f, int order = 1);

// Multiplier -sgn(k): modes with k < 0 are fixed, k > 0 change sign, the mean
// and Nyquist modes are removed.
CField flat_hilbert(const PeriodicGrid& grid, const CField& f);

// Multiplier |k|^(1/2).
CField half_derivative(const PeriodicGrid& grid, const CField& f);

// Discrete H^s norm with weight (1 + k^2)^s, normalized so that s = 0 is the
// L2 norm over one period: ||f||^2 = 2L sum_m |c_m|^2 (1 + k_m^2)^s.
double sobolev_norm(const PeriodicGrid& grid, const CField& f, double s);
double sobolev_norm(const PeriodicGrid& grid, const RField& f, double s);

// sum_{k<=s} ||d^k f||^2 for integer s; the norm used by the energy comparison.
double derivative_sum_norm_sq(const PeriodicGrid& grid, const CField& f, int s);

double l2_norm(const PeriodicGrid& grid, const CField& f);
double l2_norm(const PeriodicGrid& grid, const RField& f);

// Zero every mode with |m| > n/3.
CField two_thirds_filter(const PeriodicGrid& grid, const CField& f);

// Trigonometric interpolant of f evaluated at x (any real x, periodic).
cplx interpolate(const PeriodicGrid& grid, const CField& f, double x);

}  // namespace wwv
