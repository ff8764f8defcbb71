#include "wwv/spectral.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace wwv {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  int n = 0;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Plan(int size) : n(size) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, flags);
    bwd = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
  }
  ~Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void run(fftw_plan p, const cplx* in, cplx* out) const {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }
};

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::chord_arc: return "chord_arc";
    case ErrorCode::near_boundary: return "near_boundary";
    case ErrorCode::singular_system: return "singular_system";
    case ErrorCode::collision: return "collision";
    case ErrorCode::not_converged: return "not_converged";
    case ErrorCode::io: return "io";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

void require_finite(const CField& f, const char* what) {
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i].real()) || !std::isfinite(f[i].imag())) {
      throw Error(ErrorCode::non_finite,
                  std::string(what) + ": non-finite sample at index " + std::to_string(i));
    }
  }
}

void require_finite(const RField& f, const char* what) {
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i])) {
      throw Error(ErrorCode::non_finite,
                  std::string(what) + ": non-finite sample at index " + std::to_string(i));
    }
  }
}

struct PeriodicGrid::Plans {
  Plan base;
  Plan padded;
  Plans(int n, int npad) : base(n), padded(npad) {}
};

PeriodicGrid::PeriodicGrid(int n_points, double half_period) : n_(n_points), L_(half_period) {
  if (n_points < 16 || n_points % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "grid size must be even and at least 16");
  }
  if (!(half_period > 0.0) || !std::isfinite(half_period)) {
    throw Error(ErrorCode::invalid_argument, "half period must be positive and finite");
  }
  alpha_.resize(n_);
  k_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    alpha_[i] = -L_ + 2.0 * L_ * i / n_;
    k_[i] = pi * mode_index(i) / L_;
  }
  plans_ = std::make_shared<const Plans>(n_, 3 * n_ / 2);
}

CField PeriodicGrid::forward(const CField& f) const {
  if (f.size() != n_) throw Error(ErrorCode::invalid_argument, "field length does not match grid");
  CField out(n_);
  plans_->base.run(plans_->base.fwd, f.data(), out.data());
  out /= static_cast<double>(n_);
  return out;
}

CField PeriodicGrid::inverse(const CField& c) const {
  if (c.size() != n_) throw Error(ErrorCode::invalid_argument, "coefficient length does not match grid");
  CField out(n_);
  plans_->base.run(plans_->base.bwd, c.data(), out.data());
  return out;
}

CField PeriodicGrid::apply_symbol(const CField& f, const CField& symbol) const {
  CField c = forward(f);
  c.array() *= symbol.array();
  return inverse(c);
}

CField PeriodicGrid::apply_symbol(const CField& f, const RField& symbol) const {
  CField c = forward(f);
  c.array() *= symbol.array().cast<cplx>();
  return inverse(c);
}

CField PeriodicGrid::dealiased_product(const CField& f, const CField& g) const {
  const int np = 3 * n_ / 2;
  const CField cf = forward(f);
  const CField cg = forward(g);
  CField pf = CField::Zero(np), pg = CField::Zero(np);
  for (int s = 0; s < n_; ++s) {
    const int m = mode_index(s);
    if (m == -n_ / 2) continue;
    const int ps = m >= 0 ? m : m + np;
    pf[ps] = cf[s];
    pg[ps] = cg[s];
  }
  CField vf(np), vg(np);
  plans_->padded.run(plans_->padded.bwd, pf.data(), vf.data());
  plans_->padded.run(plans_->padded.bwd, pg.data(), vg.data());
  CField prod = (vf.array() * vg.array()).matrix();
  CField cp(np);
  plans_->padded.run(plans_->padded.fwd, prod.data(), cp.data());
  cp /= static_cast<double>(np);
  CField c = CField::Zero(n_);
  for (int s = 0; s < n_; ++s) {
    const int m = mode_index(s);
    if (m == -n_ / 2) continue;
    c[s] = cp[m >= 0 ? m : m + np];
  }
  return inverse(c);
}

CField fourier_derivative(const PeriodicGrid& grid, const CField& f, int order) {
  if (order < 1 || order > 4) throw Error(ErrorCode::invalid_argument, "derivative order must be in 1..4");
  require_finite(f, "fourier_derivative");
  const int n = grid.size();
  CField sym(n);
  for (int s = 0; s < n; ++s) {
    const cplx ik = I * grid.wavenumbers()[s];
    sym[s] = std::pow(ik, order);
  }
  if (order % 2 == 1) sym[grid.nyquist_slot()] = 0.0;
  return grid.apply_symbol(f, sym);
}

RField fourier_derivative(const PeriodicGrid& grid, const RField& f, int order) {
  return fourier_derivative(grid, to_complex(f), order).real();
}

CField flat_hilbert(const PeriodicGrid& grid, const CField& f) {
  require_finite(f, "flat_hilbert");
  const int n = grid.size();
  RField sym(n);
  for (int s = 0; s < n; ++s) {
    const double k = grid.wavenumbers()[s];
    sym[s] = k > 0 ? -1.0 : (k < 0 ? 1.0 : 0.0);
  }
  sym[grid.nyquist_slot()] = 0.0;
  return grid.apply_symbol(f, sym);
}

CField half_derivative(const PeriodicGrid& grid, const CField& f) {
  require_finite(f, "half_derivative");
  const int n = grid.size();
  RField sym(n);
  for (int s = 0; s < n; ++s) sym[s] = std::sqrt(std::abs(grid.wavenumbers()[s]));
  sym[grid.nyquist_slot()] = 0.0;
  return grid.apply_symbol(f, sym);
}

double sobolev_norm(const PeriodicGrid& grid, const CField& f, double s) {
  if (s < 0.0 || s > 8.0) throw Error(ErrorCode::invalid_argument, "Sobolev index must lie in [0, 8]");
  require_finite(f, "sobolev_norm");
  const CField c = grid.forward(f);
  double acc = 0.0;
  for (int m = 0; m < grid.size(); ++m) {
    const double k = grid.wavenumbers()[m];
    acc += std::norm(c[m]) * std::pow(1.0 + k * k, s);
  }
  return std::sqrt(grid.period() * acc);
}

double sobolev_norm(const PeriodicGrid& grid, const RField& f, double s) {
  return sobolev_norm(grid, to_complex(f), s);
}

double derivative_sum_norm_sq(const PeriodicGrid& grid, const CField& f, int s) {
  const CField c = grid.forward(f);
  double acc = 0.0;
  for (int m = 0; m < grid.size(); ++m) {
    const double k2 = grid.wavenumbers()[m] * grid.wavenumbers()[m];
    double w = 0.0, p = 1.0;
    for (int j = 0; j <= s; ++j) {
      w += p;
      p *= k2;
    }
    acc += std::norm(c[m]) * w;
  }
  return grid.period() * acc;
}

double l2_norm(const PeriodicGrid& grid, const CField& f) {
  return std::sqrt(grid.spacing() * f.squaredNorm());
}

double l2_norm(const PeriodicGrid& grid, const RField& f) {
  return std::sqrt(grid.spacing() * f.squaredNorm());
}

CField two_thirds_filter(const PeriodicGrid& grid, const CField& f) {
  CField c = grid.forward(f);
  const int n = grid.size();
  for (int s = 0; s < n; ++s) {
    if (3 * std::abs(grid.mode_index(s)) > n) c[s] = 0.0;
  }
  return grid.inverse(c);
}

cplx interpolate(const PeriodicGrid& grid, const CField& f, double x) {
  const CField c = grid.forward(f);
  const double x0 = x + grid.half_period();
  cplx acc = 0.0;
  for (int s = 0; s < grid.size(); ++s) {
    const double k = grid.wavenumbers()[s];
    if (s == grid.nyquist_slot()) {
      acc += c[s] * std::cos(k * x0);
    } else {
      acc += c[s] * std::exp(I * (k * x0));
    }
  }
  return acc;
}

}  // namespace wwv
