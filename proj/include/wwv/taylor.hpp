#pragma once

#include <string>
#include <vector>

#include "wwv/vortex.hpp"

namespace wwv {

enum class TaylorClass { strong, degenerate, failed };

const char* taylor_class_name(TaylorClass c);

// |inf| <= 1e-8 (1 + sup|A1|) counts as degenerate.
TaylorClass classify_taylor(double infimum, double sup_abs);

struct TaylorReport {
  RField samples;
  double infimum = 0.0;
  double argmin = 0.0;
  int argmin_index = 0;
  TaylorClass classification = TaylorClass::strong;
  // infimum of A1 / |Z_alpha|
  double margin = 0.0;
};

TaylorReport make_report(const PeriodicGrid& grid, RField samples, const RField& speed);

struct ClosedForm {
  double value = 0.0;
  TaylorClass classification = TaylorClass::strong;
};

// Flat interface, one vortex at depth y: A1 at the point above the vortex.
ClosedForm a1_single_vortex_closed(double lambda, double y);
// Flat interface, mirror pair at (+-x, y) with strengths (lambda, -lambda): A1(0).
double a1_pair_closed(double lambda, double x, double y);

// Line-field conjugate velocity sum_j lambda_j i / (2 pi conj(alpha - z_j)).
cplx line_vortex_velocity(const VortexSet& vortices, double alpha);
// Pair-induced vortex velocities on the line with the surface at rest otherwise.
std::vector<cplx> line_vortex_velocities(const VortexSet& vortices);

enum class A1Path { closed_form, quadrature };

// Line model on a flat interface: the window [-L, L) carries the sampled D_t Z
// and the far field beyond it is the analytic line vortex field.
TaylorReport a1_flat_general(const CurveTrace& curve, const CField& dtz, const VortexSet& vortices,
                             const std::vector<cplx>& vortex_velocities, A1Path path);

// The double-sum value at one point (closed form).
double a1_double_sum(const VortexSet& vortices, double alpha);

enum class A1Domain { line, periodic };

struct ConformalData {
  std::vector<cplx> images;       // Phi(z_j)
  std::vector<cplx> derivatives;  // (Phi^{-1})_z at Phi(z_j)
};

// General formula on a conformal parametrization Z. `line` treats the samples
// as a window of the real line (as in a1_flat_general); `periodic` uses the
// periodized csc^2 and vortex kernels.
TaylorReport a1_general(const PeriodicGrid& grid, const CField& conformal_z, const CField& dtz,
                        const VortexSet& vortices, const std::vector<cplx>& vortex_velocities,
                        const ConformalData& conformal, A1Domain domain);

struct CriterionResult {
  bool pass = false;
  double lhs = 0.0;
  double slack = 0.0;  // beta0 - lhs
};

CriterionResult strong_taylor_criterion(const CurveTrace& curve, const VortexSet& vortices, double f_sup,
                                        double beta0);

struct SweepRow {
  double lambda = 0.0;
  double x = 0.0;
  double y = 0.0;
  double a1 = 0.0;
  TaylorClass classification = TaylorClass::strong;
  // lambda^2 / |y|^3
  double ratio = 0.0;
};

// Rows ordered by ratio; returns the first adjacent pair whose class changes.
struct Bracket {
  bool found = false;
  double lower = 0.0;
  double upper = 0.0;
};

Bracket sign_change_bracket(std::vector<SweepRow> rows);

}  // namespace wwv
