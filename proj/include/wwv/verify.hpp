#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wwv {

struct CriterionOutcome {
  int id = 0;
  std::string key;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
};

// Criterion keys in order, plus the group selectors accepted by run_verify.
std::vector<std::string> criterion_keys();
std::vector<std::string> verify_selectors();
// Throws Error(config) for an unknown selector.
std::vector<int> criteria_for(const std::string& selector);

CriterionOutcome run_criterion(int id, const VerifyOptions& opt = {});
std::vector<CriterionOutcome> run_verify(const std::string& selector, const VerifyOptions& opt = {},
                                         const std::function<void(const CriterionOutcome&)>& on_result = {});

// Periodized trapezoid value of int dbeta / ((beta - w1)(beta - conj w2)).
std::complex<double> residue_pair_integral(int n, double half_period, std::complex<double> w1,
                                           std::complex<double> w2);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wwv
