#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wwv {

using cplx = std::complex<double>;
using CField = Eigen::VectorXcd;
using RField = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorCode {
  invalid_argument = 1,
  non_finite,
  chord_arc,
  near_boundary,
  singular_system,
  collision,
  not_converged,
  io,
  config,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

void require_finite(const CField& f, const char* what);
void require_finite(const RField& f, const char* what);

inline CField to_complex(const RField& f) { return f.cast<cplx>(); }

}  // namespace wwv
