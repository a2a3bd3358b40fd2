// types.hpp: core aliases, error codes, shared tolerances

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace divprop {

using Complex    = std::complex<double>;
using Matrix     = Eigen::MatrixXcd;
using Vector     = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Errc {
  ok = 0,
  invalid_argument,
  invalid_dimension,
  parse_error,
  not_hermiticity_preserving,
  hermiticity_violation,
  not_completely_positive,
  not_trace_preserving,
  not_divisible,
  not_diagonalizable,
  not_generalized_inverse,
  not_a_projector,
  not_a_complement,
  invalid_b,
  image_mismatch,
  no_right_inverse,
  family_too_large,
  integration_failure,
  model_inconsistency,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Run-wide tolerances. The first three are the CLI-overridable knobs; the rest
// are fixed policy constants.
struct Tolerances {
  double rank = 1e-10;  // relative singular-value cutoff
  double psd  = 1e-9;   // eigenvalue slack for positive-semidefinite verdicts
  double mono = 1e-8;   // trace-norm increase that counts as a violation
};

inline constexpr double kTolRank        = 1e-10;
inline constexpr double kTolPsd         = 1e-9;
inline constexpr double kTolMono        = 1e-8;
inline constexpr double kTolHerm        = 1e-8;   // hermiticity residue rejection
inline constexpr double kTolResidual    = 1e-9;   // defining-identity residuals
inline constexpr double kTolKernel      = 1e-8;   // kernel inclusion residual
inline constexpr double kSpectralZero   = 1e-9;   // relative: |lambda| below counts as zero
inline constexpr double kCondMax        = 1e8;    // eigenvector-matrix conditioning bound
inline constexpr double kUniqueCluster  = 1e-6;   // CPTP-uniqueness clustering radius

inline constexpr unsigned long long kDefaultSeed = 42;

}  // namespace divprop
