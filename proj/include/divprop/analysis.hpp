// analysis.hpp: map certificates, kernel inclusion, trace-norm monotonicity

#pragma once

#include <vector>

#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

namespace divprop {

struct MapCertificate {
  int dim = 0;
  bool trace_preserving = false;
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;
  bool positivity_sampled_ok = false;  // necessary condition from random pure states
  int positivity_samples = 0;
  int rank = 0;
  std::vector<Matrix> kernel_basis;  // Hermitian operators, orthonormal
  std::vector<Matrix> image_basis;
};

MapCertificate certify(const TransferMatrix& t, const Tolerances& tol = {},
                       int positivity_samples = 1000,
                       unsigned long long seed = kDefaultSeed);

struct KernelInclusion {
  bool holds = false;
  double residual = 0.0;  // max norm of T_t applied to a Ker(T_s) basis column
};

// Ker(T_s) subseteq Ker(T_t): the divisibility criterion.
KernelInclusion kernel_inclusion(const TransferMatrix& ts, const TransferMatrix& tt,
                                 double tol = kTolKernel, double tol_rank = kTolRank);

struct MonotonicityViolation {
  int sample = 0;
  double t_from = 0.0;
  double t_to = 0.0;
  double increase = 0.0;
  Matrix witness;
};

struct MonotonicityReport {
  int ancilla_dim = 1;
  int samples = 0;
  std::vector<double> times;
  double max_increase = 0.0;  // most positive step found (refined witness included)
  std::vector<MonotonicityViolation> violations;

  bool violated() const { return !violations.empty(); }
};

// Samples Hermitian operators on C^ancilla (x) C^d (traceless when
// ancilla == d+1) and scans ||(id (x) Lambda_t)(X)||_1 over the grid. A
// coordinate hill-climb then sharpens the best candidate into a witness;
// refine_budget caps the total map evaluations spent on refinement.
MonotonicityReport monotonicity_check(const MapFamily& family, int ancilla, int samples,
                                      const std::vector<double>& grid,
                                      unsigned long long seed = kDefaultSeed,
                                      double tol_mono = kTolMono, int refine_budget = 10000);

std::vector<double> linear_grid(double start, double stop, int steps);

}  // namespace divprop
