#pragma once

#include <functional>
#include <vector>

#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

#include <json.hpp>

namespace divprop {

// map between operator spaces of possibly different dimensions, stored over
// the two Hermitian bases
struct RectTransfer {
  int dim_in = 0, dim_out = 0;
  RealMatrix t;  // dim_out^2 x dim_in^2
  static RectTransfer identity(int d);
};

RectTransfer rect_from_action(const std::function<Matrix(const Matrix&)>& apply, int dim_in,
                              int dim_out, double tol_herm = kTolHerm);
Matrix apply_rect(const RectTransfer& t, const Matrix& x);
Matrix apply_rect_extended(const RectTransfer& t, int ancilla_dim, const Matrix& x);
RectTransfer compose(const RectTransfer& after, const RectTransfer& before);
RectTransfer rect_from_json(const nlohmann::json& j);
nlohmann::json rect_to_json(const RectTransfer& t);

// steps[0] must be the identity on the source space; steps[n] maps the source
// to its own target space
struct DiscreteFamily {
  std::vector<RectTransfer> steps;
  int source_dim() const;
  bool divisible(double tol = kTolKernel, double tol_rank = kTolRank) const;
};
DiscreteFamily discrete_family_from_json(const nlohmann::json& j);

// all right inverses of a full-image map: pinv + kernel * W over free W
struct RightInverseFamily {
  RealMatrix pinv;
  RealMatrix kernel;  // kernel basis of the map, one column per free direction
  RealMatrix at(const RealMatrix& w) const;
  RealMatrix zero() const { return pinv; }
};
RightInverseFamily right_inverse(const RectTransfer& t, double tol_rank = kTolRank);

RectTransfer discrete_propagator(const DiscreteFamily& fam, int i, int j,
                                 double tol_rank = kTolRank);
RectTransfer discrete_propagator(const DiscreteFamily& fam, int i, int j, const RealMatrix& gi,
                                 double tol_rank = kTolRank);

struct Ensemble2 {
  double p1 = 0.5, p2 = 0.5;
  Matrix rho1, rho2;
};

struct HelstromValue {
  double trace_norm_term;    // 1/2 |p1 rho1 - p2 rho2|_1, the quantity whose
                             // monotonicity the divisibility criteria use
  double guess_probability;  // 1/2 (1 + |p1 rho1 - p2 rho2|_1), the standard
                             // optimal binary guessing value
};
HelstromValue helstrom(const Ensemble2& e);

struct InfoViolation {
  int sample;
  int step_from, step_to;
  double increase;
  Matrix witness;
};
struct InfoDecreasingReport {
  int ancilla_dim = 1;
  int samples = 0;
  double max_increase = 0.0;
  std::vector<InfoViolation> violations;
  bool violated() const { return !violations.empty(); }
};
InfoDecreasingReport info_decreasing_check(const DiscreteFamily& fam, int ancilla_dim,
                                           int samples, unsigned long long seed = kDefaultSeed,
                                           double tol_mono = kTolMono);

}  // namespace divprop
