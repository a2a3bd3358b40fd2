#pragma once

#include <limits>
#include <string>
#include <vector>

#include "divprop/analysis.hpp"
#include "divprop/ginverse.hpp"
#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

#include <json.hpp>

namespace divprop {

enum class InverseRule {
  Auto,              // exact inverse if invertible, else spectral, else Moore-Penrose
  Spectral,          // sum of lambda^{-1} P_alpha over nonzero eigenvalues
  MoorePenrose,      // SVD pseudoinverse
  DualComplement,    // complement of the image = its orthogonal complement
  KernelComplement,  // complement of the image = the kernel (when transversal)
};

std::string to_string(InverseRule rule);
InverseRule inverse_rule_from_string(const std::string& name);

RealMatrix build_inverse_by_rule(const TransferMatrix& ts, InverseRule rule,
                                 double tol_rank = kTolRank);

// all trace-preserving generalized inverses of a TP map, block form
// [[1, 0], [y, G]] with G an SVD-block inverse of Delta and y = -G x + kernel
// combination; theta packs (vec X, vec Y, vec Z, kernel coefficients)
struct TPInverseFamily {
  TransferMatrix base;  // the map being inverted
  RealMatrix u, v;      // orthogonal factors of Delta
  RealVector sing;      // its positive singular values
  int rank = 0;
  RealMatrix kernel;      // kernel basis of Delta (columns)
  RealMatrix delta_pinv;  // pseudoinverse of Delta, the theta = 0 block
  int free_count() const;
  RealMatrix instantiate(const RealVector& theta) const;
  RealMatrix instantiate_zero() const;
};
TPInverseFamily tp_inverse_family(const TransferMatrix& ts, double tol_rank = kTolRank);

// affine family V(theta) = base + sum theta_i dir_i with orthonormal directions
struct ParamFamily {
  TransferMatrix base;
  std::vector<RealMatrix> directions;
};
ParamFamily propagator_family(const TransferMatrix& tt, const TPInverseFamily& fam,
                              double tol_rank = kTolRank);

enum class CptpVerdict { unique_cptp, multi_cptp, none_cptp, not_searched };
std::string to_string(CptpVerdict v);

struct CptpSearchResult {
  CptpVerdict verdict = CptpVerdict::not_searched;
  RealVector theta_star;  // argmax of the min Choi eigenvalue, direction coords
  double best_min_eig = std::numeric_limits<double>::quiet_NaN();
  std::vector<RealVector> witnesses;  // feasible points: 1 if unique, >=2 if multi
};
CptpSearchResult cptp_search(const ParamFamily& fam, double tol_psd = kTolPsd,
                             unsigned long long seed = kDefaultSeed);

struct PropagatorReport {
  TransferMatrix v;
  double s = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
  std::string inverse_choice;
  double propagator_residual = 0.0;  // norm of V T_s - T_t
  double composition_residual = std::numeric_limits<double>::quiet_NaN();
  bool image_match = false;
  MapCertificate certificate;
  std::vector<double> choi_spectrum;  // ascending
  CptpSearchResult uniqueness;
};

PropagatorReport propagate(const TransferMatrix& tt, const TransferMatrix& ts,
                           const RealMatrix& gs, const Tolerances& tol = {});
PropagatorReport propagate(const TransferMatrix& tt, const TransferMatrix& ts,
                           InverseRule rule = InverseRule::Auto, const Tolerances& tol = {});

// time-aware driver over a family; u = (s+t)/2 supplies the composition check
PropagatorReport propagate_family(const MapFamily& fam, double s, double t,
                                  InverseRule rule = InverseRule::Auto, bool search = false,
                                  const Tolerances& tol = {},
                                  unsigned long long seed = kDefaultSeed);

double composition_check(const MapFamily& fam, InverseRule rule, double s, double u, double t,
                         double tol_rank = kTolRank);

bool image_condition_check(const TransferMatrix& v, const TransferMatrix& tt,
                           double tol_rank = kTolRank);

nlohmann::json report_to_json(const PropagatorReport& report);
nlohmann::json certificate_to_json(const MapCertificate& cert);

}  // namespace divprop
