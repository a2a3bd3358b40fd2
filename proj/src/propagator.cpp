#include "divprop/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "divprop/json_io.hpp"
#include "divprop/linalg.hpp"
#include "divprop/rng.hpp"

namespace divprop {

std::string to_string(InverseRule rule) {
  switch (rule) {
    case InverseRule::Auto: return "auto";
    case InverseRule::Spectral: return "spectral";
    case InverseRule::MoorePenrose: return "moore_penrose";
    case InverseRule::DualComplement: return "dual_complement";
    case InverseRule::KernelComplement: return "kernel_complement";
  }
  return "auto";
}

InverseRule inverse_rule_from_string(const std::string& name) {
  if (name == "auto") return InverseRule::Auto;
  if (name == "spectral") return InverseRule::Spectral;
  if (name == "moore_penrose" || name == "mp") return InverseRule::MoorePenrose;
  if (name == "dual_complement" || name == "dual") return InverseRule::DualComplement;
  if (name == "kernel_complement" || name == "kernel") return InverseRule::KernelComplement;
  fail(Errc::invalid_argument, "unknown inverse rule \"" + name + "\"");
}

namespace {

RealMatrix realified(const Matrix& m, const char* what) {
  if (m.imag().cwiseAbs().maxCoeff() > kTolHerm * std::max(1.0, m.cwiseAbs().maxCoeff()))
    fail(Errc::hermiticity_violation, std::string(what) + ": expected a real result");
  return m.real();
}

RealMatrix spectral_rule(const TransferMatrix& ts) {
  SpectralDecomposition s = spectral_decompose(ts);
  return realified(spectral_ginverse(s), "spectral inverse of a real transfer matrix");
}

RealMatrix transversal_rule(const TransferMatrix& ts, bool use_kernel, double tol_rank) {
  Matrix a = ts.t.cast<Complex>();
  Matrix complement;
  if (use_kernel) {
    complement = kernel_basis(a, tol_rank);
  } else {
    RealSvd s = real_svd(ts.t, tol_rank);
    complement = s.u.rightCols(ts.sdim() - s.rank).cast<Complex>();
  }
  Matrix b = Matrix::Zero(ts.sdim(), complement.cols());
  return realified(transversal_ginverse(a, complement, b, std::nullopt, tol_rank),
                   "transversal inverse of a real transfer matrix");
}

}  // namespace

RealMatrix build_inverse_by_rule(const TransferMatrix& ts, InverseRule rule, double tol_rank) {
  const int n = ts.sdim();
  if (ts.t.rows() != n || ts.t.cols() != n)
    fail(Errc::invalid_dimension, "build_inverse_by_rule: malformed transfer matrix");
  switch (rule) {
    case InverseRule::Auto: {
      if (numerical_rank(ts.t, tol_rank) == n) return ts.t.partialPivLu().inverse();
      try {
        return spectral_rule(ts);
      } catch (const Error& e) {
        if (e.code() != Errc::not_diagonalizable) throw;
        return realified(moore_penrose(ts.t.cast<Complex>(), tol_rank), "pseudoinverse");
      }
    }
    case InverseRule::Spectral:
      return spectral_rule(ts);
    case InverseRule::MoorePenrose:
      return realified(moore_penrose(ts.t.cast<Complex>(), tol_rank), "pseudoinverse");
    case InverseRule::DualComplement:
      return transversal_rule(ts, false, tol_rank);
    case InverseRule::KernelComplement:
      return transversal_rule(ts, true, tol_rank);
  }
  fail(Errc::invalid_argument, "unknown inverse rule");
}

int TPInverseFamily::free_count() const {
  const int m = base.sdim() - 1;
  const int k = m - rank;
  return k * (2 * rank + k + 1);
}

RealMatrix TPInverseFamily::instantiate(const RealVector& theta) const {
  if (theta.size() != free_count())
    fail(Errc::invalid_argument, "inverse family: wrong parameter count");
  const int m = base.sdim() - 1;
  const int r = rank;
  const int k = m - r;
  RealMatrix mid = RealMatrix::Zero(m, m);
  for (int i = 0; i < r; ++i) mid(i, i) = 1.0 / sing(i);
  int idx = 0;
  for (int j = 0; j < k; ++j)  // X block, r x k
    for (int i = 0; i < r; ++i) mid(i, r + j) = theta(idx++);
  for (int j = 0; j < r; ++j)  // Y block, k x r
    for (int i = 0; i < k; ++i) mid(r + i, j) = theta(idx++);
  for (int j = 0; j < k; ++j)  // Z block, k x k
    for (int i = 0; i < k; ++i) mid(r + i, r + j) = theta(idx++);
  RealMatrix gamma = v * mid * u.transpose();
  RealVector c = theta.tail(k);
  RealVector y = -gamma * base.affine_shift() + kernel * c;
  RealMatrix g = RealMatrix::Zero(m + 1, m + 1);
  g(0, 0) = 1.0;
  g.block(1, 0, m, 1) = y;
  g.block(1, 1, m, m) = gamma;
  return g;
}

RealMatrix TPInverseFamily::instantiate_zero() const {
  return instantiate(RealVector::Zero(free_count()));
}

TPInverseFamily tp_inverse_family(const TransferMatrix& ts, double tol_rank) {
  if (!ts.trace_preserving())
    fail(Errc::not_trace_preserving, "inverse family needs a trace-preserving map");
  TPInverseFamily fam;
  fam.base = ts;
  RealMatrix delta = ts.linear_block();
  RealSvd s = real_svd(delta, tol_rank);
  fam.u = s.u;
  fam.v = s.v;
  fam.rank = s.rank;
  fam.sing = s.sing.head(s.rank);
  const int m = ts.sdim() - 1;
  fam.kernel = s.v.rightCols(m - s.rank);
  fam.delta_pinv = s.v.leftCols(s.rank) *
                   s.sing.head(s.rank).cwiseInverse().asDiagonal() *
                   s.u.leftCols(s.rank).transpose();
  return fam;
}

ParamFamily propagator_family(const TransferMatrix& tt, const TPInverseFamily& fam,
                              double tol_rank) {
  if (tt.sdim() != fam.base.sdim())
    fail(Errc::invalid_dimension, "propagator family: dimension mismatch");
  ParamFamily out;
  const int count = fam.free_count();
  RealMatrix g0 = fam.instantiate_zero();
  out.base.dim = tt.dim;
  out.base.t = tt.t * g0;
  // the family is affine in theta, so unit coordinate steps recover the
  // direction matrices exactly; orthonormalize so search coordinates are
  // scale-free
  const double scale = std::max(1.0, out.base.t.norm());
  for (int i = 0; i < count; ++i) {
    RealVector e = RealVector::Zero(count);
    e(i) = 1.0;
    RealMatrix dir = tt.t * fam.instantiate(e) - out.base.t;
    for (const RealMatrix& prev : out.directions)
      dir -= (prev.array() * dir.array()).sum() * prev;
    const double n = dir.norm();
    if (n > std::sqrt(tol_rank) * scale) out.directions.push_back(dir / n);
  }
  return out;
}

std::string to_string(CptpVerdict v) {
  switch (v) {
    case CptpVerdict::unique_cptp: return "unique-CPTP";
    case CptpVerdict::multi_cptp: return "multi-CPTP";
    case CptpVerdict::none_cptp: return "none-CPTP";
    case CptpVerdict::not_searched: return "not-searched";
  }
  return "not-searched";
}

namespace {

struct FamilyEval {
  const ParamFamily* fam;
  double operator()(const RealVector& theta) const {
    TransferMatrix v;
    v.dim = fam->base.dim;
    v.t = fam->base.t;
    for (Eigen::Index i = 0; i < theta.size(); ++i) v.t += theta(i) * fam->directions[i];
    return min_choi_eigenvalue(v);
  }
};

// maximize a concave function by reflection-based simplex descent on -f
RealVector nelder_mead(const FamilyEval& f, RealVector start, double step, int budget) {
  const int n = static_cast<int>(start.size());
  std::vector<RealVector> pts(n + 1, start);
  std::vector<double> val(n + 1);
  for (int i = 1; i <= n; ++i) pts[i](i - 1) += step;
  for (int i = 0; i <= n; ++i) val[i] = f(pts[i]);
  int evals = n + 1;
  while (evals < budget) {
    // order descending (maximizing)
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] > val[b]; });
    std::vector<RealVector> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = val[order[i]];
    }
    pts = std::move(p2);
    val = std::move(v2);
    if ((pts[0] - pts[n]).norm() < 1e-12) break;

    RealVector centroid = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= double(n);

    RealVector xr = centroid + (centroid - pts[n]);
    double fr = f(xr);
    ++evals;
    if (fr > val[0]) {
      RealVector xe = centroid + 2.0 * (centroid - pts[n]);
      double fe = f(xe);
      ++evals;
      pts[n] = fe > fr ? xe : xr;
      val[n] = std::max(fe, fr);
    } else if (fr > val[n - 1]) {
      pts[n] = xr;
      val[n] = fr;
    } else {
      RealVector xc = centroid + 0.5 * (pts[n] - centroid);
      double fc = f(xc);
      ++evals;
      if (fc > val[n]) {
        pts[n] = xc;
        val[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          val[i] = f(pts[i]);
          ++evals;
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (val[i] > val[best]) best = i;
  return pts[best];
}

// f is concave along each axis; ternary-shrink a bracket around the max
void coordinate_polish(const FamilyEval& f, RealVector& theta, double radius, int sweeps) {
  const int n = static_cast<int>(theta.size());
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double lo = theta(i) - radius, hi = theta(i) + radius;
      RealVector probe = theta;
      for (int iter = 0; iter < 70 && hi - lo > 1e-9; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        probe(i) = m1;
        const double f1 = f(probe);
        probe(i) = m2;
        const double f2 = f(probe);
        if (f1 < f2)
          lo = m1;
        else
          hi = m2;
      }
      theta(i) = 0.5 * (lo + hi);
    }
    radius = std::max(radius * 0.25, 1e-6);
  }
}

}  // namespace

CptpSearchResult cptp_search(const ParamFamily& fam, double tol_psd, unsigned long long seed) {
  const int k = static_cast<int>(fam.directions.size());
  if (k > 8) fail(Errc::family_too_large, "cptp search supports at most 8 free parameters");
  CptpSearchResult out;
  FamilyEval f{&fam};

  if (k == 0) {
    out.theta_star = RealVector::Zero(0);
    out.best_min_eig = f(out.theta_star);
    if (out.best_min_eig < -tol_psd) {
      out.verdict = CptpVerdict::none_cptp;
    } else {
      out.verdict = CptpVerdict::unique_cptp;
      out.witnesses.push_back(out.theta_star);
    }
    return out;
  }

  // grid seeding over [-5, 5]^k
  const int per_axis =
      k <= 4 ? 11 : std::max(3, static_cast<int>(std::floor(std::pow(20000.0, 1.0 / k))));
  RealVector best = RealVector::Zero(k);
  double best_val = f(best);
  std::vector<int> counter(k, 0);
  for (;;) {
    RealVector theta(k);
    for (int i = 0; i < k; ++i)
      theta(i) = -5.0 + 10.0 * double(counter[i]) / double(per_axis - 1);
    const double val = f(theta);
    if (val > best_val) {
      best_val = val;
      best = theta;
    }
    int axis = 0;
    while (axis < k && ++counter[axis] == per_axis) counter[axis++] = 0;
    if (axis == k) break;
  }

  best = nelder_mead(f, best, 0.5, 4000 * k);
  coordinate_polish(f, best, 1.0, 3);
  best_val = f(best);
  out.theta_star = best;
  out.best_min_eig = best_val;

  if (best_val < -tol_psd) {
    out.verdict = CptpVerdict::none_cptp;
    return out;
  }
  out.witnesses.push_back(best);
  if (best_val > 1e-8) {
    // interior feasible point: the feasible set has positive volume
    out.verdict = CptpVerdict::multi_cptp;
    for (double sign : {+1.0, -1.0}) {
      RealVector probe = best;
      probe(0) += sign * 1e-3;
      if (f(probe) >= -tol_psd && out.witnesses.size() < 2) out.witnesses.push_back(probe);
    }
    if (out.witnesses.size() < 2) out.witnesses.push_back(best);  // conservative fallback
    return out;
  }

  // boundary regime: measure the radius of the top slice of the (convex)
  // feasible set around theta_star; a tiny slack absorbs eigensolver noise
  const double threshold = best_val - 1e-13;
  std::vector<RealVector> dirs;
  for (int i = 0; i < k; ++i) {
    RealVector e = RealVector::Zero(k);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  Rng rng(derive_seed(seed, 0x70726f62));
  const int extra = std::max(8, 2 * k);
  for (int i = 0; i < extra; ++i) {
    RealVector d(k);
    for (int j = 0; j < k; ++j) d(j) = rng.normal();
    const double n = d.norm();
    if (n > 0) dirs.push_back(d / n);
  }

  double max_radius = 0.0;
  RealVector far_point = best;
  for (const RealVector& d : dirs) {
    double lo = 0.0, hi = 1.0;
    bool unbounded = false;
    while (f(best + hi * d) >= threshold) {
      lo = hi;
      hi *= 2.0;
      if (hi > 64.0) {
        unbounded = true;
        break;
      }
    }
    if (!unbounded) {
      for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (f(best + mid * d) >= threshold)
          lo = mid;
        else
          hi = mid;
      }
    }
    if (lo > max_radius) {
      max_radius = lo;
      far_point = best + lo * d;
    }
    if (max_radius > kUniqueCluster) break;
  }

  if (max_radius <= kUniqueCluster) {
    out.verdict = CptpVerdict::unique_cptp;
  } else {
    out.verdict = CptpVerdict::multi_cptp;
    out.witnesses.push_back(far_point);
  }
  return out;
}

PropagatorReport propagate(const TransferMatrix& tt, const TransferMatrix& ts,
                           const RealMatrix& gs, const Tolerances& tol) {
  if (tt.sdim() != ts.sdim() || gs.rows() != ts.sdim() || gs.cols() != ts.sdim())
    fail(Errc::invalid_dimension, "propagate: dimension mismatch");
  KernelInclusion inc = kernel_inclusion(ts, tt, kTolKernel, tol.rank);
  if (!inc.holds)
    fail(Errc::not_divisible,
         "propagate: kernel inclusion fails (residual " + std::to_string(inc.residual) + ")");
  PropagatorReport report;
  report.v.dim = tt.dim;
  report.v.t = tt.t * gs;
  report.propagator_residual = (report.v.t * ts.t - tt.t).norm();
  report.image_match = image_condition_check(report.v, tt, tol.rank);
  report.certificate = certify(report.v, tol);
  ChoiMatrix choi = transfer_to_choi(report.v);
  HermEig eig = eig_herm(choi.c, kTolHerm);
  report.choi_spectrum.assign(eig.eigenvalues.data(),
                              eig.eigenvalues.data() + eig.eigenvalues.size());
  return report;
}

PropagatorReport propagate(const TransferMatrix& tt, const TransferMatrix& ts, InverseRule rule,
                           const Tolerances& tol) {
  PropagatorReport report = propagate(tt, ts, build_inverse_by_rule(ts, rule, tol.rank), tol);
  report.inverse_choice = to_string(rule);
  return report;
}

PropagatorReport propagate_family(const MapFamily& fam, double s, double t, InverseRule rule,
                                  bool search, const Tolerances& tol, unsigned long long seed) {
  if (s > t) fail(Errc::invalid_argument, "propagate_family: needs s <= t");
  TransferMatrix ts = fam.at(s);
  TransferMatrix tt = fam.at(t);
  PropagatorReport report = propagate(tt, ts, rule, tol);
  report.s = s;
  report.t = t;
  report.composition_residual = composition_check(fam, rule, s, 0.5 * (s + t), t, tol.rank);
  if (search) {
    TPInverseFamily inv = tp_inverse_family(ts, tol.rank);
    ParamFamily family = propagator_family(tt, inv, tol.rank);
    report.uniqueness = cptp_search(family, tol.psd, seed);
  }
  return report;
}

double composition_check(const MapFamily& fam, InverseRule rule, double s, double u, double t,
                         double tol_rank) {
  if (s > u || u > t) fail(Errc::invalid_argument, "composition check needs s <= u <= t");
  TransferMatrix ts = fam.at(s), tu = fam.at(u), tt = fam.at(t);
  RealMatrix gs = build_inverse_by_rule(ts, rule, tol_rank);
  RealMatrix gu = build_inverse_by_rule(tu, rule, tol_rank);
  RealMatrix v_ts = tt.t * gs;
  RealMatrix v_tu = tt.t * gu;
  RealMatrix v_us = tu.t * gs;
  return (v_tu * v_us - v_ts).norm();
}

bool image_condition_check(const TransferMatrix& v, const TransferMatrix& tt, double tol_rank) {
  if (v.sdim() != tt.sdim()) fail(Errc::invalid_dimension, "image check: dimension mismatch");
  const int rv = numerical_rank(v.t, tol_rank);
  const int rt = numerical_rank(tt.t, tol_rank);
  if (rv != rt) return false;
  RealMatrix stacked(v.t.rows(), v.t.cols() + tt.t.cols());
  stacked << v.t, tt.t;
  return numerical_rank(stacked, tol_rank) == rt;
}

nlohmann::json certificate_to_json(const MapCertificate& cert) {
  nlohmann::json j;
  j["dim"] = cert.dim;
  j["trace_preserving"] = cert.trace_preserving;
  j["completely_positive"] = cert.completely_positive;
  j["min_choi_eigenvalue"] = cert.min_choi_eigenvalue;
  j["positivity_sampled_ok"] = cert.positivity_sampled_ok;
  j["positivity_samples"] = cert.positivity_samples;
  j["rank"] = cert.rank;
  nlohmann::json kernel = nlohmann::json::array();
  for (const Matrix& m : cert.kernel_basis) kernel.push_back(matrix_to_json(m));
  j["kernel_basis"] = kernel;
  nlohmann::json image = nlohmann::json::array();
  for (const Matrix& m : cert.image_basis) image.push_back(matrix_to_json(m));
  j["image_basis"] = image;
  return j;
}

nlohmann::json report_to_json(const PropagatorReport& report) {
  nlohmann::json j;
  j["transfer"] = transfer_to_json(report.v);
  if (std::isfinite(report.s)) j["s"] = report.s;
  if (std::isfinite(report.t)) j["t"] = report.t;
  if (!report.inverse_choice.empty()) j["inverse_choice"] = report.inverse_choice;
  j["propagator_residual"] = report.propagator_residual;
  if (std::isfinite(report.composition_residual))
    j["composition_residual"] = report.composition_residual;
  j["image_match"] = report.image_match;
  j["certificate"] = certificate_to_json(report.certificate);
  j["choi_spectrum"] = report.choi_spectrum;
  nlohmann::json u;
  u["verdict"] = to_string(report.uniqueness.verdict);
  if (report.uniqueness.verdict != CptpVerdict::not_searched) {
    std::vector<double> theta(report.uniqueness.theta_star.data(),
                              report.uniqueness.theta_star.data() +
                                  report.uniqueness.theta_star.size());
    u["theta_star"] = theta;
    u["best_min_choi_eigenvalue"] = report.uniqueness.best_min_eig;
  }
  j["uniqueness"] = u;
  return j;
}

}  // namespace divprop
