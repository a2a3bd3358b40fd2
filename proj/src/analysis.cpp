#include "divprop/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "divprop/linalg.hpp"
#include "divprop/rng.hpp"

namespace divprop {

MapCertificate certify(const TransferMatrix& t, const Tolerances& tol, int positivity_samples,
                       unsigned long long seed) {
  const int d = t.dim;
  if (t.t.rows() != t.sdim() || t.t.cols() != t.sdim())
    fail(Errc::invalid_dimension, "certify: transfer matrix has wrong shape");

  MapCertificate cert;
  cert.dim = d;
  cert.trace_preserving = t.trace_preserving();
  cert.min_choi_eigenvalue = min_choi_eigenvalue(t);
  cert.completely_positive = cert.min_choi_eigenvalue >= -tol.psd;

  RealSvd s = real_svd(t.t, tol.rank);
  cert.rank = s.rank;
  const HermitianBasis basis = herm_basis(d);
  for (int j = s.rank; j < t.sdim(); ++j)
    cert.kernel_basis.push_back(coords_to_operator(RealVector(s.v.col(j)), basis));
  for (int j = 0; j < s.rank; ++j)
    cert.image_basis.push_back(coords_to_operator(RealVector(s.u.col(j)), basis));

  // sampled positivity on random pure states (necessary condition; implied
  // when the map is CP)
  Rng rng(derive_seed(seed, 0x706f73));
  cert.positivity_samples = positivity_samples;
  cert.positivity_sampled_ok = true;
  for (int i = 0; i < positivity_samples; ++i) {
    Vector psi = haar_state(rng, d);
    Matrix rho = psi * psi.adjoint();
    Matrix out = hermitize(apply_transfer(t, rho));
    Eigen::SelfAdjointEigenSolver<Matrix> es(out);
    if (es.eigenvalues().minCoeff() < -tol.psd) {
      cert.positivity_sampled_ok = false;
      break;
    }
  }
  return cert;
}

KernelInclusion kernel_inclusion(const TransferMatrix& ts, const TransferMatrix& tt,
                                 double tol, double tol_rank) {
  if (ts.dim != tt.dim) fail(Errc::invalid_dimension, "kernel_inclusion: dimension mismatch");
  RealMatrix ns = kernel_basis(ts.t, tol_rank);
  KernelInclusion out;
  out.residual = 0.0;
  for (Eigen::Index j = 0; j < ns.cols(); ++j)
    out.residual = std::max(out.residual, (tt.t * ns.col(j)).norm());
  out.holds = out.residual <= tol;
  return out;
}

std::vector<double> linear_grid(double start, double stop, int steps) {
  if (steps < 2) fail(Errc::invalid_argument, "linear_grid: need at least two points");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = start + (stop - start) * double(i) / double(steps - 1);
  return g;
}

namespace {

// flatten a Hermitian matrix to its real degrees of freedom and back
RealVector herm_to_params(const Matrix& h) {
  const int n = static_cast<int>(h.rows());
  RealVector p(n * n);
  int idx = 0;
  for (int i = 0; i < n; ++i) p(idx++) = h(i, i).real();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      p(idx++) = h(i, j).real();
      p(idx++) = h(i, j).imag();
    }
  return p;
}

Matrix params_to_herm(const RealVector& p, int n) {
  Matrix h = Matrix::Zero(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i) h(i, i) = p(idx++);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double re = p(idx++);
      const double im = p(idx++);
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  return h;
}

Matrix project_traceless(const Matrix& h) {
  const int n = static_cast<int>(h.rows());
  return h - (h.trace() / double(n)) * Matrix::Identity(n, n);
}

}  // namespace

MonotonicityReport monotonicity_check(const MapFamily& family, int ancilla, int samples,
                                      const std::vector<double>& grid, unsigned long long seed,
                                      double tol_mono, int refine_budget) {
  const int d = family.dim;
  if (ancilla < 1) fail(Errc::invalid_dimension, "monotonicity_check: ancilla must be positive");
  if (grid.size() < 2) fail(Errc::invalid_argument, "monotonicity_check: grid needs two points");
  const bool traceless = (ancilla == d + 1);
  const int n = ancilla * d;

  // precompute the family once per grid point
  std::vector<TransferMatrix> maps;
  maps.reserve(grid.size());
  for (double t : grid) maps.push_back(family.at(t));

  auto norms_of = [&](const Matrix& x) {
    std::vector<double> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
      out[i] = trace_norm(apply_transfer_extended(maps[i], ancilla, x));
    return out;
  };
  auto best_step = [&](const std::vector<double>& norms, size_t* where) {
    double best = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < norms.size(); ++i) {
      const double inc = norms[i + 1] - norms[i];
      if (inc > best) {
        best = inc;
        if (where) *where = i;
      }
    }
    return best;
  };

  MonotonicityReport report;
  report.ancilla_dim = ancilla;
  report.samples = samples;
  report.times = grid;
  report.max_increase = -std::numeric_limits<double>::infinity();

  Matrix best_x;
  double best_inc = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, 0x6d6f6e0ULL + s));
    Matrix x = random_hermitian(rng, n, traceless);
    x /= x.norm();
    std::vector<double> norms = norms_of(x);
    size_t where = 0;
    const double inc = best_step(norms, &where);
    if (inc > best_inc) {
      best_inc = inc;
      best_x = x;
    }
    if (inc > tol_mono)
      report.violations.push_back({s, grid[where], grid[where + 1], inc, x});
  }

  // coordinate hill-climb on the best candidate
  if (best_x.size() > 0 && refine_budget > 0) {
    RealVector p = herm_to_params(best_x);
    double step = 0.25;
    int evals = 0;
    double current = best_inc;
    while (evals < refine_budget && step > 1e-7) {
      bool improved = false;
      for (Eigen::Index i = 0; i < p.size() && evals < refine_budget; ++i) {
        for (double sgn : {+1.0, -1.0}) {
          RealVector q = p;
          q(i) += sgn * step;
          Matrix x = params_to_herm(q, n);
          if (traceless) x = project_traceless(x);
          const double nx = x.norm();
          if (nx == 0.0) continue;
          x /= nx;
          ++evals;
          const double inc = best_step(norms_of(x), nullptr);
          if (inc > current) {
            current = inc;
            p = herm_to_params(x);
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    Matrix x = params_to_herm(p, n);
    if (traceless) x = project_traceless(x);
    x /= x.norm();
    std::vector<double> norms = norms_of(x);
    size_t where = 0;
    const double inc = best_step(norms, &where);
    if (inc > best_inc) best_inc = inc;
    if (inc > tol_mono)
      report.violations.push_back({-1, grid[where], grid[where + 1], inc, x});
  }

  report.max_increase = best_inc;
  return report;
}

}  // namespace divprop
