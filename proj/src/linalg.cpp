#include "divprop/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace divprop {

namespace {

int rank_from_singvalues(const RealVector& s, double tol_rank) {
  if (s.size() == 0) return 0;
  const double cut = tol_rank * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

}  // namespace

SvdResult svd(const Matrix& m, double tol_rank) {
  if (m.size() == 0) fail(Errc::invalid_dimension, "svd: empty matrix");
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out;
  out.u = dec.matrixU();
  out.sing = dec.singularValues();
  out.v = dec.matrixV();
  out.rank = rank_from_singvalues(out.sing, tol_rank);
  return out;
}

RealSvd real_svd(const RealMatrix& m, double tol_rank) {
  if (m.size() == 0) fail(Errc::invalid_dimension, "real_svd: empty matrix");
  Eigen::JacobiSVD<RealMatrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealSvd out;
  out.u = dec.matrixU();
  out.sing = dec.singularValues();
  out.v = dec.matrixV();
  out.rank = rank_from_singvalues(out.sing, tol_rank);
  return out;
}

int numerical_rank(const Matrix& m, double tol_rank) {
  Eigen::JacobiSVD<Matrix> dec(m);
  return rank_from_singvalues(dec.singularValues(), tol_rank);
}

int numerical_rank(const RealMatrix& m, double tol_rank) {
  Eigen::JacobiSVD<RealMatrix> dec(m);
  return rank_from_singvalues(dec.singularValues(), tol_rank);
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> dec(m);
  return dec.singularValues().sum();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

HermEig eig_herm(const Matrix& m, double tol_herm) {
  if (m.rows() != m.cols()) fail(Errc::invalid_dimension, "eig_herm: matrix not square");
  if (!is_hermitian(m, tol_herm))
    fail(Errc::hermiticity_violation, "eig_herm: anti-Hermitian part above tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  if (es.info() != Eigen::Success) fail(Errc::invalid_argument, "eig_herm: eigensolver failed");
  return HermEig{es.eigenvalues(), es.eigenvectors()};
}

double min_herm_eigenvalue(const Matrix& m, double tol_herm) {
  return eig_herm(m, tol_herm).eigenvalues.minCoeff();
}

Matrix image_basis(const Matrix& m, double tol_rank) {
  SvdResult s = svd(m, tol_rank);
  return s.u.leftCols(s.rank);
}

Matrix kernel_basis(const Matrix& m, double tol_rank) {
  SvdResult s = svd(m, tol_rank);
  return s.v.rightCols(m.cols() - s.rank);
}

RealMatrix image_basis(const RealMatrix& m, double tol_rank) {
  RealSvd s = real_svd(m, tol_rank);
  return s.u.leftCols(s.rank);
}

RealMatrix kernel_basis(const RealMatrix& m, double tol_rank) {
  RealSvd s = real_svd(m, tol_rank);
  return s.v.rightCols(m.cols() - s.rank);
}

}  // namespace divprop
