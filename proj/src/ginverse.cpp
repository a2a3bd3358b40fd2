#include "divprop/ginverse.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace divprop {

SvdFactors svd_factors(const Matrix& a, double tol_rank) {
  SvdResult s = svd(a, tol_rank);
  SvdFactors f;
  f.u = std::move(s.u);
  f.v = std::move(s.v);
  f.d = s.sing.head(s.rank);
  f.rank = s.rank;
  f.rows = static_cast<int>(a.rows());
  f.cols = static_cast<int>(a.cols());
  return f;
}

GInverseParams GInverseParams::zero(const SvdFactors& f) {
  GInverseParams p;
  p.x = Matrix::Zero(f.rank, f.rows - f.rank);
  p.y = Matrix::Zero(f.cols - f.rank, f.rank);
  p.z = Matrix::Zero(f.cols - f.rank, f.rows - f.rank);
  return p;
}

Matrix build_ginverse(const SvdFactors& f, const GInverseParams& p) {
  const int r = f.rank;
  const int ku = f.rows - r;  // codomain co-rank
  const int kv = f.cols - r;  // domain co-rank
  if (p.x.rows() != r || p.x.cols() != ku || p.y.rows() != kv || p.y.cols() != r ||
      p.z.rows() != kv || p.z.cols() != ku)
    fail(Errc::invalid_dimension, "build_ginverse: free-block shapes do not match the factors");
  Matrix mid = Matrix::Zero(f.cols, f.rows);
  for (int i = 0; i < r; ++i) mid(i, i) = 1.0 / f.d(i);
  mid.block(0, r, r, ku) = p.x;
  mid.block(r, 0, kv, r) = p.y;
  mid.block(r, r, kv, ku) = p.z;
  return f.v * mid * f.u.adjoint();
}

Matrix moore_penrose(const Matrix& a, double tol_rank) {
  SvdFactors f = svd_factors(a, tol_rank);
  return build_ginverse(f, GInverseParams::zero(f));
}

namespace {

double rel_residual(const Matrix& m, double scale) {
  return m.size() == 0 ? 0.0 : m.norm() / std::max(1.0, scale);
}

}  // namespace

GInverseClassification classify(const Matrix& a, const Matrix& g, double tol) {
  if (a.rows() != g.cols() || a.cols() != g.rows())
    fail(Errc::invalid_dimension, "classify: inverse candidate has wrong shape");
  const Matrix ag = a * g;
  const Matrix ga = g * a;
  const double sa = a.norm();
  const double sg = g.norm();
  GInverseClassification c;
  c.is_ginverse = rel_residual(ag * a - a, sa) <= tol;
  c.reflexive = rel_residual(ga * g - g, sg) <= tol;
  c.left_symmetric = rel_residual(ga - ga.adjoint(), ga.norm()) <= tol;
  c.right_symmetric = rel_residual(ag - ag.adjoint(), ag.norm()) <= tol;
  c.moore_penrose = c.is_ginverse && c.reflexive && c.left_symmetric && c.right_symmetric;
  return c;
}

std::pair<Matrix, Matrix> projectors_of(const Matrix& a, const Matrix& g, double tol) {
  GInverseClassification c = classify(a, g, tol);
  if (!c.is_ginverse)
    fail(Errc::not_generalized_inverse, "projectors_of: G does not satisfy AGA = A");
  return {a * g, g * a};
}

Matrix ginverse_with_projector(const Matrix& a, const Matrix& p, double tol_rank, double tol) {
  if (p.rows() != a.rows() || p.cols() != a.rows())
    fail(Errc::invalid_dimension, "ginverse_with_projector: projector shape must match codomain");
  const double pscale = std::max(1.0, p.norm());
  if ((p * p - p).norm() > tol * pscale * pscale)
    fail(Errc::not_a_projector, "ginverse_with_projector: P is not idempotent");

  SvdFactors f = svd_factors(a, tol_rank);
  const int r = f.rank;
  const int n = f.rows;
  // in the U frame a projector onto Im(A) reads [[I_r, X], [0, 0]]
  Matrix p0 = f.u.adjoint() * p * f.u;
  const double structure = std::max(
      {p0.block(r, 0, n - r, n).norm(),
       (p0.topLeftCorner(r, r) - Matrix::Identity(r, r)).norm()});
  if (structure > std::sqrt(tol) * pscale ||
      numerical_rank(p, tol_rank) != r)
    fail(Errc::image_mismatch, "ginverse_with_projector: Im(P) does not equal Im(A)");

  GInverseParams params = GInverseParams::zero(f);
  params.x = f.d.cast<Complex>().cwiseInverse().asDiagonal() * p0.topRightCorner(r, n - r);
  return build_ginverse(f, params);
}

Matrix transversal_ginverse(const Matrix& a, const Matrix& complement, const Matrix& b_images,
                            std::optional<Matrix> preimage, double tol_rank) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  SvdFactors f = svd_factors(a, tol_rank);
  const int r = f.rank;

  if (complement.rows() != rows)
    fail(Errc::invalid_dimension, "transversal_ginverse: complement lives in the wrong space");
  if (complement.cols() != rows - r)
    fail(Errc::not_a_complement, "transversal_ginverse: complement dimension must equal the image co-rank");

  // Im(A) (+) C must be the whole codomain; reject near-degenerate splits
  Matrix q_im = f.u.leftCols(r);
  Matrix split(rows, rows);
  split.leftCols(r) = q_im;
  RealVector comp_norms(complement.cols());
  for (int j = 0; j < complement.cols(); ++j) {
    const double nj = complement.col(j).norm();
    if (nj == 0.0) fail(Errc::not_a_complement, "transversal_ginverse: zero complement column");
    comp_norms(j) = nj;
    split.col(r + j) = complement.col(j) / nj;
  }
  SvdResult split_svd = svd(split, tol_rank);
  if (split_svd.sing(rows - 1) < 1e-8)
    fail(Errc::not_a_complement, "transversal_ginverse: complement is not transversal to the image");

  // B must map into Ker(A)
  Matrix b = b_images;
  if (b.size() == 0) b = Matrix::Zero(cols, rows - r);
  if (b.rows() != cols || b.cols() != rows - r)
    fail(Errc::invalid_b, "transversal_ginverse: B must map complement columns into the domain");
  if ((a * b).norm() > 1e-8 * std::max(1.0, a.norm()) * std::max(1.0, b.norm()))
    fail(Errc::invalid_b, "transversal_ginverse: B does not map into Ker(A)");

  // preimage subspace V, transversal to Ker(A); A restricted to V must carry
  // it bijectively onto Im(A)
  Matrix v_pre;
  if (preimage) {
    v_pre = *preimage;
    if (v_pre.rows() != cols || v_pre.cols() != r)
      fail(Errc::invalid_argument, "transversal_ginverse: preimage basis must have rank(A) columns");
  } else {
    Matrix im_a = q_im;
    bool im_transversal = false;
    if (rows == cols) {
      Matrix stacked(cols, r + (cols - r));
      stacked.leftCols(r) = im_a;
      stacked.rightCols(cols - r) = f.v.rightCols(cols - r);  // Ker(A)
      im_transversal = numerical_rank(stacked, 1e-8) == cols;
    }
    v_pre = im_transversal ? im_a : Matrix(f.v.leftCols(r));
  }
  Matrix av = a * v_pre;
  SvdResult av_svd = svd(av, tol_rank);
  if (av_svd.rank < r)
    fail(Errc::invalid_argument, "transversal_ginverse: preimage subspace is not transversal to Ker(A)");

  // coordinates in the split: [a; c] = split^-1 y, then G y = V (AV)^+ Q_im a + B c
  Matrix split_inv = split.partialPivLu().solve(Matrix::Identity(rows, rows));
  Matrix sel_im = split_inv.topRows(r);
  Matrix sel_c = split_inv.bottomRows(rows - r);
  // sel_c yields coordinates in the normalized complement basis; rescale so
  // B pairs with the complement columns exactly as the caller gave them
  for (int j = 0; j < rows - r; ++j) sel_c.row(j) /= comp_norms(j);
  Matrix av_pinv = moore_penrose(av, tol_rank);
  return v_pre * (av_pinv * (q_im * sel_im)) + b * sel_c;
}

namespace {

SpectralDecomposition decompose_square(const Matrix& m, double cond_max) {
  if (m.rows() != m.cols()) fail(Errc::invalid_dimension, "spectral_decompose: matrix not square");
  const int n = static_cast<int>(m.rows());
  Eigen::ComplexEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    fail(Errc::not_diagonalizable, "spectral_decompose: eigensolver failed");

  Matrix right = es.eigenvectors();
  Eigen::VectorXcd ev = es.eigenvalues();

  // deterministic order: modulus descending, then real, then imaginary
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double mi = std::abs(ev(i)), mj = std::abs(ev(j));
    if (mi != mj) return mi > mj;
    if (ev(i).real() != ev(j).real()) return ev(i).real() > ev(j).real();
    return ev(i).imag() > ev(j).imag();
  });
  Matrix right_sorted(n, n);
  Eigen::VectorXcd ev_sorted(n);
  for (int k = 0; k < n; ++k) {
    right_sorted.col(k) = right.col(order[k]);
    ev_sorted(k) = ev(order[k]);
  }

  SvdResult cond_check = svd(right_sorted, kTolRank);
  const double smin = cond_check.sing(n - 1);
  if (smin <= 0.0 || cond_check.sing(0) / smin > cond_max)
    fail(Errc::not_diagonalizable,
         "spectral_decompose: eigenvector matrix condition number exceeds the bound");

  SpectralDecomposition out;
  out.eigenvalues = std::move(ev_sorted);
  out.left = right_sorted.partialPivLu().solve(Matrix::Identity(n, n));
  out.right = std::move(right_sorted);
  out.n = n;
  const int d = static_cast<int>(std::lround(std::sqrt(double(n))));
  out.op_dim = (d * d == n && d >= 2) ? d : 0;
  return out;
}

}  // namespace

SpectralDecomposition spectral_decompose(const Matrix& m, double cond_max) {
  return decompose_square(m, cond_max);
}

SpectralDecomposition spectral_decompose(const TransferMatrix& t, double cond_max) {
  return decompose_square(t.t.cast<Complex>(), cond_max);
}

Matrix SpectralDecomposition::projector(int alpha) const {
  if (alpha < 0 || alpha >= n) fail(Errc::invalid_argument, "projector: index out of range");
  return right.col(alpha) * left.row(alpha);
}

Matrix SpectralDecomposition::right_operator(int alpha) const {
  if (op_dim == 0) fail(Errc::invalid_dimension, "right_operator: dimension is not a perfect square");
  return coords_to_operator(Vector(right.col(alpha)), herm_basis(op_dim));
}

Matrix SpectralDecomposition::left_operator(int alpha) const {
  if (op_dim == 0) fail(Errc::invalid_dimension, "left_operator: dimension is not a perfect square");
  return coords_to_operator(Vector(left.row(alpha).conjugate().transpose()), herm_basis(op_dim));
}

Matrix spectral_ginverse(const SpectralDecomposition& s, double zero_tol) {
  const double top = s.eigenvalues.cwiseAbs().maxCoeff();
  Matrix g = Matrix::Zero(s.n, s.n);
  if (top == 0.0) return g;
  for (int a = 0; a < s.n; ++a) {
    if (std::abs(s.eigenvalues(a)) <= zero_tol * top) continue;
    g += (1.0 / s.eigenvalues(a)) * s.projector(a);
  }
  return g;
}

JordanCheck jordan_block_check(int k) {
  if (k < 1 || k > 16) fail(Errc::invalid_argument, "jordan_block_check: k must be in 1..16");
  using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
  IntMatrix j = IntMatrix::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) j(i, i + 1) = 1;
  IntMatrix jt = j.transpose();
  IntMatrix r1 = j * jt * j - j;
  IntMatrix r2 = jt * j * jt - jt;
  JordanCheck out;
  out.k = k;
  out.max_residual = std::max(r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff());
  out.transpose_is_ginverse = r1.cwiseAbs().maxCoeff() == 0;
  out.transpose_is_reflexive = r2.cwiseAbs().maxCoeff() == 0;
  return out;
}

}  // namespace divprop
