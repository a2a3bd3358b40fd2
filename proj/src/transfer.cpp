#include "divprop/transfer.hpp"

#include <Eigen/Eigenvalues>

#include "divprop/linalg.hpp"

namespace divprop {

bool TransferMatrix::trace_preserving(double tol) const {
  if (t.rows() != sdim() || t.cols() != sdim()) return false;
  RealVector first = t.row(0).transpose();
  first(0) -= 1.0;
  return first.cwiseAbs().maxCoeff() <= tol;
}

RealVector TransferMatrix::affine_shift() const {
  return t.block(1, 0, sdim() - 1, 1);
}

RealMatrix TransferMatrix::linear_block() const {
  return t.block(1, 1, sdim() - 1, sdim() - 1);
}

TransferMatrix TransferMatrix::identity(int d) {
  if (d < 2) fail(Errc::invalid_dimension, "TransferMatrix::identity: dimension must be at least 2");
  return TransferMatrix{d, RealMatrix::Identity(d * d, d * d)};
}

TransferMatrix TransferMatrix::from_blocks(int d, const RealVector& x, const RealMatrix& delta) {
  const int n = d * d;
  if (x.size() != n - 1 || delta.rows() != n - 1 || delta.cols() != n - 1)
    fail(Errc::invalid_dimension, "TransferMatrix::from_blocks: block sizes do not match dimension");
  RealMatrix t = RealMatrix::Zero(n, n);
  t(0, 0) = 1.0;
  t.block(1, 0, n - 1, 1) = x;
  t.block(1, 1, n - 1, n - 1) = delta;
  return TransferMatrix{d, std::move(t)};
}

TransferMatrix action_to_transfer(const MapAction& apply, int d, double tol_herm) {
  const HermitianBasis basis = herm_basis(d);
  const int n = basis.size();
  RealMatrix t(n, n);
  double max_imag = 0.0;
  double max_abs = 0.0;
  for (int b = 0; b < n; ++b) {
    Matrix out = apply(basis[b]);
    if (out.rows() != d || out.cols() != d)
      fail(Errc::invalid_dimension, "action_to_transfer: map output has wrong shape");
    for (int a = 0; a < n; ++a) {
      Complex e = (basis[a] * out).trace();
      max_imag = std::max(max_imag, std::abs(e.imag()));
      max_abs = std::max(max_abs, std::abs(e.real()));
      t(a, b) = e.real();
    }
  }
  if (max_imag > tol_herm * std::max(1.0, max_abs))
    fail(Errc::not_hermiticity_preserving,
         "action_to_transfer: map does not preserve Hermiticity");
  return TransferMatrix{d, std::move(t)};
}

Matrix apply_transfer(const TransferMatrix& t, const Matrix& x) {
  const HermitianBasis basis = herm_basis(t.dim);
  Vector c = operator_coords(x, basis);
  Vector out = t.t.cast<Complex>() * c;
  return coords_to_operator(out, basis);
}

Matrix apply_transfer_extended(const TransferMatrix& t, int ancilla_dim, const Matrix& x) {
  const int k = ancilla_dim;
  const int d = t.dim;
  if (k < 1) fail(Errc::invalid_dimension, "apply_transfer_extended: ancilla dimension must be positive");
  if (x.rows() != k * d || x.cols() != k * d)
    fail(Errc::invalid_dimension, "apply_transfer_extended: operand shape does not match k*d");
  if (k == 1) return apply_transfer(t, x);
  Matrix out(k * d, k * d);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.block(i * d, j * d, d, d) = apply_transfer(t, x.block(i * d, j * d, d, d));
  return out;
}

ChoiMatrix transfer_to_choi(const TransferMatrix& t) {
  const int d = t.dim;
  const HermitianBasis basis = herm_basis(d);
  Matrix treal = t.t.cast<Complex>();
  Matrix c = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix eij = Matrix::Zero(d, d);
      eij(i, j) = 1.0;
      Vector out = treal * operator_coords(eij, basis);
      c.block(i * d, j * d, d, d) = coords_to_operator(out, basis);
    }
  return ChoiMatrix{d, std::move(c)};
}

TransferMatrix choi_to_transfer(const ChoiMatrix& c, double tol_herm) {
  const int d = c.dim;
  if (c.c.rows() != d * d || c.c.cols() != d * d)
    fail(Errc::invalid_dimension, "choi_to_transfer: matrix size does not match dim^2");
  auto apply = [&](const Matrix& x) {
    Matrix out = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out += x(i, j) * c.c.block(i * d, j * d, d, d);
    return out;
  };
  return action_to_transfer(apply, d, tol_herm);
}

double min_choi_eigenvalue(const TransferMatrix& t) {
  ChoiMatrix c = transfer_to_choi(t);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(c.c));
  return es.eigenvalues().minCoeff();
}

KrausSet choi_to_kraus(const ChoiMatrix& c, double tol_psd, double tol_rank) {
  const int d = c.dim;
  if (!is_hermitian(c.c, kTolHerm))
    fail(Errc::hermiticity_violation, "choi_to_kraus: Choi matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(c.c));
  const RealVector ev = es.eigenvalues();
  if (ev.minCoeff() < -tol_psd)
    fail(Errc::not_completely_positive, "choi_to_kraus: Choi matrix has a negative eigenvalue");
  const double cut = tol_rank * std::max(0.0, ev.maxCoeff());
  KrausSet out;
  for (int k = 0; k < ev.size(); ++k) {
    if (ev(k) <= cut) continue;
    const double w = std::sqrt(ev(k));
    Matrix op(d, d);
    for (int i = 0; i < d; ++i)
      for (int a = 0; a < d; ++a) op(a, i) = w * es.eigenvectors()(i * d + a, k);
    out.ops.push_back(std::move(op));
  }
  return out;
}

TransferMatrix kraus_to_transfer(const KrausSet& k) {
  if (k.ops.empty()) fail(Errc::invalid_argument, "kraus_to_transfer: empty Kraus set");
  const int d = static_cast<int>(k.ops.front().rows());
  for (const Matrix& op : k.ops)
    if (op.rows() != d || op.cols() != d)
      fail(Errc::invalid_dimension, "kraus_to_transfer: inconsistent Kraus shapes");
  auto apply = [&](const Matrix& x) {
    Matrix out = Matrix::Zero(d, d);
    for (const Matrix& op : k.ops) out += op * x * op.adjoint();
    return out;
  };
  return action_to_transfer(apply, d);
}

}  // namespace divprop
