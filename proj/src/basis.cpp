#include "divprop/basis.hpp"

#include <cmath>

namespace divprop {

HermitianBasis herm_basis(int d) {
  if (d < 2) fail(Errc::invalid_dimension, "herm_basis: dimension must be at least 2");

  HermitianBasis b;
  b.dim = d;
  b.elements.reserve(static_cast<size_t>(d) * d);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  b.elements.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));

  // symmetric off-diagonal pairs
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      b.elements.push_back(m);
    }

  // antisymmetric off-diagonal pairs
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = Complex(0.0, -inv_sqrt2);
      m(k, j) = Complex(0.0, inv_sqrt2);
      b.elements.push_back(m);
    }

  // diagonal ladder: proportional to diag(1,...,1,-l,0,...)
  for (int l = 1; l < d; ++l) {
    Matrix m = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -double(l) * norm;
    b.elements.push_back(m);
  }

  return b;
}

Vector operator_coords(const Matrix& op, const HermitianBasis& basis) {
  const int d = basis.dim;
  if (op.rows() != d || op.cols() != d)
    fail(Errc::invalid_dimension, "operator_coords: operator size does not match basis");
  Vector c(basis.size());
  for (int a = 0; a < basis.size(); ++a) c(a) = (basis[a] * op).trace();
  return c;
}

Matrix coords_to_operator(const Vector& coords, const HermitianBasis& basis) {
  if (coords.size() != basis.size())
    fail(Errc::invalid_dimension, "coords_to_operator: coordinate count does not match basis");
  Matrix out = Matrix::Zero(basis.dim, basis.dim);
  for (int a = 0; a < basis.size(); ++a) out += coords(a) * basis[a];
  return out;
}

Matrix coords_to_operator(const RealVector& coords, const HermitianBasis& basis) {
  return coords_to_operator(Vector(coords.cast<Complex>()), basis);
}

}  // namespace divprop
