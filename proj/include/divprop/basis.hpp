// basis.hpp: orthonormal Hermitian operator bases

#pragma once

#include <vector>

#include "divprop/types.hpp"

namespace divprop {

// tau_0 = identity/sqrt(d), followed by the traceless elements. For d = 2 the
// ordering is sigma_x, sigma_y, sigma_z over sqrt(2); for d > 2 the
// generalized Gell-Mann construction in the fixed order symmetric,
// antisymmetric, diagonal. Tr(tau_a tau_b) = delta_ab throughout.
struct HermitianBasis {
  int dim = 0;
  std::vector<Matrix> elements;

  int size() const { return static_cast<int>(elements.size()); }
  const Matrix& operator[](int a) const { return elements[a]; }
};

HermitianBasis herm_basis(int d);

// Hilbert-Schmidt coordinates w.r.t. the basis: X = sum_a coords(a) tau_a.
Vector operator_coords(const Matrix& op, const HermitianBasis& basis);
Matrix coords_to_operator(const Vector& coords, const HermitianBasis& basis);
Matrix coords_to_operator(const RealVector& coords, const HermitianBasis& basis);

}  // namespace divprop
