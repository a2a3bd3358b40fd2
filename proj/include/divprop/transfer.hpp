// transfer.hpp: real transfer-matrix representation of maps on L(H),
// Choi matrices and Kraus decompositions

#pragma once

#include <functional>
#include <vector>

#include "divprop/basis.hpp"
#include "divprop/types.hpp"

namespace divprop {

// T(a,b) = Tr(tau_a Phi(tau_b)) over the canonical Hermitian basis; real for
// Hermiticity-preserving maps. Trace preservation shows up as a first row of
// (1, 0, ..., 0).
struct TransferMatrix {
  int dim = 0;   // Hilbert-space dimension d; t is d^2 x d^2
  RealMatrix t;

  int sdim() const { return dim * dim; }
  bool trace_preserving(double tol = kTolResidual) const;

  // affine qubit-style view: first column below the unit entry, and the
  // traceless-sector block
  RealVector affine_shift() const;
  RealMatrix linear_block() const;

  static TransferMatrix identity(int d);
  static TransferMatrix from_blocks(int d, const RealVector& x, const RealMatrix& delta);
};

using MapAction = std::function<Matrix(const Matrix&)>;

// Builds T by applying the map to every basis element. Rejects maps whose
// output leaves the Hermitian sector (imaginary residue above tol, scaled).
TransferMatrix action_to_transfer(const MapAction& apply, int d, double tol_herm = kTolHerm);

Matrix apply_transfer(const TransferMatrix& t, const Matrix& x);

// (id_k (x) Phi)(X) for X on C^k (x) C^d, applied blockwise
Matrix apply_transfer_extended(const TransferMatrix& t, int ancilla_dim, const Matrix& x);

// C = sum_ij E_ij (x) Phi(E_ij); Tr C = d for trace-preserving maps.
struct ChoiMatrix {
  int dim = 0;
  Matrix c;
};

ChoiMatrix transfer_to_choi(const TransferMatrix& t);
TransferMatrix choi_to_transfer(const ChoiMatrix& c, double tol_herm = kTolHerm);

double min_choi_eigenvalue(const TransferMatrix& t);

struct KrausSet {
  std::vector<Matrix> ops;
};

// Eigendecomposition of a PSD Choi matrix (within tol_psd); eigenvalues below
// tol_rank relative to the largest are dropped.
KrausSet choi_to_kraus(const ChoiMatrix& c, double tol_psd = kTolPsd, double tol_rank = kTolRank);
TransferMatrix kraus_to_transfer(const KrausSet& k);

// A time-parameterized family of maps on a fixed L(H).
struct MapFamily {
  int dim = 0;
  std::function<TransferMatrix(double)> at;
};

}  // namespace divprop
