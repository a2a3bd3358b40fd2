// linalg.hpp: SVD, Hermitian eigensolve, trace norm, subspace helpers

#pragma once

#include "divprop/types.hpp"

namespace divprop {

struct SvdResult {
  Matrix u;          // rows(m) x rows(m) unitary
  RealVector sing;   // all min(rows, cols) singular values, descending
  Matrix v;          // cols(m) x cols(m) unitary
  int rank = 0;      // values above tol_rank * sing(0)
};

SvdResult svd(const Matrix& m, double tol_rank = kTolRank);

struct RealSvd {
  RealMatrix u;
  RealVector sing;
  RealMatrix v;
  int rank = 0;
};

RealSvd real_svd(const RealMatrix& m, double tol_rank = kTolRank);

int numerical_rank(const Matrix& m, double tol_rank = kTolRank);
int numerical_rank(const RealMatrix& m, double tol_rank = kTolRank);

// sum of singular values
double trace_norm(const Matrix& m);

struct HermEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns
};

// Rejects input whose anti-Hermitian part exceeds tol (scaled by the entry
// magnitude); diagonalizes the Hermitian part.
HermEig eig_herm(const Matrix& m, double tol_herm = kTolHerm);

bool is_hermitian(const Matrix& m, double tol = kTolHerm);
Matrix hermitize(const Matrix& m);  // (M + M^dag)/2

double min_herm_eigenvalue(const Matrix& m, double tol_herm = kTolHerm);

// orthonormal column bases of Im(M) and Ker(M) at the given rank cutoff
Matrix image_basis(const Matrix& m, double tol_rank = kTolRank);
Matrix kernel_basis(const Matrix& m, double tol_rank = kTolRank);
RealMatrix image_basis(const RealMatrix& m, double tol_rank = kTolRank);
RealMatrix kernel_basis(const RealMatrix& m, double tol_rank = kTolRank);

}  // namespace divprop
