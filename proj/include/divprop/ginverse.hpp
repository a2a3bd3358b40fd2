// ginverse.hpp: generalized inverses: SVD-block construction, classification,
// projector-targeted and transversal-complement builders, spectral inverses

#pragma once

#include <optional>

#include "divprop/linalg.hpp"
#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

namespace divprop {

// Full SVD of A (rows x cols) with the positive part split off: A = U S V^dag,
// S carrying the r positive singular values in its leading diagonal block.
struct SvdFactors {
  Matrix u;       // rows x rows
  RealVector d;   // the r positive singular values
  Matrix v;       // cols x cols
  int rank = 0;
  int rows = 0;
  int cols = 0;
};

SvdFactors svd_factors(const Matrix& a, double tol_rank = kTolRank);

// Free blocks of the inverted middle factor [[D^-1, X], [Y, Z]]: every choice
// yields a generalized inverse; X = Y = Z = 0 is Moore-Penrose.
struct GInverseParams {
  Matrix x;  // rank x (rows - rank)
  Matrix y;  // (cols - rank) x rank
  Matrix z;  // (cols - rank) x (rows - rank)

  static GInverseParams zero(const SvdFactors& f);
};

Matrix build_ginverse(const SvdFactors& f, const GInverseParams& p);
Matrix moore_penrose(const Matrix& a, double tol_rank = kTolRank);

struct GInverseClassification {
  bool is_ginverse = false;      // AGA = A
  bool reflexive = false;        // GAG = G
  bool left_symmetric = false;   // (GA)^dag = GA
  bool right_symmetric = false;  // (AG)^dag = AG
  bool moore_penrose = false;    // all of the above
};

GInverseClassification classify(const Matrix& a, const Matrix& g, double tol = kTolResidual);

// {AG, GA}; both idempotent whenever G is a generalized inverse of A.
std::pair<Matrix, Matrix> projectors_of(const Matrix& a, const Matrix& g,
                                        double tol = kTolResidual);

// Generalized inverse with AG equal to a prescribed idempotent P whose image
// is Im(A).
Matrix ginverse_with_projector(const Matrix& a, const Matrix& p,
                               double tol_rank = kTolRank, double tol = kTolResidual);

// Generalized inverse from a transversal decomposition of the codomain:
// columns of `complement` span a subspace C with codomain = Im(A) + C
// (direct), and `b_images` maps those columns into Ker(A) (same column
// count; pass a zero-width matrix or zero columns for B = 0). The preimage of
// the Im(A) component is taken inside `preimage`, a subspace transversal to
// Ker(A); when absent it defaults to Im(A) if that is transversal to the
// kernel, otherwise to the row space.
Matrix transversal_ginverse(const Matrix& a, const Matrix& complement, const Matrix& b_images,
                            std::optional<Matrix> preimage = std::nullopt,
                            double tol_rank = kTolRank);

// Spectral data of a diagonalizable matrix: eigenvalues sorted by descending
// modulus, right eigenvectors as columns, biorthogonal left rows
// (left * right = I). When n is a perfect square the eigenvectors can be read
// back as operators on C^d.
struct SpectralDecomposition {
  Eigen::VectorXcd eigenvalues;
  Matrix right;
  Matrix left;
  int n = 0;
  int op_dim = 0;  // d when n == d*d, else 0

  Matrix projector(int alpha) const;        // right col * left row
  Matrix right_operator(int alpha) const;   // requires op_dim
  Matrix left_operator(int alpha) const;
};

SpectralDecomposition spectral_decompose(const Matrix& m, double cond_max = kCondMax);
SpectralDecomposition spectral_decompose(const TransferMatrix& t, double cond_max = kCondMax);

// Sum of lambda^-1 P_alpha over the eigenvalues with |lambda| above
// zero_tol * max|lambda|. Always reflexive.
Matrix spectral_ginverse(const SpectralDecomposition& s, double zero_tol = kSpectralZero);

// Exact integer check of the nilpotent Jordan block identities
// J J^T J = J and J^T J J^T = J^T.
struct JordanCheck {
  int k = 0;
  bool transpose_is_ginverse = false;
  bool transpose_is_reflexive = false;
  long long max_residual = 0;
};

JordanCheck jordan_block_check(int k);

}  // namespace divprop
