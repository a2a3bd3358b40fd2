#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <divprop/ginverse.hpp>
#include <divprop/linalg.hpp>
#include <divprop/rng.hpp>

using namespace divprop;

namespace {

GInverseParams random_params(Rng& rng, const SvdFactors& f) {
  GInverseParams p = GInverseParams::zero(f);
  p.x = random_complex_matrix(rng, f.rank, f.rows - f.rank);
  p.y = random_complex_matrix(rng, f.cols - f.rank, f.rank);
  p.z = random_complex_matrix(rng, f.cols - f.rank, f.rows - f.rank);
  return p;
}

double ginverse_residual(const Matrix& a, const Matrix& g) { return (a * g * a - a).norm(); }

}  // namespace

TEST_CASE("block construction always yields generalized inverses") {
  Rng rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.uniform_int(2, 6);
    int r = rng.uniform_int(1, n - 1);
    Matrix a = random_rank_deficient(rng, n, r);
    SvdFactors f = svd_factors(a);
    REQUIRE(f.rank == r);
    Matrix g = build_ginverse(f, random_params(rng, f));
    CHECK(ginverse_residual(a, g) < 1e-10 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("moore penrose satisfies all four axioms and inverts invertible input") {
  Rng rng(2);
  Matrix a = random_rank_deficient(rng, 5, 3);
  Matrix g = moore_penrose(a);
  GInverseClassification c = classify(a, g);
  CHECK(c.is_ginverse);
  CHECK(c.reflexive);
  CHECK(c.left_symmetric);
  CHECK(c.right_symmetric);
  CHECK(c.moore_penrose);

  Matrix b = random_complex_matrix(rng, 4, 4);
  CHECK((moore_penrose(b) * b - Matrix::Identity(4, 4)).norm() < 1e-9);
}

TEST_CASE("classification flags track the free blocks") {
  Rng rng(3);
  Matrix a = random_rank_deficient(rng, 5, 2);
  SvdFactors f = svd_factors(a);

  // reflexivity holds exactly when Z = Y D X
  GInverseParams p = random_params(rng, f);
  p.z = p.y * f.d.head(f.rank).asDiagonal() * p.x;
  CHECK(classify(a, build_ginverse(f, p)).reflexive);
  p.z.array() += 1e-3;
  CHECK(!classify(a, build_ginverse(f, p)).reflexive);

  // A G = U [[I, DX], [0, 0]] U^dag so X = 0 symmetrizes A G; dually Y = 0
  // symmetrizes G A
  GInverseParams q = random_params(rng, f);
  q.x.setZero();
  GInverseClassification cx = classify(a, build_ginverse(f, q));
  CHECK(cx.right_symmetric);
  CHECK(!cx.left_symmetric);
  GInverseParams s = random_params(rng, f);
  s.y.setZero();
  GInverseClassification cy = classify(a, build_ginverse(f, s));
  CHECK(cy.left_symmetric);
  CHECK(!cy.right_symmetric);
  CHECK(!cy.moore_penrose);
}

TEST_CASE("projectors of a generalized inverse are idempotent") {
  Rng rng(4);
  Matrix a = random_rank_deficient(rng, 4, 2);
  SvdFactors f = svd_factors(a);
  Matrix g = build_ginverse(f, random_params(rng, f));
  auto [ag, ga] = projectors_of(a, g);
  CHECK((ag * ag - ag).norm() < 1e-9);
  CHECK((ga * ga - ga).norm() < 1e-9);
}

TEST_CASE("spectral inverse is reflexive and commutes with its matrix") {
  Rng rng(5);
  Matrix p = random_complex_matrix(rng, 4, 4);
  Eigen::VectorXcd evals(4);
  evals << 2.0, 1.0, 0.0, 0.0;
  Matrix a = p * evals.asDiagonal() * p.inverse();
  SpectralDecomposition sd = spectral_decompose(a);
  Matrix g = spectral_ginverse(sd);
  CHECK(ginverse_residual(a, g) < 1e-9);
  CHECK((g * a * g - g).norm() < 1e-9);
  CHECK((a * g - g * a).norm() < 1e-9);

  Matrix jordan(2, 2);
  jordan << 0, 1, 0, 0;
  CHECK_THROWS_AS(spectral_decompose(jordan), Error);
  try {
    spectral_decompose(jordan);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_diagonalizable);
  }
}

TEST_CASE("transversal inverse respects the prescribed complement and B") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;  // image e0, kernel e1
  Matrix complement(2, 1);
  complement << Complex(1, 0), Complex(1, 0);  // transversal but not orthogonal
  Matrix b = Matrix::Zero(2, 1);
  b(1, 0) = 0.5;  // lands in the kernel
  Matrix g = transversal_ginverse(a, complement, b);
  CHECK(ginverse_residual(a, g) < 1e-12);
  // G annihilates nothing: on the complement it returns B's column
  Vector c(2);
  c << Complex(1, 0), Complex(1, 0);
  CHECK((g * c - b.col(0)).norm() < 1e-12);
  // A G projects onto the image along the complement
  CHECK(((a * g) * c).norm() < 1e-12);

  // a complement inside the image cannot split the codomain
  Matrix inside(2, 1);
  inside << Complex(1, 0), Complex(0, 0);
  CHECK_THROWS_AS(transversal_ginverse(a, inside, Matrix::Zero(2, 1)), Error);
}

TEST_CASE("prescribed projector inverse reproduces it") {
  Rng rng(6);
  Matrix a = random_rank_deficient(rng, 5, 3);
  Matrix img = image_basis(a, kTolRank);
  // random complement of the image: perturb the orthogonal complement
  Matrix full(5, 5);
  full.leftCols(3) = img;
  Matrix orth = kernel_basis(Matrix(a.adjoint()), kTolRank);
  full.rightCols(2) = orth + 0.2 * random_complex_matrix(rng, 5, 2);
  Matrix blocks = Matrix::Zero(5, 5);
  blocks.topLeftCorner(3, 3).setIdentity();
  Matrix p = full * blocks * full.inverse();
  Matrix g = ginverse_with_projector(a, p);
  CHECK(ginverse_residual(a, g) < 1e-9);
  CHECK((a * g - p).norm() < 1e-9);

  Matrix notp = random_complex_matrix(rng, 5, 5);
  CHECK_THROWS_AS(ginverse_with_projector(a, notp), Error);
}

TEST_CASE("nilpotent block identities are exact for sizes one through eight") {
  for (int k = 1; k <= 8; ++k) {
    JordanCheck c = jordan_block_check(k);
    CHECK(c.transpose_is_ginverse);
    CHECK(c.transpose_is_reflexive);
    CHECK(c.max_residual == 0);
  }
  CHECK_THROWS_AS(jordan_block_check(0), Error);
}
