#include "divprop/rng.hpp"

#include <Eigen/QR>

namespace divprop {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_complex_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

Matrix random_hermitian(Rng& rng, int n, bool traceless) {
  Matrix a = random_complex_matrix(rng, n, n);
  Matrix h = 0.5 * (a + a.adjoint());
  if (traceless) h -= (h.trace() / double(n)) * Matrix::Identity(n, n);
  return h;
}

Matrix random_rank_deficient(Rng& rng, int n, int rank) {
  if (rank < 0 || rank > n) fail(Errc::invalid_argument, "random_rank_deficient: bad rank");
  return random_complex_matrix(rng, n, rank) * random_complex_matrix(rng, rank, n);
}

Vector haar_state(Rng& rng, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

Matrix random_unitary(Rng& rng, int d) {
  Matrix a = random_complex_matrix(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the distribution is Haar
  for (int i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    q.col(i) *= (rii == Complex(0, 0)) ? Complex(1, 0) : rii / std::abs(rii);
  }
  return q;
}

Matrix random_density(Rng& rng, int d) {
  Matrix a = random_complex_matrix(rng, d, d);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

std::vector<Matrix> random_kraus_channel(Rng& rng, int d, int kraus_count) {
  if (kraus_count < 1) fail(Errc::invalid_argument, "random_kraus_channel: need at least one operator");
  // isometry C^d -> C^d (x) C^k from the QR of a Gaussian block column
  Matrix g = random_complex_matrix(rng, d * kraus_count, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = Matrix(qr.householderQ()).leftCols(d);
  std::vector<Matrix> ops;
  ops.reserve(kraus_count);
  for (int k = 0; k < kraus_count; ++k) ops.push_back(q.middleRows(k * d, d));
  return ops;
}

}  // namespace divprop
