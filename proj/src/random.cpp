#include "coherence/random.hpp"

#include <cmath>

namespace coherence {

ComplexMatrix complex_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix z(rows, cols);
  // Fill column-major explicitly so the draw order is fixed.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = {re, im};
    }
  return z;
}

ComplexMatrix haar_unitary(Eigen::Index m, Rng& rng) {
  const ComplexMatrix z = complex_ginibre(m, m, rng);
  const Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, m);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

DensityMatrix random_density(Eigen::Index d, Rng& rng, Eigen::Index rank) {
  if (rank <= 0 || rank > d) rank = d;
  const ComplexMatrix g = complex_ginibre(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_density(rho, 1e-9);
}

RealVector random_simplex(Eigen::Index d, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealVector x(d);
  for (Eigen::Index i = 0; i < d; ++i) x(i) = expo(rng);
  return x / x.sum();
}

}  // namespace coherence
