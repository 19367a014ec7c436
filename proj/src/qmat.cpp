#include "coherence/qmat.hpp"

namespace coherence {

CorrelationMatrix correlation_matrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotSquare, "correlation matrix needs a square input");
  const Eigen::Index n = m.rows();
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = m(i, i).real();
    if (d <= kZeroDiagonal) {
      std::ostringstream msg;
      msg << "diagonal entry " << i << " is " << d << "; restrict to the support first";
      throw Error(ErrorKind::ZeroDiagonal, msg.str());
    }
    inv_sqrt(i) = 1.0 / std::sqrt(d);
  }
  ComplexMatrix cm = inv_sqrt.asDiagonal() * m * inv_sqrt.asDiagonal();
  cm = (cm + cm.adjoint()).eval() / 2.0;
  cm.diagonal().setOnes();
  return CorrelationMatrix(std::move(cm));
}

SupportRestriction restrict_to_support(const DensityMatrix& rho) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < rho.dim(); ++i)
    if (rho(i, i).real() > kZeroDiagonal) support.push_back(i);
  const auto k = static_cast<Eigen::Index>(support.size());
  ComplexMatrix reduced(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) reduced(i, j) = rho(support[i], support[j]);
  // Dropped diagonal mass is at most d * 1e-14, well inside the trace tolerance.
  return {validate_density(reduced, 1e-9), std::move(support)};
}

DensityMatrix pure_density(const ComplexVector& psi) {
  return validate_density(ComplexMatrix(psi * psi.adjoint()), 1e-9);
}

}  // namespace coherence
