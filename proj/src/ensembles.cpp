#include "coherence/ensembles.hpp"

#include <algorithm>
#include <sstream>

#include "coherence/random.hpp"

namespace coherence {

namespace {

void check_dims(const CoherenceMeasure& f, const Ensemble& ensemble) {
  if (!f.supports(ensemble.dim())) {
    std::ostringstream msg;
    msg << "measure '" << f.name() << "' does not apply to dimension " << ensemble.dim();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

std::vector<double> component_coherences(const CoherenceMeasure& f, const Ensemble& ensemble) {
  check_dims(f, ensemble);
  std::vector<double> c;
  c.reserve(ensemble.size());
  for (const auto& comp : ensemble) c.push_back(pure_coherence(f, comp.state));
  return c;
}

// Sorting first makes the sum independent of component order.
double ordered_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0;
  for (const double t : terms) sum += t;
  return sum;
}

}  // namespace

Ensemble::Ensemble(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::InvalidEnsemble, "ensemble has no components");
  double total = 0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0)) throw Error(ErrorKind::InvalidEnsemble, "negative component weight");
    if (c.state.dim() != components_.front().state.dim())
      throw Error(ErrorKind::InvalidEnsemble, "components have different dimensions");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "weights sum to " << total;
    throw Error(ErrorKind::InvalidEnsemble, msg.str());
  }
}

Isometry::Isometry(ComplexMatrix v) : v_(std::move(v)) {
  if (v_.rows() < v_.cols() || v_.cols() == 0) throw Error(ErrorKind::NotIsometry, "isometry needs rows >= cols >= 1");
  const double residual =
      (v_.adjoint() * v_ - ComplexMatrix::Identity(v_.cols(), v_.cols())).cwiseAbs().maxCoeff();
  if (residual > 1e-10) {
    std::ostringstream msg;
    msg << "max |V^dagger V - I| = " << residual;
    throw Error(ErrorKind::NotIsometry, msg.str());
  }
}

DensityMatrix reconstruct(const Ensemble& ensemble) {
  const Eigen::Index d = ensemble.dim();
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (const auto& c : ensemble) rho.noalias() += c.weight * c.state.amplitudes() * c.state.amplitudes().adjoint();
  return validate_density(rho, 1e-9);
}

bool is_decomposition_of(const Ensemble& ensemble, const DensityMatrix& rho, double tol) {
  if (ensemble.dim() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "ensemble and state dimensions differ");
  return (reconstruct(ensemble).matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= tol;
}

Ensemble from_isometry(const DensityMatrix& rho, const EigenSystem& eig, const Isometry& v) {
  if (eig.eigenvalues.size() != rho.dim())
    throw Error(ErrorKind::DimensionMismatch, "eigensystem does not belong to this state");
  const Eigen::Index r = numerical_rank(eig);
  if (v.cols() != r) {
    std::ostringstream msg;
    msg << "isometry has " << v.cols() << " columns but rank(rho) = " << r;
    throw Error(ErrorKind::RankMismatch, msg.str());
  }
  // Columns of `weighted` are sqrt(lambda_i) e_i.
  const ComplexMatrix weighted =
      eig.eigenvectors.leftCols(r) * eig.eigenvalues.head(r).cwiseSqrt().cast<std::complex<double>>().asDiagonal();
  const ComplexMatrix members = weighted * v.matrix().transpose();  // column k: unnormalized psi_k
  std::vector<Component> comps;
  double total = 0;
  for (Eigen::Index k = 0; k < members.cols(); ++k) {
    const double p = members.col(k).squaredNorm();
    if (p <= kDropWeight) continue;
    comps.push_back({p, PureState::normalized(members.col(k))});
    total += p;
  }
  for (auto& c : comps) c.weight /= total;
  return Ensemble(std::move(comps));
}

Ensemble from_isometry(const DensityMatrix& rho, const Isometry& v) { return from_isometry(rho, eigh(rho), v); }

Ensemble spectral_ensemble(const DensityMatrix& rho) {
  const EigenSystem eig = eigh(rho);
  const Eigen::Index r = numerical_rank(eig);
  return from_isometry(rho, eig, Isometry(ComplexMatrix::Identity(r, r)));
}

Ensemble random_ensemble(const DensityMatrix& rho, Eigen::Index m, std::uint64_t seed) {
  const EigenSystem eig = eigh(rho);
  const Eigen::Index r = numerical_rank(eig);
  if (m < r) {
    std::ostringstream msg;
    msg << "need at least rank(rho) = " << r << " components, got " << m;
    throw Error(ErrorKind::RankMismatch, msg.str());
  }
  Rng rng(seed);
  return from_isometry(rho, eig, Isometry(haar_unitary(m, rng).leftCols(r)));
}

double average_coherence(const CoherenceMeasure& f, const Ensemble& ensemble) {
  const auto c = component_coherences(f, ensemble);
  std::vector<double> terms(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) terms[k] = ensemble[k].weight * c[k];
  return ordered_sum(std::move(terms));
}

double msd(const CoherenceMeasure& f, const Ensemble& ensemble) {
  const auto c = component_coherences(f, ensemble);
  std::vector<double> terms(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) terms[k] = ensemble[k].weight * c[k];
  const double avg = ordered_sum(terms);
  for (std::size_t k = 0; k < c.size(); ++k) terms[k] = ensemble[k].weight * (c[k] - avg) * (c[k] - avg);
  return ordered_sum(std::move(terms));
}

}  // namespace coherence
