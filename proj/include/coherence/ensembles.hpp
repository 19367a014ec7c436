#pragma once

// Pure-state decompositions {p_k, |psi_k>} of a density matrix, built from
// isometries acting on the weighted eigenvectors (unitary freedom).

#include <cstdint>
#include <vector>

#include "coherence/measures.hpp"
#include "coherence/qmat.hpp"

namespace coherence {

/// Components lighter than this are dropped when an ensemble is built.
inline constexpr double kDropWeight = 1e-14;

struct Component {
  double weight;
  PureState state;
};

class Ensemble {
 public:
  /// Throws InvalidEnsemble on negative weights, weights not summing to one
  /// within 1e-12, an empty list or mixed dimensions.
  explicit Ensemble(std::vector<Component> components);

  std::size_t size() const noexcept { return components_.size(); }
  Eigen::Index dim() const noexcept { return components_.front().state.dim(); }
  const Component& operator[](std::size_t k) const { return components_[k]; }
  auto begin() const noexcept { return components_.begin(); }
  auto end() const noexcept { return components_.end(); }

 private:
  std::vector<Component> components_;
};

/// m x r matrix with orthonormal columns (V^dagger V = I within 1e-10).
class Isometry {
 public:
  explicit Isometry(ComplexMatrix v);

  const ComplexMatrix& matrix() const noexcept { return v_; }
  Eigen::Index rows() const noexcept { return v_.rows(); }
  Eigen::Index cols() const noexcept { return v_.cols(); }

 private:
  ComplexMatrix v_;
};

/// sum_k p_k |psi_k><psi_k|.
DensityMatrix reconstruct(const Ensemble& ensemble);

bool is_decomposition_of(const Ensemble& ensemble, const DensityMatrix& rho, double tol);

/// Ensemble with unnormalized members sum_i V_ki sqrt(lambda_i) |e_i>, where
/// (lambda_i, e_i) run over the eigenpairs of rho above 1e-12. V must have
/// exactly rank(rho) columns.
Ensemble from_isometry(const DensityMatrix& rho, const Isometry& v);
Ensemble from_isometry(const DensityMatrix& rho, const EigenSystem& eig, const Isometry& v);

/// Eigenvector ensemble (the identity isometry).
Ensemble spectral_ensemble(const DensityMatrix& rho);

/// m-component decomposition from the first rank(rho) columns of a Haar
/// unitary. Deterministic in `seed`.
Ensemble random_ensemble(const DensityMatrix& rho, Eigen::Index m, std::uint64_t seed);

double average_coherence(const CoherenceMeasure& f, const Ensemble& ensemble);

/// sum_k p_k (C_f(psi_k) - average)^2.
double msd(const CoherenceMeasure& f, const Ensemble& ensemble);

}  // namespace coherence
