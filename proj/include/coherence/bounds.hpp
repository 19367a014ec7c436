#pragma once

// Upper bound f(rho_11, ..., rho_dd) on the average coherence of any
// decomposition, closed-form decompositions that attain it, and a numeric
// maximizer over decompositions.

#include <cstdint>

#include "coherence/ensembles.hpp"
#include "coherence/nelder_mead.hpp"

namespace coherence {

/// f applied to the diagonal of rho; only the diagonal is read.
double upper_bound(const CoherenceMeasure& f, const DensityMatrix& rho);

/// True iff every component's coherence vector equals diag(rho) within
/// `tol`. Throws NotADecomposition if the ensemble does not reproduce rho.
bool equality_condition(const Ensemble& ensemble, const DensityMatrix& rho, double tol);

/// Two-component optimal decomposition of a qubit state,
/// psi_± = sqrt(rho_00)|0> ± e^{-i arg rho_01} sqrt(rho_11)|1> with weights
/// (1 ± |rho_01| / sqrt(rho_00 rho_11)) / 2. A state without support on one
/// basis vector yields the single basis-state ensemble.
Ensemble optimal_qubit(const DensityMatrix& rho);

/// Equal-weight Fourier-phase decomposition of diag(probabilities); every
/// member has the given probabilities as its coherence vector.
Ensemble optimal_incoherent(const RealVector& probabilities);

struct BoundReport {
  double bound = 0;
  double achieved = 0;
  double gap = 0;
  Ensemble witness;
  bool equality_condition_met = false;
  int restarts_run = 0;
};

struct MaximizeOptions {
  NelderMeadOptions simplex{};
  /// Simplex re-seeds around the incumbent within one restart.
  int max_stages = 30;
  /// A stage that gains less than this ends the restart.
  double stage_improvement = 1e-13;
  /// Restarts stop early once the gap is this small.
  double stop_gap = 1e-12;
  /// Before optimizing f, drive the coherence vectors of all components
  /// towards diag(rho); this target is the same for every measure.
  bool warm_start = true;
  double warm_start_spread = 1e-16;
  /// Tolerance for the reported equality condition.
  double equality_tolerance = 1e-6;
};

/// Number of real Givens parameters for an m-row search.
inline Eigen::Index givens_parameter_count(Eigen::Index m) { return m * (m - 1); }

/// First `cols` columns of prod_{i<j} G_ij(theta, phi), where G_ij rotates
/// coordinates i and j by angle theta with relative phase phi.
ComplexMatrix givens_columns(const Eigen::VectorXd& params, Eigen::Index m, Eigen::Index cols);

/// Searches m-component decompositions of rho for the largest average
/// coherence. Each restart starts from a Haar-random isometry seeded by
/// (seed, restart index) and runs Nelder-Mead over Givens angles composed
/// onto it; the best result over restarts is kept.
BoundReport maximize_average(const CoherenceMeasure& f, const DensityMatrix& rho, Eigen::Index m, int restarts,
                             std::uint64_t seed, const MaximizeOptions& options = {});

/// Default number of components searched: d^2.
inline Eigen::Index default_components(const DensityMatrix& rho) { return rho.dim() * rho.dim(); }

}  // namespace coherence
