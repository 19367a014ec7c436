#pragma once

// Pure-state coherence measures C_f(psi) = f(|psi_0|^2, ..., |psi_{d-1}|^2)
// for symmetric concave f on the probability simplex with f(e_1) = 0.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coherence/qmat.hpp"

namespace coherence {

/// Tolerance on the normalization of pure states and probability vectors.
inline constexpr double kNormTolerance = 1e-12;

class PureState {
 public:
  /// Throws NotNormalized unless sum |psi_i|^2 is within 1e-12 of one.
  explicit PureState(ComplexVector amplitudes);

  /// Scales a nonzero vector to unit norm.
  static PureState normalized(const ComplexVector& v);
  static PureState basis(Eigen::Index dim, Eigen::Index index);

  const ComplexVector& amplitudes() const noexcept { return psi_; }
  Eigen::Index dim() const noexcept { return psi_.size(); }
  std::complex<double> operator[](Eigen::Index i) const { return psi_(i); }

 private:
  ComplexVector psi_;
};

using CoherenceVector = RealVector;

/// Entrywise squared moduli.
template <typename Derived>
RealVector coherence_vector(const Eigen::MatrixBase<Derived>& amplitudes) {
  return amplitudes.cwiseAbs2();
}

inline RealVector coherence_vector(const PureState& psi) { return psi.amplitudes().cwiseAbs2(); }

enum class MeasureKind { Entropy, L1, Fidelity, Power, Mix };

class CoherenceMeasure {
 public:
  using Function = std::function<double(const RealVector&)>;

  CoherenceMeasure(std::string name, Function f, std::optional<Eigen::Index> required_dim = std::nullopt,
                   std::vector<double> params = {});

  /// Canonical spec string; parse_measure(name()) rebuilds the measure.
  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& params() const noexcept { return params_; }
  std::optional<Eigen::Index> required_dim() const noexcept { return required_dim_; }
  bool supports(Eigen::Index dim) const noexcept { return !required_dim_ || *required_dim_ == dim; }

  /// f(x). Throws DimensionMismatch for a dimension the measure is not defined on.
  double operator()(const RealVector& x) const;

 private:
  std::string name_;
  Function f_;
  std::optional<Eigen::Index> required_dim_;
  std::vector<double> params_;
};

struct MeasureParams {
  int k = 1;                                             // power_k exponent
  std::vector<std::pair<double, CoherenceMeasure>> mix;  // convex weights
};

/// Shannon entropy in bits.
double entropy_bits(const RealVector& x);
/// sum_{i != j} sqrt(x_i x_j).
double l1_function(const RealVector& x);
/// sqrt(1 - max_i x_i).
double fidelity_function(const RealVector& x);
/// 1 - (2 (x_max - 1/2))^{2k} on the qubit simplex.
double power_function(const RealVector& x, int k);

CoherenceMeasure entropy_measure();
CoherenceMeasure l1_measure();
CoherenceMeasure fidelity_measure();
CoherenceMeasure power_measure(int k);
CoherenceMeasure mix_measure(const std::vector<std::pair<double, CoherenceMeasure>>& parts);

CoherenceMeasure make_measure(MeasureKind kind, const MeasureParams& params = {});

/// Parses "entropy", "l1", "fidelity", "power:k=<int>", "mix:<w1>*<m1>+<w2>*<m2>...".
CoherenceMeasure parse_measure(const std::string& spec);

/// The three measures with closed forms used throughout: entropy, l1, fidelity.
std::vector<CoherenceMeasure> registry_measures();

double pure_coherence(const CoherenceMeasure& f, const PureState& psi);

/// sum_{i != j} |rho_ij|.
double l1_of_density(const DensityMatrix& rho);

/// True iff x is majorized by y: descending prefix sums of x never exceed
/// those of y by more than 1e-12.
bool majorizes(const RealVector& y, const RealVector& x);

struct MeasureCheckReport {
  int trials = 0;
  double normalization_residual = 0;  // |f(e_1)|
  int symmetry_violations = 0;
  double worst_symmetry = 0;          // max |f(x) - f(Px)|
  int concavity_violations = 0;
  double worst_concavity = 0;         // max deficit lambda f(x) + (1-lambda) f(y) - f(mix)

  bool normalization_ok() const { return normalization_residual <= 1e-12; }
  bool ok() const { return normalization_ok() && symmetry_violations == 0 && concavity_violations == 0; }
};

/// Randomized spot check of f(e_1) = 0, permutation symmetry (1e-12) and
/// concavity (1e-10). `dim` = 0 picks the measure's required dimension or
/// cycles through 2..5. Deterministic in `seed`.
MeasureCheckReport check_measure(const CoherenceMeasure& f, int trials, std::uint64_t seed, Eigen::Index dim = 0);

}  // namespace coherence
