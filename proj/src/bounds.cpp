#include "coherence/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "coherence/random.hpp"

namespace coherence {

double upper_bound(const CoherenceMeasure& f, const DensityMatrix& rho) { return f(rho.diagonal()); }

bool equality_condition(const Ensemble& ensemble, const DensityMatrix& rho, double tol) {
  if (!is_decomposition_of(ensemble, rho, tol))
    throw Error(ErrorKind::NotADecomposition, "ensemble does not reconstruct the state within tolerance");
  const RealVector diag = rho.diagonal();
  for (const auto& c : ensemble)
    if ((coherence_vector(c.state) - diag).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

Ensemble optimal_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "optimal_qubit needs a qubit state");
  const double r00 = rho(0, 0).real();
  const double r11 = rho(1, 1).real();
  if (r00 <= kZeroDiagonal) return Ensemble({{1.0, PureState::basis(2, 1)}});
  if (r11 <= kZeroDiagonal) return Ensemble({{1.0, PureState::basis(2, 0)}});

  const std::complex<double> off = rho(0, 1);
  const double ratio = std::min(1.0, std::abs(off) / std::sqrt(r00 * r11));
  const std::complex<double> phase = std::polar(1.0, -std::arg(off));  // arg(0) = 0
  std::vector<Component> comps;
  for (const double sign : {1.0, -1.0}) {
    const double p = 0.5 * (1.0 + sign * ratio);
    if (p <= kDropWeight) continue;
    ComplexVector v(2);
    v << std::sqrt(r00), sign * phase * std::sqrt(r11);
    comps.push_back({p, PureState::normalized(v)});
  }
  double total = 0;
  for (const auto& c : comps) total += c.weight;
  for (auto& c : comps) c.weight /= total;
  return Ensemble(std::move(comps));
}

Ensemble optimal_incoherent(const RealVector& probabilities) {
  const Eigen::Index d = probabilities.size();
  if (d == 0 || probabilities.minCoeff() < 0 || std::abs(probabilities.sum() - 1.0) > kNormTolerance)
    throw Error(ErrorKind::BadProbabilityVector, "expected a nonnegative vector summing to 1");
  std::vector<Component> comps;
  comps.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    ComplexVector v(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * j) % d) / static_cast<double>(d);
      v(j) = std::polar(std::sqrt(probabilities(j)), angle);
    }
    comps.push_back({1.0 / static_cast<double>(d), PureState::normalized(v)});
  }
  return Ensemble(std::move(comps));
}

ComplexMatrix givens_columns(const Eigen::VectorXd& params, Eigen::Index m, Eigen::Index cols) {
  ComplexMatrix x = ComplexMatrix::Identity(m, cols);
  // Rightmost factor acts first.
  Eigen::Index p = givens_parameter_count(m) / 2;
  for (Eigen::Index i = m - 2; i >= 0; --i) {
    for (Eigen::Index j = m - 1; j > i; --j) {
      --p;
      const double c = std::cos(params(2 * p));
      const double s = std::sin(params(2 * p));
      const std::complex<double> e = std::polar(1.0, params(2 * p + 1));
      for (Eigen::Index k = 0; k < cols; ++k) {
        const std::complex<double> xi = x(i, k);
        const std::complex<double> xj = x(j, k);
        x(i, k) = c * xi - s * e * xj;
        x(j, k) = s * std::conj(e) * xi + c * xj;
      }
    }
  }
  return x;
}

namespace {

// Average coherence of the decomposition generated by isometry v, without
// materializing an Ensemble.
double isometry_objective(const CoherenceMeasure& f, const ComplexMatrix& weighted, const ComplexMatrix& v) {
  const ComplexMatrix members = weighted * v.transpose();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(members.cols()));
  for (Eigen::Index k = 0; k < members.cols(); ++k) {
    const RealVector y = members.col(k).cwiseAbs2();
    const double p = y.sum();
    if (p <= kDropWeight) continue;
    terms.push_back(p * f(RealVector(y / p)));
  }
  double total = 0;
  for (const double t : terms) total += t;
  return total;
}

// sum_k p_k |c_k - diag(rho)|^2: zero exactly on decompositions meeting the
// equality condition, which are optimal for every measure.
double mismatch_objective(const RealVector& diag, const ComplexMatrix& weighted, const ComplexMatrix& v) {
  const ComplexMatrix members = weighted * v.transpose();
  double total = 0;
  for (Eigen::Index k = 0; k < members.cols(); ++k) {
    const RealVector y = members.col(k).cwiseAbs2();
    const double p = y.sum();
    if (p <= kDropWeight) continue;
    total += (y - p * diag).squaredNorm() / p;
  }
  return total;
}

}  // namespace

BoundReport maximize_average(const CoherenceMeasure& f, const DensityMatrix& rho, Eigen::Index m, int restarts,
                             std::uint64_t seed, const MaximizeOptions& options) {
  const EigenSystem eig = eigh(rho);
  const Eigen::Index r = numerical_rank(eig);
  if (m < r) {
    std::ostringstream msg;
    msg << "need at least rank(rho) = " << r << " components, got " << m;
    throw Error(ErrorKind::RankMismatch, msg.str());
  }
  restarts = std::max(restarts, 1);
  const double bound = upper_bound(f, rho);
  const ComplexMatrix weighted =
      eig.eigenvectors.leftCols(r) * eig.eigenvalues.head(r).cwiseSqrt().cast<std::complex<double>>().asDiagonal();

  double best_value = -std::numeric_limits<double>::infinity();
  ComplexMatrix best_v;
  int run = 0;
  for (int restart = 0; restart < restarts; ++restart) {
    ++run;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
    ComplexMatrix base = haar_unitary(m, rng);
    double incumbent = isometry_objective(f, weighted, base.leftCols(r));

    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(givens_parameter_count(m));
    if (options.warm_start && m > 1) {
      const RealVector diag = rho.diagonal();
      auto mismatch = [&](const Eigen::VectorXd& t) {
        return mismatch_objective(diag, weighted, base * givens_columns(t, m, r));
      };
      double current = mismatch(origin);
      for (int stage = 0; stage < options.max_stages; ++stage) {
        NelderMeadOptions nm = options.simplex;
        nm.initial_step = options.simplex.initial_step / (1.0 + stage);
        nm.value_spread = options.warm_start_spread;
        const NelderMeadResult res = nelder_mead(mismatch, origin, nm);
        if (res.value >= current) break;
        base = base * givens_columns(res.x, m, m);
        const double gain = current - res.value;
        current = res.value;
        if (gain < options.warm_start_spread) break;
      }
      incumbent = isometry_objective(f, weighted, base.leftCols(r));
    }
    auto objective = [&](const Eigen::VectorXd& t) {
      return -isometry_objective(f, weighted, base * givens_columns(t, m, r));
    };
    for (int stage = 0; stage < options.max_stages && m > 1; ++stage) {
      NelderMeadOptions nm = options.simplex;
      nm.initial_step = options.simplex.initial_step / (1.0 + stage);
      const NelderMeadResult res = nelder_mead(objective, origin, nm);
      const double value = -res.value;
      if (value <= incumbent) break;
      // Fold the stage optimum into the base so the next simplex is centred on it.
      base = base * givens_columns(res.x, m, m);
      const double gain = value - incumbent;
      incumbent = value;
      if (gain < options.stage_improvement || bound - incumbent <= options.stop_gap) break;
    }
    if (incumbent > best_value) {
      best_value = incumbent;
      best_v = base.leftCols(r);
    }
    if (bound - best_value <= options.stop_gap) break;
  }

  Ensemble witness = from_isometry(rho, eig, Isometry(best_v));
  const double achieved = average_coherence(f, witness);
  const bool met = equality_condition(witness, rho, std::max(options.equality_tolerance, 1e-9));
  return BoundReport{bound, achieved, bound - achieved, std::move(witness), met, run};
}

}  // namespace coherence
