#pragma once

#include <Eigen/Dense>

#include <functional>

namespace coherence {

struct NelderMeadOptions {
  int max_iterations = 5000;
  /// Stop once max f - min f over the simplex falls below this.
  double value_spread = 1e-10;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes `f` with the Nelder-Mead simplex method, using the
/// dimension-adaptive coefficients of Gao and Han (2012), which keep the
/// method effective for a few dozen parameters.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& start,
                             const NelderMeadOptions& options = {});

}  // namespace coherence
