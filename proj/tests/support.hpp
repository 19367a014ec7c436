#pragma once

#include <doctest.h>

#include <cmath>
#include <complex>
#include <initializer_list>

#include "coherence/random.hpp"

namespace test {

using coherence::ComplexMatrix;
using coherence::ComplexVector;
using coherence::RealVector;

inline ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline RealVector vec(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const double x : values) v(i++) = x;
  return v;
}

inline ComplexVector cvec(std::initializer_list<std::complex<double>> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline coherence::DensityMatrix intro_rho() {
  return coherence::validate_density(real_matrix({{2.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3}}));
}

}  // namespace test
