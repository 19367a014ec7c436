#pragma once

// Small dense complex linear algebra for density matrices: validation,
// Hermitian Jacobi eigendecomposition, dephasing and correlation matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <vector>

#include "coherence/error.hpp"

namespace coherence {

template <typename Scalar>
using ComplexMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;
using RealVector = Eigen::VectorXd;

/// Default tolerances for density-matrix certification.
struct DensityTolerance {
  static constexpr double hermitian = 1e-12;
  static constexpr double trace = 1e-12;
  static constexpr double psd = 1e-10;
};

template <typename Derived>
typename Derived::RealScalar hermitian_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

struct JacobiOptions {
  int max_sweeps = 100;
  double off_diagonal_threshold = 1e-13;
  /// Eigenvalues closer than this are treated as one degenerate cluster.
  double degeneracy_tolerance = 1e-10;
};

template <typename Scalar>
struct EigenSystemT {
  RealVectorT<Scalar> eigenvalues;     // descending
  ComplexMatrixT<Scalar> eigenvectors;  // column i pairs with eigenvalues[i]
  int sweeps = 0;
};
using EigenSystem = EigenSystemT<double>;

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const ComplexMatrixT<Scalar>& a) {
  Scalar sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Rotates column v so the component of largest modulus is real positive.
// Near-ties in modulus resolve to the lowest index.
template <typename Scalar>
void fix_phase(Eigen::Ref<ComplexVectorT<Scalar>> v) {
  const Scalar max_abs = v.cwiseAbs().maxCoeff();
  if (max_abs == Scalar(0)) return;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= max_abs - Scalar(1e-12)) {
      pivot = i;
      break;
    }
  }
  const std::complex<Scalar> phase = std::conj(v(pivot)) / std::abs(v(pivot));
  v *= phase;
  v(pivot) = std::complex<Scalar>(v(pivot).real(), Scalar(0));
}

// Replaces columns [first, last) with the Gram-Schmidt orthonormalization
// of the basis vectors e_0, e_1, ... projected onto their span.
template <typename Scalar>
void canonicalize_cluster(ComplexMatrixT<Scalar>& vecs, Eigen::Index first, Eigen::Index last) {
  const Eigen::Index n = vecs.rows();
  const Eigen::Index k = last - first;
  const ComplexMatrixT<Scalar> block = vecs.middleCols(first, k);
  const ComplexMatrixT<Scalar> projector = block * block.adjoint();
  ComplexMatrixT<Scalar> basis(n, k);
  Eigen::Index found = 0;
  for (Eigen::Index e = 0; e < n && found < k; ++e) {
    ComplexVectorT<Scalar> v = projector.col(e);
    for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j) * basis.col(j).dot(v);
    for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j) * basis.col(j).dot(v);
    const Scalar norm = v.norm();
    if (norm > Scalar(1e-8)) basis.col(found++) = v / norm;
  }
  if (found == k) vecs.middleCols(first, k) = basis;
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Eigenvalues come back in descending order. The eigenvector basis is made
/// deterministic: inside each degenerate cluster the basis is rebuilt by
/// Gram-Schmidt over e_0, e_1, ... in index order, and every eigenvector is
/// phased so its largest-modulus component is real positive.
template <typename Derived>
EigenSystemT<typename Derived::RealScalar> hermitian_eigen(const Eigen::MatrixBase<Derived>& input,
                                                           const JacobiOptions& options = {}) {
  using Scalar = typename Derived::RealScalar;
  using Complex = std::complex<Scalar>;
  if (input.rows() != input.cols()) throw Error(ErrorKind::NotSquare, "eigendecomposition needs a square matrix");

  const Eigen::Index n = input.rows();
  ComplexMatrixT<Scalar> a = (input.template cast<Complex>() + input.template cast<Complex>().adjoint()) / Scalar(2);
  ComplexMatrixT<Scalar> v = ComplexMatrixT<Scalar>::Identity(n, n);
  const Scalar threshold = Scalar(options.off_diagonal_threshold) * std::max(Scalar(1), a.norm());

  int sweep = 0;
  while (detail::off_diagonal_norm<Scalar>(a) >= threshold) {
    if (sweep >= options.max_sweeps) {
      std::ostringstream msg;
      msg << "off-diagonal norm " << detail::off_diagonal_norm<Scalar>(a) << " after " << sweep << " sweeps";
      throw Error(ErrorKind::ConvergenceFailure, msg.str());
    }
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const Scalar mag = std::abs(g);
        if (mag == Scalar(0)) continue;
        // Phase the pair to a real symmetric 2x2 block, then apply the
        // classical Jacobi rotation to it.
        const Complex phase = g / mag;  // e^{i arg g}
        const Scalar app = a(p, p).real();
        const Scalar aqq = a(q, q).real();
        const Scalar tau = (aqq - app) / (Scalar(2) * mag);
        const Scalar t = (tau >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;
        // J = [[c, s], [-s e^{-i arg g}, c e^{-i arg g}]] acting on (p, q).
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = Complex(0);
        a(q, p) = Complex(0);
        a(p, p) = Complex(app - t * mag, 0);
        a(q, q) = Complex(aqq + t * mag, 0);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystemT<Scalar> result;
  result.sweeps = sweep;
  result.eigenvalues.resize(n);
  result.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.eigenvalues(i) = a(order[i], order[i]).real();
    result.eigenvectors.col(i) = v.col(order[i]);
  }

  const Scalar degeneracy = Scalar(options.degeneracy_tolerance) * std::max(Scalar(1), result.eigenvalues.cwiseAbs().maxCoeff());
  for (Eigen::Index first = 0; first < n;) {
    Eigen::Index last = first + 1;
    while (last < n && result.eigenvalues(last - 1) - result.eigenvalues(last) <= degeneracy) ++last;
    if (last - first > 1) detail::canonicalize_cluster<Scalar>(result.eigenvectors, first, last);
    first = last;
  }
  for (Eigen::Index i = 0; i < n; ++i) detail::fix_phase<Scalar>(result.eigenvectors.col(i));
  return result;
}

/// Unit-trace Hermitian PSD matrix. Only obtainable through validation.
template <typename Scalar>
class BasicDensityMatrix {
 public:
  using Matrix = ComplexMatrixT<Scalar>;

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  std::complex<Scalar> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  RealVectorT<Scalar> diagonal() const { return m_.diagonal().real(); }

  template <typename S>
  friend BasicDensityMatrix<S> validate_density(const ComplexMatrixT<S>& m, S tol);
  template <typename S>
  friend BasicDensityMatrix<S> dephase(const BasicDensityMatrix<S>& rho);

 private:
  explicit BasicDensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};
using DensityMatrix = BasicDensityMatrix<double>;

/// Certifies `m` as a density matrix. The result is exactly Hermitian and,
/// when the trace is within `tol` of one, renormalized to unit trace.
template <typename Scalar>
BasicDensityMatrix<Scalar> validate_density(const ComplexMatrixT<Scalar>& m, Scalar tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << "expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::NotSquare, msg.str());
  }
  const Scalar herm = hermitian_residual(m);
  if (herm > tol) {
    std::ostringstream msg;
    msg << "max |m_ij - conj(m_ji)| = " << herm << " exceeds " << tol;
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
  const Scalar trace = m.trace().real();
  if (std::abs(trace - Scalar(1)) > tol) {
    std::ostringstream msg;
    msg << "trace " << trace << " differs from 1 by " << std::abs(trace - Scalar(1));
    throw Error(ErrorKind::BadTrace, msg.str());
  }
  ComplexMatrixT<Scalar> h = (m + m.adjoint()) / Scalar(2);
  h.diagonal() = h.diagonal().real().template cast<std::complex<Scalar>>();
  h /= h.trace().real();
  const auto eig = hermitian_eigen(h);
  const Scalar min_eig = eig.eigenvalues.minCoeff();
  const Scalar psd_tol = std::max(tol, Scalar(DensityTolerance::psd));
  if (min_eig < -psd_tol) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << min_eig << " below -" << psd_tol;
    throw Error(ErrorKind::NotPSD, msg.str());
  }
  return BasicDensityMatrix<Scalar>(std::move(h));
}

inline DensityMatrix validate_density(const ComplexMatrix& m, double tol = DensityTolerance::trace) {
  return validate_density<double>(m, tol);
}

template <typename Scalar>
EigenSystemT<Scalar> eigh(const BasicDensityMatrix<Scalar>& rho, const JacobiOptions& options = {}) {
  return hermitian_eigen(rho.matrix(), options);
}

/// Number of eigenvalues above `cutoff`.
template <typename Scalar>
Eigen::Index numerical_rank(const EigenSystemT<Scalar>& eig, Scalar cutoff = Scalar(1e-12)) {
  return (eig.eigenvalues.array() > cutoff).count();
}

/// Diagonal part of rho in the reference basis.
template <typename Scalar>
BasicDensityMatrix<Scalar> dephase(const BasicDensityMatrix<Scalar>& rho) {
  ComplexMatrixT<Scalar> d = ComplexMatrixT<Scalar>::Zero(rho.dim(), rho.dim());
  d.diagonal() = rho.matrix().diagonal();
  return BasicDensityMatrix<Scalar>(std::move(d));
}

/// Hermitian PSD matrix with unit diagonal.
class CorrelationMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  friend CorrelationMatrix correlation_matrix(const ComplexMatrix& m);

 private:
  explicit CorrelationMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Threshold below which a diagonal entry counts as zero.
inline constexpr double kZeroDiagonal = 1e-14;

/// D^{-1/2} M D^{-1/2} with D the diagonal of M. Works for any Hermitian PSD
/// matrix with strictly positive diagonal; a correlation matrix maps to itself.
CorrelationMatrix correlation_matrix(const ComplexMatrix& m);

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho) { return correlation_matrix(rho.matrix()); }

/// rho restricted to the basis indices where its diagonal is nonzero.
struct SupportRestriction {
  DensityMatrix state;
  std::vector<Eigen::Index> support;  // original index of each retained row
};

SupportRestriction restrict_to_support(const DensityMatrix& rho);

/// The density matrix |psi><psi| for a normalized vector.
DensityMatrix pure_density(const ComplexVector& psi);

}  // namespace coherence
