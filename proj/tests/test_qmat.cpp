#include <Eigen/Eigenvalues>

#include "coherence/qmat.hpp"
#include "support.hpp"

using namespace coherence;
using test::real_matrix;

TEST_CASE("validate_density accepts states and names what is wrong") {
  CHECK_NOTHROW(validate_density(real_matrix({{0.5, 0}, {0, 0.5}})));
  CHECK_NOTHROW(test::intro_rho());

  auto kind_of = [](const ComplexMatrix& m) {
    try {
      validate_density(m);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::ParseError;
  };
  CHECK(kind_of(real_matrix({{1, 1}, {1, 0}})) == ErrorKind::NotPSD);
  CHECK(kind_of(real_matrix({{0.5, 0.1}, {0.2, 0.5}})) == ErrorKind::NotHermitian);
  CHECK(kind_of(real_matrix({{0.6, 0}, {0, 0.5}})) == ErrorKind::BadTrace);
  CHECK(kind_of(ComplexMatrix::Zero(2, 3)) == ErrorKind::NotSquare);
}

TEST_CASE("validated matrices are exactly Hermitian with unit trace") {
  ComplexMatrix m = test::intro_rho().matrix();
  m(0, 1) += std::complex<double>(1e-13, 0);
  m(0, 0) += 1e-13;
  const auto rho = validate_density(m);
  CHECK(hermitian_residual(rho.matrix()) == 0.0);
  CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eigh of the reference qubit state") {
  const auto eig = eigh(test::intro_rho());
  const double r5 = std::sqrt(5.0);
  CHECK(eig.eigenvalues(0) == doctest::Approx((3 + r5) / 6).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx((3 - r5) / 6).epsilon(1e-14));
  // Largest-modulus entry real positive.
  CHECK(eig.eigenvectors(0, 0).real() > 0);
  CHECK(std::abs(eig.eigenvectors(0, 0).imag()) == 0.0);
}

TEST_CASE("eigh of trivial spectra") {
  const auto eig = eigh(validate_density(ComplexMatrix(ComplexMatrix::Identity(4, 4) / 4.0)));
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(eig.eigenvalues(i) == doctest::Approx(0.25));
  // Degenerate cluster rebuilt from e_0, e_1, ...: the identity basis.
  CHECK(test::max_abs(eig.eigenvectors - ComplexMatrix::Identity(4, 4)) < 1e-12);

  const auto diag = eigh(validate_density(real_matrix({{0.2, 0, 0}, {0, 0.5, 0}, {0, 0, 0.3}})));
  CHECK(diag.eigenvalues(0) == doctest::Approx(0.5));
  CHECK(diag.eigenvalues(1) == doctest::Approx(0.3));
  CHECK(diag.eigenvalues(2) == doctest::Approx(0.2));
  CHECK(std::abs(diag.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(diag.eigenvectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(diag.eigenvectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("eigh reconstructs random densities and agrees with Eigen's solver") {
  double worst = 0;
  double worst_values = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng(derive_seed(11, static_cast<std::uint64_t>(t)));
    const Eigen::Index d = 1 + t % 6;
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>(t / 6) % d;
    const auto rho = random_density(d, rng, rank);
    const auto eig = eigh(rho);
    const ComplexMatrix back =
        eig.eigenvectors * eig.eigenvalues.cast<std::complex<double>>().asDiagonal() * eig.eigenvectors.adjoint();
    worst = std::max(worst, test::max_abs(back - rho.matrix()));

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> oracle(rho.matrix());
    const RealVector reference = oracle.eigenvalues().reverse();
    worst_values = std::max(worst_values, (reference - eig.eigenvalues).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-10);
  CHECK(worst_values <= 1e-12);
}

TEST_CASE("the eigensolver is generic in the scalar") {
  ComplexMatrixT<long double> m(2, 2);
  m << 2.0L / 3, 1.0L / 3, 1.0L / 3, 1.0L / 3;
  const auto eig = hermitian_eigen(m);
  const long double r5 = std::sqrt(5.0L);
  CHECK(std::abs(eig.eigenvalues(0) - (3 + r5) / 6) < 1e-17L);
  const auto prec = validate_density<long double>(m, 1e-15L);
  CHECK(prec.dim() == 2);
}

TEST_CASE("eigh rejects non-convergence") {
  JacobiOptions opts;
  opts.max_sweeps = 0;
  CHECK_THROWS_AS(eigh(test::intro_rho(), opts), Error);
}

TEST_CASE("dephase") {
  const auto d = dephase(test::intro_rho());
  CHECK(test::max_abs(d.matrix() - real_matrix({{2.0 / 3, 0}, {0, 1.0 / 3}})) < 1e-15);

  const auto diag = validate_density(real_matrix({{0.7, 0}, {0, 0.3}}));
  CHECK(dephase(diag).matrix() == diag.matrix());

  const auto plus = pure_density(test::cvec({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}));
  CHECK(test::max_abs(dephase(plus).matrix() - real_matrix({{0.5, 0}, {0, 0.5}})) < 1e-15);

  for (int t = 0; t < 200; ++t) {
    Rng rng(derive_seed(12, static_cast<std::uint64_t>(t)));
    const auto rho = random_density(2 + t % 4, rng);
    const auto once = dephase(rho);
    CHECK(dephase(once).matrix() == once.matrix());
  }
}

TEST_CASE("correlation matrices") {
  const auto cm = correlation_matrix(test::intro_rho());
  CHECK(cm(0, 1).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(cm(1, 0).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(cm(0, 0).real() == 1.0);

  CHECK(test::max_abs(correlation_matrix(cm.matrix()).matrix() - cm.matrix()) < 1e-15);

  const auto incoherent = correlation_matrix(validate_density(real_matrix({{0.3, 0}, {0, 0.7}})));
  CHECK(test::max_abs(incoherent.matrix() - ComplexMatrix::Identity(2, 2)) == 0.0);

  try {
    correlation_matrix(validate_density(real_matrix({{1, 0}, {0, 0}})));
    FAIL("zero diagonal accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDiagonal);
  }
}

TEST_CASE("correlation matrix properties on random states") {
  for (int t = 0; t < 500; ++t) {
    Rng rng(derive_seed(13, static_cast<std::uint64_t>(t)));
    const Eigen::Index d = 2 + t % 5;
    const auto rho = random_density(d, rng, 1 + t % d);
    if (rho.diagonal().minCoeff() < 1e-6) continue;
    const auto cm = correlation_matrix(rho);
    CHECK((cm.matrix().diagonal().real().array() - 1).abs().maxCoeff() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(cm.matrix());
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    const ComplexMatrix s = rho.diagonal().cwiseSqrt().cast<std::complex<double>>().asDiagonal();
    CHECK(test::max_abs(s * cm.matrix() * s - rho.matrix()) <= 1e-10);
  }
}

TEST_CASE("restrict_to_support drops empty basis vectors") {
  const auto rho = validate_density(real_matrix({{0.5, 0, 0.2}, {0, 0, 0}, {0.2, 0, 0.5}}));
  const auto r = restrict_to_support(rho);
  REQUIRE(r.support.size() == 2);
  CHECK(r.support[0] == 0);
  CHECK(r.support[1] == 2);
  CHECK(r.state(0, 1).real() == doctest::Approx(0.2));
  CHECK_NOTHROW(correlation_matrix(r.state));
}
