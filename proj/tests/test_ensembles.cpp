#include <algorithm>
#include <numbers>

#include "coherence/bounds.hpp"
#include "coherence/experiments.hpp"
#include "support.hpp"

using namespace coherence;
using test::cvec;
using test::real_matrix;

namespace {

const double kH = 1 / std::sqrt(2.0);

Ensemble intro_d1() { return Ensemble({{2.0 / 3, PureState(cvec({kH, kH}))}, {1.0 / 3, PureState::basis(2, 0)}}); }

ComplexMatrix random_isometry(Eigen::Index m, Eigen::Index r, Rng& rng) { return haar_unitary(m, rng).leftCols(r); }

// Rotation family written out by hand: members in the |+>, |-> basis.
struct FamilyMember {
  double p;
  double c;
};
std::array<FamilyMember, 2> family_oracle(double x, double a) {
  const double l1 = 0.5 + x, l2 = 0.5 - x;
  const double c = std::cos(a), s = std::sin(a);
  const double p1 = c * c * l1 + s * s * l2;
  const double p2 = s * s * l1 + c * c * l2;
  return {{{p1, std::abs(l1 * c * c - l2 * s * s) / p1}, {p2, std::abs(l1 * s * s - l2 * c * c) / p2}}};
}

}  // namespace

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(Ensemble({}), Error);
  CHECK_THROWS_AS(Ensemble({{0.5, PureState::basis(2, 0)}}), Error);
  CHECK_THROWS_AS(Ensemble({{1.2, PureState::basis(2, 0)}, {-0.2, PureState::basis(2, 1)}}), Error);
  CHECK_THROWS_AS(Ensemble({{0.5, PureState::basis(2, 0)}, {0.5, PureState::basis(3, 1)}}), Error);
  CHECK_THROWS_AS(Isometry(ComplexMatrix::Ones(2, 2)), Error);
  CHECK_THROWS_AS(Isometry(ComplexMatrix::Identity(2, 3)), Error);
}

TEST_CASE("reconstruct") {
  CHECK(test::max_abs(reconstruct(intro_d1()).matrix() - test::intro_rho().matrix()) < 1e-15);
  const auto psi = PureState::normalized(cvec({{1, 2}, {0.5, -1}, 3}));
  CHECK(test::max_abs(reconstruct(Ensemble({{1.0, psi}})).matrix() - pure_density(psi.amplitudes()).matrix()) < 1e-15);
  const auto fourier = optimal_incoherent(test::vec({0.5, 0.3, 0.2}));
  CHECK(test::max_abs(reconstruct(fourier).matrix() - real_matrix({{0.5, 0, 0}, {0, 0.3, 0}, {0, 0, 0.2}})) < 1e-15);
}

TEST_CASE("is_decomposition_of") {
  const auto rho = test::intro_rho();
  CHECK(is_decomposition_of(intro_d1(), rho, 1e-12));
  CHECK(is_decomposition_of(spectral_ensemble(rho), rho, 1e-12));
  const auto mixed = validate_density(real_matrix({{0.5, 0}, {0, 0.5}}));
  CHECK_FALSE(is_decomposition_of(Ensemble({{1.0, PureState::basis(2, 0)}}), mixed, 1e-9));
  CHECK_THROWS_AS(is_decomposition_of(intro_d1(), validate_density(ComplexMatrix(ComplexMatrix::Identity(3, 3) / 3.0)), 1e-9),
                  Error);
}

TEST_CASE("from_isometry") {
  const auto rho = test::intro_rho();
  const auto eig = eigh(rho);
  const auto spectral = from_isometry(rho, Isometry(ComplexMatrix::Identity(2, 2)));
  REQUIRE(spectral.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(spectral[k].weight == doctest::Approx(eig.eigenvalues(static_cast<Eigen::Index>(k))).epsilon(1e-14));
    const ComplexVector v = eig.eigenvectors.col(static_cast<Eigen::Index>(k));
    CHECK(std::abs(v.dot(spectral[k].state.amplitudes())) == doctest::Approx(1.0).epsilon(1e-14));
  }

  ComplexMatrix f(2, 2);
  f << kH, kH, kH, -kH;
  const auto equal = from_isometry(rho, Isometry(f));
  CHECK(equal[0].weight == doctest::Approx(0.5));
  CHECK(equal[1].weight == doctest::Approx(0.5));
  CHECK(is_decomposition_of(equal, rho, 1e-12));

  CHECK_THROWS_AS(from_isometry(rho, Isometry(ComplexMatrix::Identity(3, 1))), Error);
}

TEST_CASE("the rotation family has the stated weights") {
  for (const double x : {0.1, 0.2, 0.3, 0.4})
    for (const double a : {0.0, 0.3, 0.7, 1.2}) {
      const auto e = fig1_ensemble(x, a);
      const auto oracle = family_oracle(x, a);
      REQUIRE(e.size() == 2);
      CHECK(e[0].weight == doctest::Approx(oracle[0].p).epsilon(1e-13));
      CHECK(pure_coherence(l1_measure(), e[0].state) == doctest::Approx(oracle[0].c).epsilon(1e-12));
      CHECK(pure_coherence(l1_measure(), e[1].state) == doctest::Approx(oracle[1].c).epsilon(1e-12));
      CHECK(is_decomposition_of(e, fig1_state(x), 1e-12));
    }
  // x = 1/2 is pure: both members are |+> with weights cos^2 a and sin^2 a.
  const auto pure = fig1_ensemble(0.5, 0.4);
  REQUIRE(pure.size() == 2);
  CHECK(pure[0].weight == doctest::Approx(std::pow(std::cos(0.4), 2)));
  for (const auto& c : pure) CHECK(std::abs(c.state[0] - c.state[1]) < 1e-15);
  CHECK_THROWS_AS(fig1_state(0.0), Error);
  CHECK_THROWS_AS(fig1_state(0.6), Error);
}

TEST_CASE("random ensembles") {
  const auto rho = test::intro_rho();
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(is_decomposition_of(random_ensemble(rho, 2, seed), rho, 1e-12));

  const auto mixed = validate_density(real_matrix({{0.5, 0}, {0, 0.5}}));
  const auto e = random_ensemble(mixed, 2, 3);
  CHECK(e[0].weight + e[1].weight == doctest::Approx(1.0));
  CHECK(is_decomposition_of(e, mixed, 1e-12));
  CHECK_THROWS_AS(random_ensemble(rho, 1, 0), Error);

  const auto l1 = l1_measure();
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    worst = std::max(worst, average_coherence(l1, random_ensemble(rho, 2 + seed % 5, seed)));
  CHECK(worst <= 2 * std::sqrt(2.0) / 3 + 1e-9);
  CHECK(worst > 0.8);

  CHECK(test::max_abs(reconstruct(random_ensemble(rho, 4, 9)).matrix() -
                      reconstruct(random_ensemble(rho, 4, 9)).matrix()) == 0.0);
}

TEST_CASE("average coherence and msd") {
  CHECK(average_coherence(l1_measure(), intro_d1()) == doctest::Approx(2.0 / 3));
  CHECK(average_coherence(entropy_measure(),
                          spectral_ensemble(validate_density(real_matrix({{0.5, 0, 0}, {0, 0.2, 0}, {0, 0, 0.3}})))) == 0.0);
  for (const double x : {0.1, 0.25, 0.4}) {
    CHECK(average_coherence(l1_measure(), fig1_ensemble(x, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(msd(l1_measure(), fig1_ensemble(x, 0)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(msd(entropy_measure(), Ensemble({{1.0, PureState(cvec({kH, kH}))}})) == 0.0);
}

TEST_CASE("msd peaks at half arccos 2x") {
  const double x = 0.1;
  const auto grid = alpha_grid(181);
  auto oracle_msd = [&](double a) {
    const auto m = family_oracle(x, a);
    const double avg = m[0].p * m[0].c + m[1].p * m[1].c;
    return m[0].p * std::pow(m[0].c - avg, 2) + m[1].p * std::pow(m[1].c - avg, 2);
  };
  std::size_t best = 0, best_oracle = 0;
  for (std::size_t i = 0; i < grid.size() && grid[i] <= std::numbers::pi / 4 + 1e-12; ++i) {
    const double m = msd(l1_measure(), fig1_ensemble(x, grid[i]));
    CHECK(m == doctest::Approx(oracle_msd(grid[i])).epsilon(1e-10));
    if (m > msd(l1_measure(), fig1_ensemble(x, grid[best]))) best = i;
    if (oracle_msd(grid[i]) > oracle_msd(grid[best_oracle])) best_oracle = i;
  }
  CHECK(best == best_oracle);
  CHECK(std::abs(grid[best] - std::acos(0.2) / 2) <= grid[1]);
}

TEST_CASE("ensemble properties over random isometries") {
  const std::vector<CoherenceMeasure> fs = registry_measures();
  for (int t = 0; t < 1000; ++t) {
    Rng rng(derive_seed(31, static_cast<std::uint64_t>(t)));
    const Eigen::Index d = 2 + t % 3;
    const auto rho = random_density(d, rng);
    const Eigen::Index m = d + static_cast<Eigen::Index>(t % 4);
    const auto e = from_isometry(rho, Isometry(random_isometry(m, d, rng)));
    CHECK(test::max_abs(reconstruct(e).matrix() - rho.matrix()) <= 1e-10);

    const auto& f = fs[static_cast<std::size_t>(t) % fs.size()];
    const double avg = average_coherence(f, e);
    double second = 0;
    for (const auto& c : e) second += c.weight * std::pow(pure_coherence(f, c.state), 2);
    CHECK(std::abs(msd(f, e) - (second - avg * avg)) <= 1e-12);

    std::vector<Component> comps(e.begin(), e.end());
    std::shuffle(comps.begin(), comps.end(), rng);
    const Ensemble shuffled(comps);
    CHECK(average_coherence(f, shuffled) == avg);
    CHECK(msd(f, shuffled) == msd(f, e));
  }
}
