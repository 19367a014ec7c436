#pragma once

// Reproduction experiments behind the coherence-decomp commands.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coherence/bloch.hpp"
#include "coherence/bounds.hpp"

namespace coherence {

// --- The rotation family of rho(x) = [[1/2, x], [x, 1/2]] ------------

DensityMatrix fig1_state(double x);
/// Members sum_i V_ki sqrt(lambda_i) e_i with V = [[cos a, sin a], [-sin a, cos a]]
/// over the (descending) eigenbasis of rho(x). Throws BadX unless x in (0, 1/2].
Ensemble fig1_ensemble(double x, double alpha);

struct Fig1Row {
  double x = 0;
  double alpha = 0;
  double avg_l1 = 0;
  double msd = 0;
};

/// alpha_i = i (pi/2) / (alpha_points - 1), endpoints inclusive.
std::vector<double> alpha_grid(int alpha_points);
std::vector<Fig1Row> cmd_fig1(const std::vector<double>& xs, int alpha_points);

struct Fig1Check {
  double max_error_at_zero = 0;   // |avg(0) - 1|
  double max_plateau_error = 0;   // |avg - 2x| on [arccos(2x)/2, pi/4]
  double max_msd_endpoint = 0;    // |msd| at alpha in {0, pi/4}
  double max_symmetry_error = 0;  // |row(alpha) - row(pi/2 - alpha)|
  double max_overlap_error = 0;   // pairwise |avg_1 - avg_2| on [0, arccos(2 x_max)/2]
  double max_argmax_offset = 0;   // |argmax msd - arccos(2x)/2| over [0, pi/4], in grid steps
  bool ok(double tol = 1e-9) const;
};

/// The caption properties of the figure. Rows must come from cmd_fig1.
Fig1Check check_fig1(const std::vector<Fig1Row>& rows, int alpha_points);

// --- Qubit closed-form table ------------------------------------------------------------------

/// Closed forms for the entropy, l1 and fidelity columns:
/// H(c^2, s^2), 2|c s| and sqrt(1 - max(c^2, s^2)) with c = cos(A/2), s = sin(A/2).
double table1_closed_form(int column, double angle);

struct Table1 {
  BlochVector state;
  std::array<std::string, 3> measures{"entropy", "l1", "fidelity"};
  std::array<std::array<double, 3>, 4> closed{};    // [decomposition][measure]
  std::array<std::array<double, 3>, 4> ensemble{};  // average_coherence on the built ensembles
  std::array<bool, 4> degenerate{};
  double max_cross_error = 0;
  bool chain_ok = false;      // m1 <= m2 <= s <= M with 1e-10 slack, every column
  bool chain_strict = false;  // additionally s - m2 > 1e-10 in every column
  bool cross_check_ok() const { return max_cross_error <= 1e-10; }
};

Table1 cmd_table1(const BlochVector& b);

// --- Intro example --------------------------------------------------------------

struct IntroReport {
  struct Decomposition {
    std::string name;
    Ensemble ensemble;
    double reconstruction_error = 0;  // max |rho - sum p psi psi^dagger|
    bool reconstructs = false;        // error <= 1e-12
    std::vector<double> eigen_residuals;  // |rho psi - p psi|, only for the spectral one
    bool eigenpairs_ok = true;
    double avg_entropy = 0;
    double avg_l1 = 0;
  };
  Decomposition first;
  Decomposition second;
  bool entropy_claim_holds = false;  // claimed: first > second under relative entropy
  bool l1_claim_holds = false;       // claimed: the reverse under l1
};

DensityMatrix intro_state();
IntroReport cmd_intro_example();

// --- Sweep ---------------------------------------------------------------------

struct SweepGrid {
  int n_points = 50;      // n in [0, 1], endpoints inclusive
  int theta_points = 50;  // theta in [0, pi/2], endpoints inclusive
  int phi_points = 8;     // phi = 2 pi k / phi_points
  double n(int i) const;
  double theta(int j) const;
  double phi(int k) const;
  double theta_step() const;
};

struct SweepRow {
  std::size_t measure = 0;
  int i = 0, j = 0, k = 0;
  BlochVector state;
  OrderingRecord record;
  bool spectral_equals_max = false;  // |C(s) - C(M)| <= 1e-10
};

struct OrderFlip {
  std::string measure;
  int k = 0;  // power parameter, 0 for other measures
  double n = 0, theta = 0, phi = 0;
  double excess = 0;  // C(m1) - C(m2)
};

struct SweepSummary {
  std::size_t evaluations = 0;
  std::size_t violations_8 = 0;
  std::size_t violations_9 = 0;
  std::size_t non_strict_9 = 0;
  /// Equality C(s) = C(M) off the theta = pi/2 line, apart from pure states.
  std::size_t disc_violations = 0;
  /// theta = pi/2 points where C(s) = C(M) fails.
  std::size_t disc_misses = 0;
  std::vector<OrderFlip> flips;  // C(m1) > C(m2) + 1e-8
};

struct SweepResult {
  std::vector<std::string> measures;
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

inline constexpr double kFlipMargin = 1e-8;

SweepResult cmd_sweep(const std::vector<CoherenceMeasure>& measures, const SweepGrid& grid);

/// `count` convex mixtures of the registry measures with weights drawn from
/// derive_seed(seed, i); the names re-parse to the same measure.
std::vector<CoherenceMeasure> random_mixtures(int count, std::uint64_t seed);

/// Comma-separated measure list. Besides single specs it accepts
/// "registry", "power:k=A..B" and "mixtures:N" (seeded by `seed`).
/// An empty string gives no measures.
std::vector<CoherenceMeasure> parse_measure_set(const std::string& list, std::uint64_t seed);

}  // namespace coherence
