#pragma once

// Qubit states in Bloch polar form and four canonical two-component
// decompositions: the coherence-maximizing one (M), the spectral one (s),
// and two low-coherence ones (m1, m2).

#include <array>
#include <string_view>

#include "coherence/ensembles.hpp"

namespace coherence {

struct BlochVector {
  double n = 0;      // length in [0, 1]
  double theta = 0;  // polar angle from the sigma_3 axis, [0, pi]
  double phi = 0;    // azimuth from the sigma_1 axis, [0, 2 pi)

  /// Validating constructor; phi is wrapped into [0, 2 pi). Throws BadBloch.
  static BlochVector make(double n, double theta, double phi);
};

BlochVector bloch_from_density(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& b);

enum class QubitDecompositionKind { M, S, M1, M2 };
inline constexpr std::array<QubitDecompositionKind, 4> kQubitDecompositions = {
    QubitDecompositionKind::M, QubitDecompositionKind::S, QubitDecompositionKind::M1, QubitDecompositionKind::M2};

constexpr std::string_view label(QubitDecompositionKind kind) {
  switch (kind) {
    case QubitDecompositionKind::M: return "M";
    case QubitDecompositionKind::S: return "s";
    case QubitDecompositionKind::M1: return "m1";
    case QubitDecompositionKind::M2: return "m2";
  }
  return "?";
}

struct QubitDecomposition {
  Ensemble ensemble;
  /// Polar angle of the coherent member(s) in the reduced frame:
  /// theta_o for M, theta for s, theta_3 for m1, theta_4 for m2.
  double angle = 0;
  /// Weight multiplying f(cos^2(angle/2), sin^2(angle/2)) in the average
  /// coherence: 1 except for m2, where it is the coherent member's weight.
  double coherent_weight = 1;
  /// Members collapsed onto a single state (pure-state limits).
  bool degenerate = false;
  /// theta was above pi/2 and the construction ran on the |0> <-> |1> swapped state.
  bool swapped = false;
};

/// For theta in (pi/2, pi] each constructor works on the basis-swapped state
/// (n, pi - theta, -phi) and swaps the members back, which leaves every
/// symmetric measure unchanged.
QubitDecomposition decomposition_M(const BlochVector& b);
QubitDecomposition decomposition_S(const BlochVector& b);
QubitDecomposition decomposition_m1(const BlochVector& b);
QubitDecomposition decomposition_m2(const BlochVector& b);
QubitDecomposition qubit_decomposition(QubitDecompositionKind kind, const BlochVector& b);

/// Average coherence from the single-angle closed form,
/// coherent_weight * f(cos^2(angle/2), sin^2(angle/2)).
double closed_form_average(const CoherenceMeasure& f, const QubitDecomposition& d);

struct OrderingRecord {
  std::array<double, 4> values{};  // indexed like kQubitDecompositions
  bool relations_8_ok = false;     // m1 <= s <= M
  bool relations_9_ok = false;     // m2 <= s <= M
  double strict_margin_9 = 0;      // s - m2
  bool strict_9 = false;           // strict_margin_9 > 1e-10
  bool m1_le_m2 = false;           // the extra link of the combined chain

  double value(QubitDecompositionKind kind) const { return values[static_cast<std::size_t>(kind)]; }
};

inline constexpr double kOrderTolerance = 1e-10;

/// Average coherences of the four decompositions (evaluated on the
/// constructed ensembles) and the order-relation checks at 1e-10.
OrderingRecord order_check(const CoherenceMeasure& f, const BlochVector& b);

}  // namespace coherence
