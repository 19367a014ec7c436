#include "coherence/bloch.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace coherence {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

struct HalfAngle {
  double cos_half;  // cos(A/2)
  double sin_half;  // sin(A/2)
};

// cos(A/2), sin(A/2) for A in [0, pi] from cos A and sin A >= 0, avoiding
// arccos near +-1 where it loses half the digits.
HalfAngle half_angle(double cos_a, double sin_a) {
  const double c = std::sqrt(std::max(0.0, (1.0 + cos_a) / 2.0));
  if (c < 1e-300) return {0.0, 1.0};
  return {c, sin_a / (2.0 * c)};
}

ComplexVector qubit(std::complex<double> a0, std::complex<double> a1) {
  ComplexVector v(2);
  v << a0, a1;
  return v;
}

struct Reduced {
  BlochVector b;
  bool swapped;
};

Reduced reduce(const BlochVector& b) {
  if (b.theta > kPi / 2) return {BlochVector::make(b.n, kPi - b.theta, -b.phi), true};
  return {b, false};
}

// Drops negligible members, renormalizes, and swaps |0> <-> |1> back if needed.
QubitDecomposition finish(std::vector<std::pair<double, ComplexVector>> members, double angle, bool forced_degenerate,
                          bool swapped) {
  std::vector<Component> comps;
  double total = 0;
  for (auto& [w, v] : members) {
    if (w <= kDropWeight) continue;
    if (swapped) std::swap(v(0), v(1));
    comps.push_back({w, PureState::normalized(v)});
    total += w;
  }
  for (auto& c : comps) c.weight /= total;
  const bool degenerate = forced_degenerate || comps.size() < members.size();
  return {Ensemble(std::move(comps)), angle, 1.0, degenerate, swapped};
}

}  // namespace

BlochVector BlochVector::make(double n, double theta, double phi) {
  if (!std::isfinite(n) || !std::isfinite(theta) || !std::isfinite(phi))
    throw Error(ErrorKind::BadBloch, "non-finite Bloch coordinates");
  if (n < 0 || n > 1 + 1e-12) {
    std::ostringstream msg;
    msg << "Bloch length " << n << " outside [0, 1]";
    throw Error(ErrorKind::BadBloch, msg.str());
  }
  if (theta < -kAngleSlack || theta > kPi + kAngleSlack) {
    std::ostringstream msg;
    msg << "polar angle " << theta << " outside [0, pi]";
    throw Error(ErrorKind::BadBloch, msg.str());
  }
  double wrapped = phi - 2 * kPi * std::floor(phi / (2 * kPi));
  if (wrapped >= 2 * kPi) wrapped = 0;
  return {std::min(n, 1.0), std::clamp(theta, 0.0, kPi), wrapped};
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "Bloch vectors describe qubits only");
  const double nx = 2.0 * rho(0, 1).real();
  const double ny = -2.0 * rho(0, 1).imag();
  const double nz = rho(0, 0).real() - rho(1, 1).real();
  const double transverse = std::hypot(nx, ny);
  const double n = std::hypot(transverse, nz);
  if (n == 0) return BlochVector::make(0, 0, 0);
  const double phi = transverse == 0 ? 0.0 : std::atan2(ny, nx);
  return BlochVector::make(n, std::atan2(transverse, nz), phi);
}

DensityMatrix density_from_bloch(const BlochVector& b) {
  const double nx = b.n * std::sin(b.theta) * std::cos(b.phi);
  const double ny = b.n * std::sin(b.theta) * std::sin(b.phi);
  const double nz = b.n * std::cos(b.theta);
  ComplexMatrix rho(2, 2);
  rho << (1 + nz) / 2, std::complex<double>(nx, -ny) / 2.0, std::complex<double>(nx, ny) / 2.0, (1 - nz) / 2;
  return validate_density(rho, 1e-9);
}

QubitDecomposition decomposition_M(const BlochVector& input) {
  const auto [b, swapped] = reduce(input);
  const double c = b.n * std::cos(b.theta);
  const double s = b.n * std::sin(b.theta);
  const double sin_o = std::sqrt(std::max(0.0, 1 - c * c));
  const double theta_o = std::atan2(sin_o, c);  // arccos(n cos theta)
  if (sin_o <= 1e-14) return finish({{1.0, qubit(1, 0)}}, theta_o, true, swapped);
  const double ratio = std::min(1.0, s / sin_o);
  const auto [a0, a1] = half_angle(c, sin_o);
  const std::complex<double> e = std::polar(1.0, b.phi);
  return finish({{(1 + ratio) / 2, qubit(a0, e * a1)}, {(1 - ratio) / 2, qubit(a0, -e * a1)}}, theta_o, false, swapped);
}

QubitDecomposition decomposition_S(const BlochVector& input) {
  const auto [b, swapped] = reduce(input);
  const double a0 = std::cos(b.theta / 2);
  const double a1 = std::sin(b.theta / 2);
  const std::complex<double> e = std::polar(1.0, b.phi);
  return finish({{(1 + b.n) / 2, qubit(a0, e * a1)}, {(1 - b.n) / 2, qubit(a1, -e * a0)}}, b.theta, false, swapped);
}

QubitDecomposition decomposition_m1(const BlochVector& input) {
  const auto [b, swapped] = reduce(input);
  const double c = b.n * std::cos(b.theta);
  const double s = b.n * std::sin(b.theta);
  const double cos3 = std::sqrt(std::max(0.0, 1 - s * s));
  const double theta_3 = std::atan2(s, cos3);  // arccos sqrt(1 - n^2 sin^2 theta)
  const std::complex<double> e = std::polar(1.0, b.phi);
  // n sin(theta) = 1: both members sit at theta_3 = pi/2 and coincide with the state.
  if (cos3 <= 1e-14) return finish({{1.0, qubit(1 / std::sqrt(2.0), e / std::sqrt(2.0))}}, theta_3, true, swapped);
  // (-1 + s^2 - c sqrt(1 - s^2)) / (-2 + 2 s^2) rewritten without the 0/0 form.
  const double p1 = std::clamp(0.5 + c / (2 * cos3), 0.0, 1.0);
  const auto [a0, a1] = half_angle(cos3, s);
  return finish({{p1, qubit(a0, e * a1)}, {1 - p1, qubit(a1, e * a0)}}, theta_3, false, swapped);
}

QubitDecomposition decomposition_m2(const BlochVector& input) {
  const auto [b, swapped] = reduce(input);
  const double n = b.n;
  const double c = n * std::cos(b.theta);
  const double s = n * std::sin(b.theta);
  const double incoherent = (1 - n * n) / (2 * (1 + c));
  const double denom = 1 + n * n + 2 * c;
  const double cos4 = (1 + 2 * c + n * n * std::cos(2 * b.theta)) / denom;
  const double sin4 = 2 * (1 + c) * s / denom;
  const double theta_4 = std::atan2(sin4, cos4);
  const auto [a0, a1] = half_angle(cos4, sin4);
  const std::complex<double> e = std::polar(1.0, b.phi);
  auto result = finish({{incoherent, qubit(0, 1)}, {1 - incoherent, qubit(a0, e * a1)}}, theta_4, false, swapped);
  result.coherent_weight = result.ensemble.size() == 1 ? 1.0 : result.ensemble[1].weight;
  return result;
}

QubitDecomposition qubit_decomposition(QubitDecompositionKind kind, const BlochVector& b) {
  switch (kind) {
    case QubitDecompositionKind::M: return decomposition_M(b);
    case QubitDecompositionKind::S: return decomposition_S(b);
    case QubitDecompositionKind::M1: return decomposition_m1(b);
    case QubitDecompositionKind::M2: return decomposition_m2(b);
  }
  throw Error(ErrorKind::BadParams, "unknown decomposition kind");
}

double closed_form_average(const CoherenceMeasure& f, const QubitDecomposition& d) {
  RealVector x(2);
  x << std::pow(std::cos(d.angle / 2), 2), std::pow(std::sin(d.angle / 2), 2);
  return d.coherent_weight * f(x);
}

OrderingRecord order_check(const CoherenceMeasure& f, const BlochVector& b) {
  OrderingRecord rec;
  for (std::size_t i = 0; i < kQubitDecompositions.size(); ++i)
    rec.values[i] = average_coherence(f, qubit_decomposition(kQubitDecompositions[i], b).ensemble);
  const double big_m = rec.value(QubitDecompositionKind::M);
  const double s = rec.value(QubitDecompositionKind::S);
  const double m1 = rec.value(QubitDecompositionKind::M1);
  const double m2 = rec.value(QubitDecompositionKind::M2);
  rec.relations_8_ok = m1 <= s + kOrderTolerance && s <= big_m + kOrderTolerance;
  rec.relations_9_ok = m2 <= s + kOrderTolerance && s <= big_m + kOrderTolerance;
  rec.strict_margin_9 = s - m2;
  rec.strict_9 = rec.strict_margin_9 > kOrderTolerance;
  rec.m1_le_m2 = m1 <= m2 + kOrderTolerance;
  return rec;
}

}  // namespace coherence
