#include "coherence/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "coherence/random.hpp"

namespace coherence {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ComplexMatrix outer_sum(const Ensemble& e) {
  ComplexMatrix sum = ComplexMatrix::Zero(e.dim(), e.dim());
  for (const auto& c : e) sum += c.weight * c.state.amplitudes() * c.state.amplitudes().adjoint();
  return sum;
}

int parse_int(const std::string& text, const std::string& context) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error(ErrorKind::ParseError, "bad integer '" + text + "' in '" + context + "'");
  return value;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

}  // namespace

DensityMatrix fig1_state(double x) {
  if (!(x > 0 && x <= 0.5)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside (0, 1/2]";
    throw Error(ErrorKind::BadX, msg.str());
  }
  ComplexMatrix m(2, 2);
  m << 0.5, x, x, 0.5;
  return validate_density(m);
}

Ensemble fig1_ensemble(double x, double alpha) {
  const DensityMatrix rho = fig1_state(x);
  const EigenSystem eig = eigh(rho);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  ComplexMatrix v(2, 2);
  v << c, s, -s, c;
  // x = 1/2 is the pure state |+>; only the first eigenvector carries weight.
  if (numerical_rank(eig) == 1) return from_isometry(rho, eig, Isometry(v.leftCols(1)));
  return from_isometry(rho, eig, Isometry(v));
}

std::vector<double> alpha_grid(int alpha_points) {
  if (alpha_points < 2) throw Error(ErrorKind::BadParams, "alpha grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(alpha_points));
  for (int i = 0; i < alpha_points; ++i) grid[static_cast<std::size_t>(i)] = i * (kPi / 2) / (alpha_points - 1);
  return grid;
}

std::vector<Fig1Row> cmd_fig1(const std::vector<double>& xs, int alpha_points) {
  const auto alphas = alpha_grid(alpha_points);
  const auto l1 = l1_measure();
  std::vector<Fig1Row> rows;
  rows.reserve(xs.size() * alphas.size());
  for (const double x : xs) {
    fig1_state(x);
    for (const double a : alphas) {
      const Ensemble e = fig1_ensemble(x, a);
      rows.push_back({x, a, average_coherence(l1, e), msd(l1, e)});
    }
  }
  return rows;
}

bool Fig1Check::ok(double tol) const {
  return max_error_at_zero <= tol && max_plateau_error <= tol && max_msd_endpoint <= tol && max_symmetry_error <= tol &&
         max_overlap_error <= tol && max_argmax_offset <= 1.0;
}

Fig1Check check_fig1(const std::vector<Fig1Row>& rows, int alpha_points) {
  Fig1Check out;
  const auto n = static_cast<std::size_t>(alpha_points);
  if (n < 2 || rows.size() % n != 0) throw Error(ErrorKind::BadParams, "rows do not match the alpha grid");
  const std::size_t curves = rows.size() / n;
  const double step = (kPi / 2) / (alpha_points - 1);
  const double quarter = kPi / 4 + 1e-12;

  for (std::size_t c = 0; c < curves; ++c) {
    const Fig1Row* r = &rows[c * n];
    const double x = r[0].x;
    const double edge = std::acos(2 * x) / 2;
    out.max_error_at_zero = std::max(out.max_error_at_zero, std::abs(r[0].avg_l1 - 1));
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = r[i].alpha;
      if (a >= edge - 1e-12 && a <= quarter) out.max_plateau_error = std::max(out.max_plateau_error, std::abs(r[i].avg_l1 - 2 * x));
      if (std::abs(a) < 1e-12 || std::abs(a - kPi / 4) < 1e-12) out.max_msd_endpoint = std::max(out.max_msd_endpoint, std::abs(r[i].msd));
      const Fig1Row& mirror = r[n - 1 - i];
      out.max_symmetry_error = std::max({out.max_symmetry_error, std::abs(r[i].avg_l1 - mirror.avg_l1), std::abs(r[i].msd - mirror.msd)});
      if (a <= quarter && r[i].msd > r[best].msd) best = i;
    }
    out.max_argmax_offset = std::max(out.max_argmax_offset, std::abs(r[best].alpha - edge) / step);

    for (std::size_t o = c + 1; o < curves; ++o) {
      const Fig1Row* q = &rows[o * n];
      const double shared = std::acos(2 * std::max(x, q[0].x)) / 2;
      for (std::size_t i = 0; i < n && r[i].alpha <= shared + 1e-12; ++i)
        out.max_overlap_error = std::max(out.max_overlap_error, std::abs(r[i].avg_l1 - q[i].avg_l1));
    }
  }
  return out;
}

double table1_closed_form(int column, double angle) {
  const double c2 = std::pow(std::cos(angle / 2), 2);
  const double s2 = std::pow(std::sin(angle / 2), 2);
  RealVector x(2);
  x << c2, s2;
  switch (column) {
    case 0: return entropy_bits(x);
    case 1: return 2 * std::abs(std::cos(angle / 2) * std::sin(angle / 2));
    case 2: return std::sqrt(std::max(0.0, 1 - std::max(c2, s2)));
  }
  throw Error(ErrorKind::BadParams, "the closed-form table has three columns");
}

Table1 cmd_table1(const BlochVector& b) {
  Table1 t;
  t.state = b;
  const std::array<CoherenceMeasure, 3> fs = {entropy_measure(), l1_measure(), fidelity_measure()};
  for (std::size_t r = 0; r < kQubitDecompositions.size(); ++r) {
    const QubitDecomposition d = qubit_decomposition(kQubitDecompositions[r], b);
    t.degenerate[r] = d.degenerate;
    for (std::size_t c = 0; c < fs.size(); ++c) {
      t.closed[r][c] = d.coherent_weight * table1_closed_form(static_cast<int>(c), d.angle);
      t.ensemble[r][c] = average_coherence(fs[c], d.ensemble);
      t.max_cross_error = std::max(t.max_cross_error, std::abs(t.closed[r][c] - t.ensemble[r][c]));
    }
  }
  t.chain_ok = true;
  t.chain_strict = true;
  for (std::size_t c = 0; c < fs.size(); ++c) {
    const double big_m = t.ensemble[0][c], s = t.ensemble[1][c], m1 = t.ensemble[2][c], m2 = t.ensemble[3][c];
    t.chain_ok = t.chain_ok && m1 <= m2 + kOrderTolerance && m2 <= s + kOrderTolerance && s <= big_m + kOrderTolerance;
    t.chain_strict = t.chain_strict && s - m2 > kOrderTolerance;
  }
  t.chain_strict = t.chain_strict && t.chain_ok;
  return t;
}

DensityMatrix intro_state() {
  ComplexMatrix m(2, 2);
  m << 2.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3;
  return validate_density(m);
}

IntroReport cmd_intro_example() {
  const DensityMatrix rho = intro_state();
  const double r5 = std::sqrt(5.0);
  auto state = [](double a0, double a1) {
    ComplexVector v(2);
    v << a0, a1;
    return PureState::normalized(v);
  };
  const Ensemble first({{2.0 / 3, state(1 / std::sqrt(2.0), 1 / std::sqrt(2.0))}, {1.0 / 3, state(1, 0)}});
  const Ensemble second({{(3 + r5) / 6, state((-1 + r5) / std::sqrt(10 - 2 * r5), std::sqrt(2 / (5 - r5)))},
                         {(3 - r5) / 6, state(-(1 + r5) / std::sqrt(10 + 2 * r5), std::sqrt(2 / (5 + r5)))}});

  const auto entropy = entropy_measure();
  const auto l1 = l1_measure();
  auto describe = [&](std::string name, const Ensemble& e, bool spectral) {
    IntroReport::Decomposition d{std::move(name), e, 0.0, false, {}, true, 0.0, 0.0};
    d.reconstruction_error = max_abs(rho.matrix() - outer_sum(e));
    d.reconstructs = d.reconstruction_error <= 1e-12;
    if (spectral) {
      for (const auto& c : e) {
        const ComplexVector& psi = c.state.amplitudes();
        const double residual = (rho.matrix() * psi - c.weight * psi).norm();
        d.eigen_residuals.push_back(residual);
        d.eigenpairs_ok = d.eigenpairs_ok && residual <= 1e-12;
      }
    }
    d.avg_entropy = average_coherence(entropy, e);
    d.avg_l1 = average_coherence(l1, e);
    return d;
  };

  IntroReport report{describe("D1", first, false), describe("D2", second, true)};
  report.entropy_claim_holds = report.first.avg_entropy > report.second.avg_entropy;
  report.l1_claim_holds = report.first.avg_l1 < report.second.avg_l1;
  return report;
}

double SweepGrid::n(int i) const { return static_cast<double>(i) / (n_points - 1); }
double SweepGrid::theta(int j) const { return j * (kPi / 2) / (theta_points - 1); }
double SweepGrid::phi(int k) const { return 2 * kPi * k / phi_points; }
double SweepGrid::theta_step() const { return (kPi / 2) / (theta_points - 1); }

SweepResult cmd_sweep(const std::vector<CoherenceMeasure>& measures, const SweepGrid& grid) {
  if (grid.n_points < 2 || grid.theta_points < 2 || grid.phi_points < 2)
    throw Error(ErrorKind::BadParams, "grid resolutions must be at least 2");
  for (const auto& f : measures)
    if (!f.supports(2)) throw Error(ErrorKind::DimensionMismatch, "measure '" + f.name() + "' cannot act on qubits");

  SweepResult out;
  for (const auto& f : measures) out.measures.push_back(f.name());
  out.rows.reserve(measures.size() * static_cast<std::size_t>(grid.n_points * grid.theta_points * grid.phi_points));
  SweepSummary& sum = out.summary;
  const double step = grid.theta_step();

  for (std::size_t m = 0; m < measures.size(); ++m) {
    const auto& f = measures[m];
    const int k_param = f.name().rfind("power", 0) == 0 && !f.params().empty() ? static_cast<int>(f.params()[0]) : 0;
    for (int i = 0; i < grid.n_points; ++i)
      for (int j = 0; j < grid.theta_points; ++j)
        for (int k = 0; k < grid.phi_points; ++k) {
          SweepRow row{m, i, j, k, BlochVector::make(grid.n(i), grid.theta(j), grid.phi(k)), {}, false};
          row.record = order_check(f, row.state);
          const double s = row.record.value(QubitDecompositionKind::S);
          const double big_m = row.record.value(QubitDecompositionKind::M);
          row.spectral_equals_max = std::abs(s - big_m) <= kOrderTolerance;

          ++sum.evaluations;
          if (!row.record.relations_8_ok) ++sum.violations_8;
          if (!row.record.relations_9_ok) ++sum.violations_9;
          if (!row.record.strict_9) ++sum.non_strict_9;
          const bool on_line = std::abs(row.state.theta - kPi / 2) <= step;
          const bool pure = i == grid.n_points - 1;
          if (row.spectral_equals_max && !on_line && !pure) ++sum.disc_violations;
          if (j == grid.theta_points - 1 && !row.spectral_equals_max) ++sum.disc_misses;

          const double excess = row.record.value(QubitDecompositionKind::M1) - row.record.value(QubitDecompositionKind::M2);
          if (excess > kFlipMargin) sum.flips.push_back({f.name(), k_param, row.state.n, row.state.theta, row.state.phi, excess});
          out.rows.push_back(row);
        }
  }
  return out;
}

std::vector<CoherenceMeasure> random_mixtures(int count, std::uint64_t seed) {
  const auto base = registry_measures();
  std::vector<CoherenceMeasure> out;
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const RealVector w = random_simplex(static_cast<Eigen::Index>(base.size()), rng);
    std::vector<std::pair<double, CoherenceMeasure>> parts;
    for (std::size_t j = 0; j < base.size(); ++j) parts.emplace_back(w(static_cast<Eigen::Index>(j)), base[j]);
    // Round-trip through the name so the CLI and library agree bit for bit.
    out.push_back(parse_measure(mix_measure(parts).name()));
  }
  return out;
}

std::vector<CoherenceMeasure> parse_measure_set(const std::string& list, std::uint64_t seed) {
  std::vector<CoherenceMeasure> out;
  std::vector<std::string> items;
  // Mixture specs contain '+', never ','; split on commas outside "mix:".
  std::string current;
  for (const char ch : list) {
    if (ch == ',') {
      items.push_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  items.push_back(trim(current));
  for (const auto& item : items) {
    if (item.empty()) continue;
    if (item == "registry") {
      for (auto& f : registry_measures()) out.push_back(std::move(f));
    } else if (item.rfind("mixtures:", 0) == 0) {
      for (auto& f : random_mixtures(parse_int(item.substr(9), item), seed)) out.push_back(std::move(f));
    } else if (const auto range = item.find(".."); item.rfind("power:k=", 0) == 0 && range != std::string::npos) {
      const int lo = parse_int(item.substr(8, range - 8), item);
      const int hi = parse_int(item.substr(range + 2), item);
      if (lo < 1 || hi < lo) throw Error(ErrorKind::BadParams, "bad power range '" + item + "'");
      for (int k = lo; k <= hi; ++k) out.push_back(power_measure(k));
    } else {
      out.push_back(parse_measure(item));
    }
  }
  return out;
}

}  // namespace coherence
