// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "coherence/cli.hpp"
#include "coherence/experiments.hpp"
#include "coherence/io.hpp"
#include "coherence/random.hpp"

using namespace coherence;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

DensityMatrix diagonal_state(const RealVector& p) {
  return validate_density(ComplexMatrix(p.cast<std::complex<double>>().asDiagonal()));
}

Verdict universal_bound() {
  std::size_t pairs = 0, violations = 0;
  double worst = -1;
  const auto fs = registry_measures();
  for (std::size_t m = 0; m < fs.size(); ++m)
    for (Eigen::Index d = 2; d <= 4; ++d)
      for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(derive_seed(derive_seed(100 + m, static_cast<std::uint64_t>(d)), t));
        const Eigen::Index rank = 1 + static_cast<Eigen::Index>(t % static_cast<std::uint64_t>(d));
        const auto rho = random_density(d, rng, rank);
        const Eigen::Index components = numerical_rank(eigh(rho)) + static_cast<Eigen::Index>(t % 5);
        const auto e = random_ensemble(rho, components, rng());
        const double excess = average_coherence(fs[m], e) - upper_bound(fs[m], rho);
        worst = std::max(worst, excess);
        ++pairs;
        if (excess > 1e-9) ++violations;
      }
  return {violations == 0, fmt("%zu pairs, %zu violations, max(avg - bound) = %.3g", pairs, violations, worst)};
}

Verdict optimizer_saturation() {
  const auto start = std::chrono::steady_clock::now();
  const auto fs = registry_measures();
  std::size_t runs = 0, misses = 0, qubit_mismatch = 0;
  double worst_gap = 0, worst_qubit = 0;
  for (Eigen::Index d = 2; d <= 3; ++d)
    for (std::uint64_t t = 0; t < 100; ++t) {
      Rng rng(derive_seed(200 + static_cast<std::uint64_t>(d), t));
      const auto rho = random_density(d, rng);
      for (std::size_t m = 0; m < fs.size(); ++m) {
        const auto r = maximize_average(fs[m], rho, default_components(rho), 4, derive_seed(t, m));
        ++runs;
        worst_gap = std::max(worst_gap, r.gap);
        if (r.gap > 1e-6 || !is_decomposition_of(r.witness, rho, 1e-9)) ++misses;
        if (d == 2) {
          const double diff = std::abs(r.achieved - average_coherence(fs[m], optimal_qubit(rho)));
          worst_qubit = std::max(worst_qubit, diff);
          if (diff > 1e-10) ++qubit_mismatch;
        }
      }
    }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {misses == 0 && qubit_mismatch == 0 && seconds <= 120,
          fmt("%zu runs, worst gap %.3g, %zu above 1e-6; qubit closed form max diff %.3g; %.1f s", runs, worst_gap, misses,
              worst_qubit, seconds)};
}

Verdict example_constructions() {
  std::size_t states = 0, failures = 0;
  double worst = 0;
  const auto fs = registry_measures();
  auto check = [&](const Ensemble& e, const DensityMatrix& rho) {
    ++states;
    bool ok = equality_condition(e, rho, 1e-10);
    for (const auto& f : fs) {
      const double diff = std::abs(average_coherence(f, e) - upper_bound(f, rho));
      worst = std::max(worst, diff);
      ok = ok && diff <= 1e-10;
    }
    if (!ok) ++failures;
  };
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(300, t));
    const auto rho = random_density(2, rng);
    check(optimal_qubit(rho), rho);
  }
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(301, t));
    const auto p = random_simplex(static_cast<Eigen::Index>(2 + t % 4), rng);
    check(optimal_incoherent(p), diagonal_state(p));
  }
  return {failures == 0, fmt("%zu states, %zu failures, max |avg - bound| = %.3g", states, failures, worst)};
}

Verdict fig1_reproduction() {
  const auto rows = cmd_fig1({0.1, 0.2, 0.3, 0.4}, 181);
  const auto c = check_fig1(rows, 181);
  const double tol = 1e-9;
  const bool a = c.max_error_at_zero <= tol, b = c.max_plateau_error <= tol, cc = c.max_argmax_offset <= 1.0,
             d = c.max_msd_endpoint <= tol, e = c.max_symmetry_error <= tol;
  return {a && b && cc && d && e && c.max_overlap_error <= tol,
          fmt("(a) %.2g (b) %.2g (c) %.2f steps (d) %.2g (e) %.2g; overlap %.2g", c.max_error_at_zero, c.max_plateau_error,
              c.max_argmax_offset, c.max_msd_endpoint, c.max_symmetry_error, c.max_overlap_error)};
}

const SweepResult& order_sweep() {
  static const SweepResult result = [] {
    auto measures = registry_measures();
    for (auto& f : random_mixtures(20, 1)) measures.push_back(std::move(f));
    return cmd_sweep(measures, SweepGrid{50, 50, 8});
  }();
  return result;
}

Verdict order_relations() {
  const auto& s = order_sweep().summary;
  return {s.evaluations == 23 * 50 * 50 * 8 && s.violations_8 == 0 && s.violations_9 == 0,
          fmt("%zu evaluations over 23 measures, upper-chain violations %zu, lower-chain violations %zu (non-strict points %zu)",
              s.evaluations, s.violations_8, s.violations_9, s.non_strict_9)};
}

Verdict spectral_disc() {
  const auto& s = order_sweep().summary;
  return {s.disc_violations == 0 && s.disc_misses == 0,
          fmt("equality off |theta - pi/2| <= step: %zu; missing on theta = pi/2: %zu (pure states excluded)",
              s.disc_violations, s.disc_misses)};
}

Verdict power_counterexample() {
  std::vector<CoherenceMeasure> powers;
  for (int k = 1; k <= 30; ++k) powers.push_back(power_measure(k));
  const auto r = cmd_sweep(powers, SweepGrid{50, 50, 8});
  const auto fs = registry_measures();
  std::size_t misordered = 0;
  int smallest_k = 0;
  double largest = 0;
  for (const auto& flip : r.summary.flips) {
    if (smallest_k == 0 || flip.k < smallest_k) smallest_k = flip.k;
    largest = std::max(largest, flip.excess);
    const auto b = BlochVector::make(flip.n, flip.theta, flip.phi);
    for (const auto& f : fs) {
      const auto rec = order_check(f, b);
      const double m1 = rec.value(QubitDecompositionKind::M1), m2 = rec.value(QubitDecompositionKind::M2);
      const double s = rec.value(QubitDecompositionKind::S), big_m = rec.value(QubitDecompositionKind::M);
      if (!(m1 <= m2 + kOrderTolerance && s - m2 > kOrderTolerance && s <= big_m + kOrderTolerance)) ++misordered;
    }
  }
  return {!r.summary.flips.empty() && misordered == 0,
          fmt("%zu flip points (smallest k = %d, largest excess %.3g); %zu registry misorderings at those points",
              r.summary.flips.size(), smallest_k, largest, misordered)};
}

Verdict intro_report() {
  std::ostringstream out, err;
  const int code = cli::run({"intro-example"}, out, err);
  const auto j = io::Json::parse(out.str());
  const auto& d = j["decompositions"];
  const bool built = d.size() == 2 && d[0]["ensemble"]["components"].size() == 2 && d[1]["ensemble"]["components"].size() == 2;
  const double err1 = d[0]["reconstruction_error"].get<double>();
  const bool computed = d[0]["avg_entropy"].is_number() && d[1]["avg_entropy"].is_number() && d[0]["avg_l1"].is_number() &&
                        d[1]["avg_l1"].is_number();
  const auto& claims = j["claims"];
  const bool flagged = claims["entropy: D1 > D2"]["holds"].is_boolean() && claims["l1: D1 < D2"]["holds"].is_boolean();
  return {code == 0 && built && err1 <= 1e-12 && computed && flagged,
          fmt("D1 error %.2g; entropy claim %s (%.6f vs %.6f); l1 claim %s (%.6f vs %.6f); D2 error %.3g", err1,
              claims["entropy: D1 > D2"]["holds"].get<bool>() ? "holds" : "does not hold", d[0]["avg_entropy"].get<double>(),
              d[1]["avg_entropy"].get<double>(), claims["l1: D1 < D2"]["holds"].get<bool>() ? "holds" : "does not hold",
              d[0]["avg_l1"].get<double>(), d[1]["avg_l1"].get<double>(), d[1]["reconstruction_error"].get<double>())};
}

Verdict determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"fig1"},
      {"fig1", "--format", "json"},
      {"table1", "--bloch", "0.6,1.0471975511965976"},
      {"intro-example"},
      {"bloch-order", "--bloch", "0.6,1.0471975511965976,0.3", "--measure", "entropy"},
      {"decompose", "--bloch", "0.8,2.2,4", "--kind", "random", "--m", "4", "--seed", "11"},
      {"bound", "--bloch", "0.8,2.2,4", "--measure", "l1", "--seed", "7"},
      {"sweep", "--measure", "registry,mixtures:20", "--grid", "50x50x8", "--seed", "1"},
      {"sweep", "--measure", "power:k=1..30", "--grid", "50x50x8", "--format", "json"},
  };
  std::size_t differing = 0, bytes = 0;
  for (const auto& c : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int a = cli::run(c, out1, err1);
    const int b = cli::run(c, out2, err2);
    bytes += out1.str().size();
    if (a != b || out1.str() != out2.str() || out1.str().empty()) ++differing;
  }
  return {differing == 0, fmt("%zu commands, %zu bytes compared, %zu differ", commands.size(), bytes, differing)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 universal upper bound", universal_bound},
      {"2 bound saturation d=2,3", optimizer_saturation},
      {"3 explicit optimal constructions", example_constructions},
      {"4 rotation family curves", fig1_reproduction},
      {"5 qubit order relations", order_relations},
      {"6 Spectral-optimality disc", spectral_disc},
      {"7 power-measure counterexample", power_counterexample},
      {"8 two-decomposition report", intro_report},
      {"9 Determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
