#include "coherence/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "coherence/experiments.hpp"
#include "coherence/io.hpp"

namespace coherence::cli {

namespace {

using io::Json;

constexpr const char* kCsvVersion = "# coherence-decomp v1";
constexpr double kGapTolerance = 1e-6;
constexpr double kEmitTolerance = 1e-9;

struct Options {
  std::string measure = "l1";
  std::string input;
  std::string bloch;
  std::string x_list = "0.1,0.2,0.3,0.4";
  int alpha_points = 181;
  std::string grid = "50x50x8";
  std::string kind = "optimal";
  int m = 0;
  int restarts = 8;
  std::uint64_t seed = 0;
  std::string out;
  std::string summary;
  std::string format;
};

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0;
    const auto* end = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(item.data(), end, v);
    if (item.empty() || ec != std::errc() || ptr != end)
      throw Error(ErrorKind::ParseError, std::string("bad number '") + item + "' in " + what);
    values.push_back(v);
  }
  return values;
}

BlochVector parse_bloch(const std::string& text) {
  const auto v = parse_reals(text, "--bloch");
  if (v.size() != 2 && v.size() != 3) throw Error(ErrorKind::ParseError, "--bloch expects n,theta[,phi]");
  return BlochVector::make(v[0], v[1], v.size() == 3 ? v[2] : 0.0);
}

SweepGrid parse_grid(const std::string& text) {
  std::array<int, 3> dims{};
  std::stringstream ss(text);
  std::string item;
  std::size_t count = 0;
  while (std::getline(ss, item, 'x')) {
    if (count == 3) break;
    const auto* end = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(item.data(), end, dims[count]);
    if (item.empty() || ec != std::errc() || ptr != end) throw Error(ErrorKind::ParseError, "bad --grid '" + text + "'");
    ++count;
  }
  if (count != 3 || std::getline(ss, item)) throw Error(ErrorKind::ParseError, "--grid expects NxMxK");
  if (*std::min_element(dims.begin(), dims.end()) < 2) throw Error(ErrorKind::BadParams, "grid resolutions must be at least 2");
  return {dims[0], dims[1], dims[2]};
}

DensityMatrix input_state(const Options& o) {
  if (!o.input.empty() && !o.bloch.empty()) throw Error(ErrorKind::ParseError, "give either --input or --bloch, not both");
  if (!o.input.empty()) return io::read_density_file(o.input);
  if (!o.bloch.empty()) return density_from_bloch(parse_bloch(o.bloch));
  throw Error(ErrorKind::ParseError, "this command needs --input FILE or --bloch n,theta,phi");
}

CoherenceMeasure single_measure(const Options& o) { return parse_measure(o.measure); }

std::string csv_bool(bool b) { return b ? "1" : "0"; }

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

// Routes primary output to --out or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// --- commands -------------------------------------------------------------------

int run_bound(const Options& o, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = input_state(o);
  const CoherenceMeasure f = single_measure(o);
  const Eigen::Index m = o.m > 0 ? o.m : default_components(rho);
  const BoundReport report = maximize_average(f, rho, m, o.restarts, o.seed);
  Json j;
  j["measure"] = f.name();
  j["dim"] = rho.dim();
  j["components"] = m;
  j["restarts"] = o.restarts;
  j["seed"] = o.seed;
  j["report"] = io::bound_report_to_json(report);
  j["witness_is_decomposition"] = is_decomposition_of(report.witness, rho, kEmitTolerance);
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  if (report.gap > kGapTolerance) {
    err << "gap " << report.gap << " exceeds " << kGapTolerance << '\n';
    return kPropertyFailure;
  }
  return kSuccess;
}

int run_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = input_state(o);
  const CoherenceMeasure f = single_measure(o);
  std::optional<Ensemble> e;
  const std::string& kind = o.kind;
  if (kind == "optimal") {
    if (rho.dim() == 2) {
      e = optimal_qubit(rho);
    } else {
      const Eigen::Index m = o.m > 0 ? o.m : default_components(rho);
      e = maximize_average(f, rho, m, o.restarts, o.seed).witness;
    }
  } else if (kind == "spectral") {
    e = spectral_ensemble(rho);
  } else if (kind == "random") {
    const Eigen::Index m = o.m > 0 ? o.m : default_components(rho);
    e = random_ensemble(rho, m, o.seed);
  } else if (kind == "M" || kind == "s" || kind == "m1" || kind == "m2") {
    const auto b = bloch_from_density(rho);
    for (const auto k : kQubitDecompositions)
      if (label(k) == kind) e = qubit_decomposition(k, b).ensemble;
  } else {
    throw Error(ErrorKind::ParseError, "unknown --kind '" + kind + "'");
  }

  Json j;
  j["kind"] = kind;
  j["measure"] = f.name();
  j["average"] = average_coherence(f, *e);
  j["msd"] = msd(f, *e);
  j["bound"] = upper_bound(f, rho);
  const bool valid = is_decomposition_of(*e, rho, kEmitTolerance);
  j["is_decomposition"] = valid;
  j["ensemble"] = io::ensemble_to_json(*e);
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  if (!valid) {
    err << "emitted ensemble does not reproduce the input state\n";
    return kPropertyFailure;
  }
  return kSuccess;
}

int run_bloch_order(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.bloch.empty()) throw Error(ErrorKind::ParseError, "bloch-order needs --bloch n,theta,phi");
  const BlochVector b = parse_bloch(o.bloch);
  const CoherenceMeasure f = single_measure(o);
  const OrderingRecord rec = order_check(f, b);
  Json j;
  j["measure"] = f.name();
  j["bloch"] = {{"n", b.n}, {"theta", b.theta}, {"phi", b.phi}};
  j["ordering"] = io::ordering_to_json(rec);
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  if (!rec.relations_8_ok || !rec.relations_9_ok) {
    err << "order relations violated\n";
    return kPropertyFailure;
  }
  return kSuccess;
}

Json fig1_check_json(const Fig1Check& c) {
  return {{"max_error_at_zero", c.max_error_at_zero},   {"max_plateau_error", c.max_plateau_error},
          {"max_msd_endpoint", c.max_msd_endpoint},     {"max_symmetry_error", c.max_symmetry_error},
          {"max_overlap_error", c.max_overlap_error},   {"max_argmax_offset_steps", c.max_argmax_offset},
          {"ok", c.ok()}};
}

int run_fig1(const Options& o, std::ostream& out, std::ostream& err) {
  const auto xs = parse_reals(o.x_list, "--x");
  if (xs.empty()) throw Error(ErrorKind::BadX, "--x needs at least one value");
  const auto rows = cmd_fig1(xs, o.alpha_points);
  const Fig1Check check = check_fig1(rows, o.alpha_points);
  Sink sink(o.out, out);
  std::ostream& os = sink.stream();
  if (o.format == "json") {
    Json list = Json::array();
    for (const auto& r : rows) list.push_back({{"x", r.x}, {"alpha", r.alpha}, {"avg_l1", r.avg_l1}, {"msd", r.msd}});
    write_json(os, {{"rows", std::move(list)}, {"check", fig1_check_json(check)}});
  } else {
    os << kCsvVersion << '\n' << "x,alpha,avg_l1,msd\n";
    for (const auto& r : rows)
      os << format_number(r.x) << ',' << format_number(r.alpha) << ',' << format_number(r.avg_l1) << ','
         << format_number(r.msd) << '\n';
  }
  if (!check.ok()) {
    err << "figure properties failed: " << fig1_check_json(check).dump() << '\n';
    return kPropertyFailure;
  }
  return kSuccess;
}

int run_table1(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.bloch.empty()) throw Error(ErrorKind::ParseError, "table1 needs --bloch n,theta[,phi]");
  const Table1 t = cmd_table1(parse_bloch(o.bloch));
  Sink sink(o.out, out);
  std::ostream& os = sink.stream();
  if (o.format == "json") {
    Json rows = Json::array();
    for (std::size_t r = 0; r < kQubitDecompositions.size(); ++r) {
      Json row;
      row["decomposition"] = std::string(label(kQubitDecompositions[r]));
      row["degenerate"] = t.degenerate[r];
      for (std::size_t c = 0; c < 3; ++c) row[t.measures[c]] = {{"closed_form", t.closed[r][c]}, {"ensemble", t.ensemble[r][c]}};
      rows.push_back(std::move(row));
    }
    write_json(os, {{"bloch", {{"n", t.state.n}, {"theta", t.state.theta}, {"phi", t.state.phi}}},
                    {"rows", std::move(rows)},
                    {"max_cross_error", t.max_cross_error},
                    {"chain_ok", t.chain_ok},
                    {"chain_strict", t.chain_strict}});
  } else {
    os << kCsvVersion << '\n' << "decomposition,measure,closed_form,ensemble,degenerate\n";
    for (std::size_t r = 0; r < kQubitDecompositions.size(); ++r)
      for (std::size_t c = 0; c < 3; ++c)
        os << label(kQubitDecompositions[r]) << ',' << t.measures[c] << ',' << format_number(t.closed[r][c]) << ','
           << format_number(t.ensemble[r][c]) << ',' << csv_bool(t.degenerate[r]) << '\n';
  }
  if (!t.cross_check_ok() || !t.chain_ok) {
    err << "table check failed: max cross error " << t.max_cross_error << ", chain " << (t.chain_ok ? "ok" : "violated")
        << '\n';
    return kPropertyFailure;
  }
  return kSuccess;
}

int run_intro(const Options& o, std::ostream& out, std::ostream&) {
  const IntroReport r = cmd_intro_example();
  auto describe = [](const IntroReport::Decomposition& d) {
    Json j;
    j["name"] = d.name;
    j["ensemble"] = io::ensemble_to_json(d.ensemble);
    j["reconstruction_error"] = d.reconstruction_error;
    j["reconstructs_rho"] = d.reconstructs;
    if (!d.eigen_residuals.empty()) {
      j["eigen_residuals"] = d.eigen_residuals;
      j["eigenpairs_ok"] = d.eigenpairs_ok;
    }
    j["avg_entropy"] = d.avg_entropy;
    j["avg_l1"] = d.avg_l1;
    return j;
  };
  Json j;
  j["rho"] = io::density_to_json(intro_state());
  j["decompositions"] = {describe(r.first), describe(r.second)};
  j["claims"] = {
      {"entropy: D1 > D2", {{"holds", r.entropy_claim_holds}, {"D1", r.first.avg_entropy}, {"D2", r.second.avg_entropy}}},
      {"l1: D1 < D2", {{"holds", r.l1_claim_holds}, {"D1", r.first.avg_l1}, {"D2", r.second.avg_l1}}}};
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  return kSuccess;
}

Json sweep_summary_json(const SweepResult& r, const SweepGrid& g) {
  const SweepSummary& s = r.summary;
  std::map<std::string, std::size_t> by_measure;
  for (const auto& f : s.flips) ++by_measure[f.measure];
  Json flips_by = Json::object();
  for (const auto& name : r.measures)
    if (by_measure.count(name) != 0) flips_by[name] = by_measure[name];
  Json examples = Json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(s.flips.size(), 20); ++i) {
    const auto& f = s.flips[i];
    examples.push_back({{"measure", f.measure}, {"k", f.k}, {"n", f.n}, {"theta", f.theta}, {"phi", f.phi}, {"excess", f.excess}});
  }
  Json j;
  j["grid"] = {g.n_points, g.theta_points, g.phi_points};
  j["measures"] = r.measures;
  j["evaluations"] = s.evaluations;
  j["violations_8"] = s.violations_8;
  j["violations_9"] = s.violations_9;
  j["non_strict_9"] = s.non_strict_9;
  j["disc_violations"] = s.disc_violations;
  j["disc_misses"] = s.disc_misses;
  j["m1_gt_m2_count"] = s.flips.size();
  j["m1_gt_m2_by_measure"] = std::move(flips_by);
  j["m1_gt_m2_examples"] = std::move(examples);
  return j;
}

int run_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const SweepGrid grid = parse_grid(o.grid);
  const auto measures = parse_measure_set(o.measure, o.seed);
  const SweepResult r = cmd_sweep(measures, grid);
  const Json summary = sweep_summary_json(r, grid);

  if (o.format == "json") {
    Sink sink(o.out, out);
    write_json(sink.stream(), summary);
  } else {
    Sink sink(o.out, out);
    std::ostream& os = sink.stream();
    os << kCsvVersion << '\n' << "measure,n,theta,phi,M,s,m1,m2,rel8,rel9,strict9,m1_le_m2,s_eq_M\n";
    for (const auto& row : r.rows) {
      os << r.measures[row.measure] << ',' << format_number(row.state.n) << ',' << format_number(row.state.theta) << ','
         << format_number(row.state.phi);
      for (const double v : row.record.values) os << ',' << format_number(v);
      os << ',' << csv_bool(row.record.relations_8_ok) << ',' << csv_bool(row.record.relations_9_ok) << ','
         << csv_bool(row.record.strict_9) << ',' << csv_bool(row.record.m1_le_m2) << ','
         << csv_bool(row.spectral_equals_max) << '\n';
    }
    if (!o.summary.empty()) {
      Sink summary_sink(o.summary, out);
      write_json(summary_sink.stream(), summary);
    } else if (!o.out.empty()) {
      write_json(out, summary);
    } else {
      write_json(err, summary);
    }
  }
  if (r.summary.violations_8 + r.summary.violations_9 > 0) {
    err << "order relations violated at " << r.summary.violations_8 + r.summary.violations_9 << " points\n";
    return kPropertyFailure;
  }
  return kSuccess;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0) return "0";  // folds -0
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average coherence of pure state decompositions", "coherence-decomp"};
  app.require_subcommand(1);
  Options o;

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "density matrix JSON file");
    sub->add_option("--bloch", o.bloch, "qubit state n,theta,phi (radians)");
  };
  auto add_common = [&](CLI::App* sub, const std::vector<std::string>& formats) {
    sub->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  };

  auto* bound = app.add_subcommand("bound", "numerically maximize the average coherence and compare with the bound");
  auto* decompose = app.add_subcommand("decompose", "emit a pure state decomposition");
  auto* order = app.add_subcommand("bloch-order", "order relations of the four qubit decompositions");
  auto* fig1 = app.add_subcommand("fig1", "average l1 coherence and MSD of the rotation family");
  auto* table1 = app.add_subcommand("table1", "closed-form average coherences of the four qubit decompositions");
  auto* intro = app.add_subcommand("intro-example", "compare two decompositions of a reference qubit state");
  auto* sweep = app.add_subcommand("sweep", "order relations over an (n, theta, phi) grid");

  for (auto* sub : {bound, decompose, order}) {
    add_state(sub);
    add_common(sub, {"json"});
  }
  for (auto* sub : {bound, decompose}) {
    sub->add_option("--m", o.m, "number of components (default d^2)");
    sub->add_option("--restarts", o.restarts, "optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
  }
  for (auto* sub : {bound, decompose, order}) sub->add_option("--measure", o.measure, "measure spec")->capture_default_str();
  decompose->add_option("--kind", o.kind, "optimal, spectral, random, M, s, m1 or m2")->capture_default_str();

  fig1->add_option("--x", o.x_list, "comma-separated x values in (0, 1/2]")->capture_default_str();
  fig1->add_option("--alpha-points", o.alpha_points, "alpha grid size")->capture_default_str()->check(CLI::Range(2, 1000000));
  add_common(fig1, {"csv", "json"});

  table1->add_option("--bloch", o.bloch, "qubit state n,theta[,phi] (radians)");
  add_common(table1, {"csv", "json"});

  add_common(intro, {"json"});

  sweep->add_option("--measure", o.measure,
                    "comma-separated measures; also registry, mixtures:N, power:k=A..B")
      ->default_str("registry");
  sweep->add_option("--grid", o.grid, "n x theta x phi resolutions")->capture_default_str();
  sweep->add_option("--summary", o.summary, "write the summary JSON here");
  add_common(sweep, {"csv", "json"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (bound->parsed()) return run_bound(o, out, err);
    if (decompose->parsed()) return run_decompose(o, out, err);
    if (order->parsed()) return run_bloch_order(o, out, err);
    if (fig1->parsed()) return run_fig1(o, out, err);
    if (table1->parsed()) return run_table1(o, out, err);
    if (intro->parsed()) return run_intro(o, out, err);
    if (sweep->parsed()) {
      if (!sweep->count("--measure")) o.measure = "registry";
      return run_sweep(o, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace coherence::cli
