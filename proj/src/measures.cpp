#include "coherence/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "coherence/random.hpp"

namespace coherence {

namespace {

RealVector sorted_descending(const RealVector& x) {
  RealVector s = x;
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

std::string format_weight(double w) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& spec) {
  double value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error(ErrorKind::ParseError, "bad number '" + std::string(text) + "' in measure spec '" + spec + "'");
  return value;
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : psi_(std::move(amplitudes)) {
  if (psi_.size() == 0) throw Error(ErrorKind::NotNormalized, "empty state vector");
  const double norm2 = psi_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "sum |psi_i|^2 = " << norm2 << " deviates from 1 by " << std::abs(norm2 - 1.0);
    throw Error(ErrorKind::NotNormalized, msg.str());
  }
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0)) throw Error(ErrorKind::NotNormalized, "cannot normalize a zero vector");
  return PureState(v / norm);
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

CoherenceMeasure::CoherenceMeasure(std::string name, Function f, std::optional<Eigen::Index> required_dim,
                                   std::vector<double> params)
    : name_(std::move(name)), f_(std::move(f)), required_dim_(required_dim), params_(std::move(params)) {}

double CoherenceMeasure::operator()(const RealVector& x) const {
  if (!supports(x.size())) {
    std::ostringstream msg;
    msg << "measure '" << name_ << "' is defined for dimension " << *required_dim_ << ", got " << x.size();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  return f_(x);
}

// The built-ins sort their input first so that permuted arguments produce
// bit-identical results.

double entropy_bits(const RealVector& x) {
  const RealVector s = sorted_descending(x);
  double h = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 0) h -= s(i) * std::log2(s(i));
  return std::max(h, 0.0);
}

double l1_function(const RealVector& x) {
  const RealVector s = sorted_descending(x);
  double sum = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    for (Eigen::Index j = i + 1; j < s.size(); ++j) sum += std::sqrt(std::max(s(i), 0.0) * std::max(s(j), 0.0));
  return 2.0 * sum;
}

double fidelity_function(const RealVector& x) {
  // 1 - max(x) as the sum of the other entries: exact at basis vectors.
  RealVector sorted = x;
  std::sort(sorted.begin(), sorted.end());
  double rest = 0;
  for (Eigen::Index i = 0; i + 1 < sorted.size(); ++i) rest += sorted(i);
  return std::sqrt(std::max(0.0, rest));
}

double power_function(const RealVector& x, int k) {
  const double dev = 2.0 * std::max(x(0), x(1)) - 1.0;
  return 1.0 - std::pow(dev, 2 * k);
}

CoherenceMeasure entropy_measure() { return {"entropy", entropy_bits}; }
CoherenceMeasure l1_measure() { return {"l1", l1_function}; }
CoherenceMeasure fidelity_measure() { return {"fidelity", fidelity_function}; }

CoherenceMeasure power_measure(int k) {
  if (k < 1) throw Error(ErrorKind::BadParams, "power measure needs integer k >= 1, got " + std::to_string(k));
  return {"power:k=" + std::to_string(k), [k](const RealVector& x) { return power_function(x, k); }, 2,
          {static_cast<double>(k)}};
}

CoherenceMeasure mix_measure(const std::vector<std::pair<double, CoherenceMeasure>>& parts) {
  if (parts.empty()) throw Error(ErrorKind::BadParams, "mix needs at least one component");
  double total = 0;
  std::optional<Eigen::Index> dim;
  std::string name = "mix:";
  std::vector<double> weights;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [w, m] = parts[i];
    if (!(w >= 0)) throw Error(ErrorKind::BadParams, "mix weights must be nonnegative");
    if (m.required_dim()) {
      if (dim && *dim != *m.required_dim())
        throw Error(ErrorKind::BadParams, "mix components are defined on different dimensions");
      dim = m.required_dim();
    }
    total += w;
    weights.push_back(w);
    if (i > 0) name += "+";
    name += format_weight(w) + "*" + m.name();
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw Error(ErrorKind::BadParams, "mix weights sum to " + format_weight(total) + ", not 1");
  return {name,
          [parts](const RealVector& x) {
            double value = 0;
            for (const auto& [w, m] : parts) value += w * m(x);
            return value;
          },
          dim, std::move(weights)};
}

CoherenceMeasure make_measure(MeasureKind kind, const MeasureParams& params) {
  switch (kind) {
    case MeasureKind::Entropy: return entropy_measure();
    case MeasureKind::L1: return l1_measure();
    case MeasureKind::Fidelity: return fidelity_measure();
    case MeasureKind::Power: return power_measure(params.k);
    case MeasureKind::Mix: return mix_measure(params.mix);
  }
  throw Error(ErrorKind::BadParams, "unknown measure kind");
}

CoherenceMeasure parse_measure(const std::string& spec) {
  if (spec == "entropy") return entropy_measure();
  if (spec == "l1") return l1_measure();
  if (spec == "fidelity") return fidelity_measure();
  if (spec.rfind("power:k=", 0) == 0) {
    const std::string_view digits = std::string_view(spec).substr(8);
    int k = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || res.ec != std::errc() || res.ptr != digits.data() + digits.size())
      throw Error(ErrorKind::ParseError, "bad exponent in measure spec '" + spec + "'");
    return power_measure(k);
  }
  if (spec.rfind("mix:", 0) == 0) {
    std::vector<std::pair<double, CoherenceMeasure>> parts;
    std::string_view rest = std::string_view(spec).substr(4);
    while (true) {
      const auto plus = rest.find('+');
      const std::string_view term = rest.substr(0, plus);
      const auto star = term.find('*');
      if (star == std::string_view::npos)
        throw Error(ErrorKind::ParseError, "mix term '" + std::string(term) + "' lacks '<weight>*<measure>'");
      const std::string inner(term.substr(star + 1));
      if (inner.rfind("mix:", 0) == 0) throw Error(ErrorKind::ParseError, "nested mix specs are not supported");
      parts.emplace_back(parse_double(term.substr(0, star), spec), parse_measure(inner));
      if (plus == std::string_view::npos) break;
      rest = rest.substr(plus + 1);
    }
    return mix_measure(parts);
  }
  throw Error(ErrorKind::ParseError, "unknown measure spec '" + spec + "'");
}

std::vector<CoherenceMeasure> registry_measures() { return {entropy_measure(), l1_measure(), fidelity_measure()}; }

double pure_coherence(const CoherenceMeasure& f, const PureState& psi) { return f(coherence_vector(psi)); }

double l1_of_density(const DensityMatrix& rho) {
  double sum = 0;
  for (Eigen::Index i = 0; i < rho.dim(); ++i)
    for (Eigen::Index j = 0; j < rho.dim(); ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return sum;
}

bool majorizes(const RealVector& y, const RealVector& x) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "majorization needs vectors of equal length");
  const RealVector xs = sorted_descending(x);
  const RealVector ys = sorted_descending(y);
  double px = 0;
  double py = 0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    px += xs(i);
    py += ys(i);
    if (px > py + 1e-12) return false;
  }
  return true;
}

namespace {

RealVector sample_simplex_point(Eigen::Index d, Rng& rng) {
  RealVector x = random_simplex(d, rng);
  // A quarter of the samples sit on a face of the simplex.
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0 && d > 1) {
    const auto keep = std::uniform_int_distribution<Eigen::Index>(0, d - 1)(rng);
    for (Eigen::Index i = 0; i < d; ++i)
      if (i != keep && std::uniform_int_distribution<int>(0, 1)(rng) == 0) x(i) = 0;
    x /= x.sum();
  }
  return x;
}

}  // namespace

MeasureCheckReport check_measure(const CoherenceMeasure& f, int trials, std::uint64_t seed, Eigen::Index dim) {
  MeasureCheckReport report;
  report.trials = trials;
  auto dim_for = [&](int t) -> Eigen::Index {
    if (f.required_dim()) return *f.required_dim();
    if (dim > 0) return dim;
    return 2 + t % 4;
  };

  std::vector<Eigen::Index> dims;
  for (int t = 0; t < std::min(trials, 4); ++t) dims.push_back(dim_for(t));
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  for (const auto d : dims) {
    RealVector e1 = RealVector::Zero(d);
    e1(0) = 1;
    report.normalization_residual = std::max(report.normalization_residual, std::abs(f(e1)));
  }

  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const Eigen::Index d = dim_for(t);
    const RealVector x = sample_simplex_point(d, rng);
    const RealVector y = sample_simplex_point(d, rng);

    std::vector<Eigen::Index> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    RealVector px(d);
    for (Eigen::Index i = 0; i < d; ++i) px(i) = x(perm[static_cast<std::size_t>(i)]);
    const double fx = f(x);
    const double sym = std::abs(fx - f(px));
    report.worst_symmetry = std::max(report.worst_symmetry, sym);
    if (sym > 1e-12) ++report.symmetry_violations;

    const double fy = f(y);
    const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (const double l : {lambda, 0.5}) {
      const double deficit = l * fx + (1 - l) * fy - f(RealVector(l * x + (1 - l) * y));
      report.worst_concavity = std::max(report.worst_concavity, deficit);
      if (deficit > 1e-10) ++report.concavity_violations;
    }
  }
  return report;
}

}  // namespace coherence
