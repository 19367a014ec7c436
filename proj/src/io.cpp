#include "coherence/io.hpp"

#include <fstream>
#include <sstream>

namespace coherence::io {

namespace {

Json real_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_list(const Eigen::VectorXd& v) {
  Json list = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) list.push_back(v(i));
  return list;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a number");
  return j.get<double>();
}

Eigen::Index dimension(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) throw Error(ErrorKind::ParseError, "'dim' must be a positive integer");
  return static_cast<Eigen::Index>(d.get<long long>());
}

Eigen::VectorXd read_list(const Json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    std::ostringstream msg;
    msg << "'" << what << "' must be an array of " << n << " numbers";
    throw Error(ErrorKind::ParseError, msg.str());
  }
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = number(j[static_cast<std::size_t>(i)], what);
  return v;
}

}  // namespace

Json density_to_json(const DensityMatrix& rho) {
  Json j;
  j["dim"] = rho.dim();
  j["re"] = real_rows(rho.matrix().real());
  j["im"] = real_rows(rho.matrix().imag());
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  const Eigen::Index d = dimension(j);
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != d ||
      static_cast<Eigen::Index>(im.size()) != d)
    throw Error(ErrorKind::ParseError, "'re' and 'im' must each hold dim rows");
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto r = read_list(re[static_cast<std::size_t>(i)], d, "re");
    const auto c = read_list(im[static_cast<std::size_t>(i)], d, "im");
    for (Eigen::Index k = 0; k < d; ++k) m(i, k) = {r(k), c(k)};
  }
  return validate_density(m, kReadTolerance);
}

Json ensemble_to_json(const Ensemble& ensemble) {
  Json j;
  j["dim"] = ensemble.dim();
  Json comps = Json::array();
  for (const auto& c : ensemble) {
    Json item;
    item["p"] = c.weight;
    item["re"] = real_list(c.state.amplitudes().real());
    item["im"] = real_list(c.state.amplitudes().imag());
    comps.push_back(std::move(item));
  }
  j["components"] = std::move(comps);
  return j;
}

Ensemble ensemble_from_json(const Json& j) {
  const Eigen::Index d = dimension(j);
  const Json& comps = field(j, "components");
  if (!comps.is_array() || comps.empty()) throw Error(ErrorKind::ParseError, "'components' must be a non-empty array");
  std::vector<Component> out;
  double total = 0;
  for (const auto& item : comps) {
    const double p = number(field(item, "p"), "p");
    const auto re = read_list(field(item, "re"), d, "re");
    const auto im = read_list(field(item, "im"), d, "im");
    ComplexVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = {re(i), im(i)};
    if (std::abs(v.squaredNorm() - 1.0) > kReadTolerance)
      throw Error(ErrorKind::NotNormalized, "ensemble member is not normalized");
    out.push_back({p, PureState::normalized(v)});
    total += p;
  }
  if (std::abs(total - 1.0) > kReadTolerance) throw Error(ErrorKind::InvalidEnsemble, "weights do not sum to 1");
  for (auto& c : out) c.weight /= total;
  return Ensemble(std::move(out));
}

Json bound_report_to_json(const BoundReport& report) {
  Json j;
  j["bound"] = report.bound;
  j["achieved"] = report.achieved;
  j["gap"] = report.gap;
  j["equality_condition_met"] = report.equality_condition_met;
  j["witness"] = ensemble_to_json(report.witness);
  return j;
}

Json ordering_to_json(const OrderingRecord& record) {
  Json values;
  for (const auto kind : kQubitDecompositions) values[std::string(label(kind))] = record.value(kind);
  Json j;
  j["values"] = std::move(values);
  j["relations_8_ok"] = record.relations_8_ok;
  j["relations_9_ok"] = record.relations_9_ok;
  j["strict_margin_9"] = record.strict_margin_9;
  j["strict_9"] = record.strict_9;
  j["m1_le_m2"] = record.m1_le_m2;
  return j;
}

DensityMatrix read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, "'" + path + "': " + e.what());
  }
  return density_from_json(j);
}

}  // namespace coherence::io
