#include "nuqft/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace nuqft::io {

json grid_to_json(const chebfact::SampleGrid& g) {
  json j;
  j["n"] = g.n;
  j["t"] = std::vector<double>(g.t.data(), g.t.data() + g.t.size());
  return j;
}

chebfact::SampleGrid grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("t")) throw std::invalid_argument("grid JSON needs n and t");
  const int n = j.at("n").get<int>();
  const auto t = j.at("t").get<std::vector<double>>();
  return chebfact::SampleGrid::from_points(n, Eigen::Map<const RVector>(t.data(), static_cast<Eigen::Index>(t.size())));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

chebfact::SampleGrid read_grid(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return grid_from_json(j);
}

CVector read_signal_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Complex> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_of("0123456789") == std::string::npos) continue;  // header
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument(path + ": expected re,im on line " + std::to_string(lineno));
    try {
      size_t used = 0;
      const double re = std::stod(line.substr(0, comma), &used);
      const double im = std::stod(line.substr(comma + 1));
      vals.emplace_back(re, im);
    } catch (const std::exception&) {
      throw std::invalid_argument(path + ": bad number on line " + std::to_string(lineno));
    }
  }
  CVector x(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) x(static_cast<Eigen::Index>(i)) = vals[i];
  return x;
}

std::string signal_to_csv(const CVector& x) {
  std::ostringstream os;
  os << std::setprecision(17) << "re,im\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << x(i).real() << "," << x(i).imag() << "\n";
  return os.str();
}

namespace {
json cvec(const CVector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}
CVector cvec_from(const json& j) {
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw std::invalid_argument("complex vector parts differ in length");
  CVector v(static_cast<Eigen::Index>(re.size()));
  for (size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  return v;
}
json counts(const std::map<std::string, long long>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}
}  // namespace

json plan_to_json(const chebfact::LowRankPlan& p) {
  json j;
  j["K"] = p.K;
  j["gamma"] = p.gamma;
  j["alpha"] = json::array();
  j["u"] = json::array();
  j["v"] = json::array();
  for (int r = 0; r < p.K; ++r) {
    j["alpha"].push_back(cvec(p.alpha.col(r)));
    j["u"].push_back(cvec(p.u.col(r)));
    const RVector vr = p.v.col(r);
    j["v"].push_back(std::vector<double>(vr.data(), vr.data() + vr.size()));
  }
  j["alpha_row_norms"] = std::vector<double>(p.alpha_row_norms.data(), p.alpha_row_norms.data() + p.K);
  return j;
}

chebfact::LowRankPlan plan_from_json(const json& j) {
  chebfact::LowRankPlan p;
  p.K = j.at("K").get<int>();
  p.gamma = j.at("gamma").get<double>();
  const auto& a = j.at("alpha");
  const auto& u = j.at("u");
  const auto& v = j.at("v");
  if (static_cast<int>(a.size()) != p.K || static_cast<int>(u.size()) != p.K || static_cast<int>(v.size()) != p.K)
    throw std::invalid_argument("plan JSON: rank mismatch");
  const auto N = static_cast<Eigen::Index>(v[0].size());
  p.alpha.resize(p.K, p.K);
  p.u.resize(N, p.K);
  p.v.resize(N, p.K);
  for (int r = 0; r < p.K; ++r) {
    p.alpha.col(r) = cvec_from(a[r]);
    p.u.col(r) = cvec_from(u[r]);
    const auto vr = v[r].get<std::vector<double>>();
    p.v.col(r) = Eigen::Map<const RVector>(vr.data(), N);
  }
  const auto norms = j.at("alpha_row_norms").get<std::vector<double>>();
  p.alpha_row_norms = Eigen::Map<const RVector>(norms.data(), static_cast<Eigen::Index>(norms.size()));
  return p;
}

json block_summary(const blockenc::BlockEncoding& b) {
  return {{"alpha", b.alpha}, {"ancillas", b.ancillas}, {"err", b.err}, {"label", b.label},
          {"norm_of_block", b.block_norm()}};
}

json params_to_json(const analysis::ParamChoice& pc) {
  return {{"epsilon", pc.epsilon},
          {"K", pc.K},
          {"m", pc.m},
          {"p", pc.p},
          {"kappa", pc.kappa},
          {"kappa_clamped", pc.kappa_clamped},
          {"alpha_prime", pc.alpha_prime},
          {"c_max", pc.c_max},
          {"truncation_error_max", pc.truncation_error},
          {"K_asymptotic", pc.K_asymptotic},
          {"m_raised_for_rounding", pc.m_raised_for_rounding},
          {"rule", pc.rule == analysis::ParamRule::proof ? "proof" : "statement"}};
}

json report_to_json(const analysis::VerificationReport& r) {
  return {{"params", params_to_json(r.params)},
          {"measured_error", r.measured_error},
          {"measured_error_svd", r.measured_error_svd},
          {"truncation_bound", r.truncation_bound},
          {"block_bound", r.block_bound},
          {"composed_err", r.composed_err},
          {"bound", r.bound},
          {"alpha_eff", r.alpha_eff},
          {"alpha_uniform", r.alpha_uniform},
          {"ancillas", r.ancillas},
          {"shared_ancillas", r.shared_ancillas},
          {"oracle_consistent", r.oracle_consistent},
          {"gate_counts", counts(r.gate_counts)},
          {"oracle_calls", counts(r.oracle_calls)},
          {"depth", r.depth},
          {"pass", r.pass},
          {"within_bound", r.within_bound},
          {"budget_within_epsilon", r.budget_within_epsilon},
          {"normalization", "unitary"}};
}

json lemmas_to_json(const analysis::LemmaTables& t) {
  json rows = json::array();
  for (const auto& e : t.rows)
    rows.push_back({{"j", e.j},
                    {"q", e.q},
                    {"exp_err", e.exp_err},
                    {"exp_bound", e.exp_bound},
                    {"x_err", e.x_err},
                    {"x_bound", e.x_bound},
                    {"y_err", e.y_err},
                    {"y_bound", e.y_bound}});
  return {{"m", t.m},           {"p", t.p},
          {"K", t.K},           {"oracle_consistent", t.oracle_consistent},
          {"kappa_clamped", t.kappa_clamped}, {"all_within", t.all_within()},
          {"rows", rows}};
}

json counts_to_json(const analysis::CircuitCounts& c) {
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return {{"name", c.name},
          {"params", params},
          {"emitted", counts(c.emitted)},
          {"decomposed", counts(c.decomposed)},
          {"oracle_calls", counts(c.oracle_calls)},
          {"controlled_rotations", c.controlled_rotations},
          {"depth", c.depth},
          {"qubits", c.qubits}};
}

json fit_to_json(const analysis::LinearFit& f) {
  json coeffs = json::object();
  for (size_t i = 0; i < f.features.size(); ++i) coeffs[f.features[i]] = f.coefficients(static_cast<Eigen::Index>(i));
  return {{"coefficients", coeffs}, {"max_relative_residual", f.max_relative_residual}};
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed for " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename onto " + path);
  }
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool log_y) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << H / 2 << ")\" text-anchor=\"middle\">"
     << ylabel << (log_y ? " (log10)" : "") << "</text>\n";
  os << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-size=\"10\">" << y0 << "</text>\n";
  os << "<text x=\"" << L - 6 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << y1 << "</text>\n";
  os << "<text x=\"" << L << "\" y=\"" << H - B + 14 << "\" font-size=\"10\">" << x0 << "</text>\n";
  os << "<text x=\"" << W - R << "\" y=\"" << H - B + 14 << "\" text-anchor=\"end\" font-size=\"10\">" << x1 << "</text>\n";
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* col = colors[si % 5];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) os << px(s.x[i]) << "," << py(s.y[i]) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (si + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
       << col << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace nuqft::io
