#include "nuqft/cli.hpp"

#include "nuqft/analysis.hpp"
#include "nuqft/constructions.hpp"
#include "nuqft/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nuqft::cli {

using io::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// uniform double in [0,1) independent of the standard library's distributions
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad --n value: " + s);
  }
}

struct Sink {
  std::string path;
  std::ostream& out;
  void write(const std::string& content) const {
    if (path.empty())
      out << content;
    else
      io::atomic_write(path, content);
  }
};

json header(const std::string& command, std::uint64_t seed) {
  return {{"schema", io::report_schema}, {"command", command}, {"seed", seed}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

GridMode parse_mode(const std::string& s) {
  if (s == "uniform") return GridMode::uniform;
  if (s == "jitter") return GridMode::jitter;
  if (s == "random") return GridMode::random;
  if (s == "clustered") return GridMode::clustered;
  throw std::invalid_argument("unknown grid mode " + s);
}

chebfact::SampleGrid generate_grid(GridMode mode, int n, double gamma, std::uint64_t seed) {
  if (n < 1 || n > 20) throw std::invalid_argument("gen-grid: n out of range");
  const int N = 1 << n;
  std::mt19937_64 rng(seed);
  RVector t(N);
  switch (mode) {
    case GridMode::uniform:
      for (int j = 0; j < N; ++j) t(j) = double(j) / N;
      break;
    case GridMode::jitter:
      if (!(gamma >= 0.0 && gamma <= 0.5)) throw std::invalid_argument("gen-grid: gamma must lie in [0, 1/2]");
      for (int j = 0; j < N; ++j) {
        double u = 2.0 * unit(rng) - 1.0;
        if (j == 0) u = std::abs(u);  // stay inside [0,1)
        t(j) = (j + gamma * u) / N;
      }
      break;
    case GridMode::random:
      for (int j = 0; j < N; ++j) t(j) = unit(rng);
      std::sort(t.begin(), t.end());
      break;
    case GridMode::clustered: {
      const double centers[2] = {unit(rng), unit(rng)};
      for (int j = 0; j < N; ++j) {
        double v = centers[j % 2] + 0.15 * (unit(rng) - 0.5);
        v -= std::floor(v);
        t(j) = v < 1.0 ? v : 0.0;
      }
      std::sort(t.begin(), t.end());
      break;
    }
  }
  return chebfact::SampleGrid::from_points(n, t);
}

namespace {

int cmd_gen_grid(const std::string& mode, int n, double gamma, std::uint64_t seed, const Sink& sink) {
  const auto g = generate_grid(parse_mode(mode), n, gamma, seed);
  sink.write(io::grid_to_json(g).dump(2) + "\n");
  return 0;
}

int cmd_transform(const std::string& type, const std::string& grid_path, const std::string& signal_path,
                  double epsilon, std::optional<int> K, bool raw, const Sink& sink, std::ostream& out) {
  if (type != "I" && type != "II") throw UsageError("--type must be I or II");
  const auto grid = io::read_grid(grid_path);
  const CVector x = signal_path.empty() ? CVector(CVector::Zero(grid.N())) : io::read_signal_csv(signal_path);
  if (x.size() != grid.N()) throw std::invalid_argument("signal length does not match 2^n");
  const int rank = K ? *K : chebfact::smallest_rank(grid, epsilon / (2.0 * std::sqrt(double(grid.N()) * grid.c_max)));
  if (rank < 1) throw std::invalid_argument("K must be >= 1");
  const auto plan = chebfact::build_plan(grid, rank);
  const auto norm = raw ? Normalization::raw : Normalization::unitary;
  const CVector y = type == "II" ? chebfact::nudft2_lowrank(plan, grid, x, norm) : chebfact::nudft1_apply(plan, grid, x, norm);
  json summary = header("transform", 0);
  summary["type"] = type;
  summary["K"] = rank;
  summary["normalization"] = raw ? "raw" : "unitary";
  summary["truncation_error_max"] = chebfact::truncation_error(grid, plan);
  if (grid.N() <= 64) {
    const CMatrix f = chebfact::nudft2_matrix(grid, norm);
    const CVector exact = type == "II" ? CVector(f * x) : CVector(f.transpose() * x);
    summary["max_deviation"] = (y - exact).cwiseAbs().maxCoeff();
  }
  sink.write(io::signal_to_csv(y));
  out << dump(summary);
  return 0;
}

json verify_json(const analysis::VerificationReport& r, const std::string& grid_path) {
  json j = header("verify", 0);
  j["grid"] = grid_path;
  j["report"] = io::report_to_json(r);
  return j;
}

int cmd_verify(const std::string& grid_path, double epsilon, const analysis::Overrides& ov, analysis::ParamRule rule,
               const std::string& format, const Sink& sink) {
  const auto grid = io::read_grid(grid_path);
  if (grid.N() > 64) throw std::invalid_argument("verify needs N <= 64");
  if (ov.m && *ov.m < grid.n + 1) throw std::invalid_argument("--m must be >= n + 1");
  if (ov.K && *ov.K < 1) throw std::invalid_argument("--K must be >= 1");
  if (ov.p && *ov.p < 2) throw std::invalid_argument("--p must be >= 2");
  const auto r = analysis::verify_encoding(grid, epsilon, ov, rule);
  if (format == "json") {
    sink.write(dump(verify_json(r, grid_path)));
  } else if (format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    const json flat = io::report_to_json(r);
    for (const auto& [k, v] : flat.items())
      if (!v.is_object()) os << k << "," << v.dump() << "\n";
    for (const auto& [k, v] : flat["params"].items()) os << "params." << k << "," << v.dump() << "\n";
    sink.write(os.str());
  } else {
    io::Series meas{"measured"}, bound{"bound"};
    for (int K = 1; K <= r.params.K + 2; ++K) {
      analysis::Overrides o = ov;
      o.K = K;
      o.m = r.params.m;
      o.p = r.params.p;
      const auto rk = analysis::verify_encoding(grid, epsilon, o, rule);
      meas.x.push_back(K);
      meas.y.push_back(rk.measured_error);
      bound.x.push_back(K);
      bound.y.push_back(rk.bound);
    }
    sink.write(io::svg_plot("spectral error vs K", "K", "error", {meas, bound}, true));
  }
  return r.pass ? 0 : 1;
}

int cmd_estimate(const std::string& nrange, const std::vector<double>& epsilons, double gamma, std::uint64_t seed,
                 const std::string& format, const Sink& sink) {
  const auto [n0, n1] = parse_range(nrange);
  if (n0 < 1 || n1 < n0 || n1 > 10) throw UsageError("--n range must satisfy 1 <= a <= b <= 10");
  if (epsilons.empty()) throw UsageError("at least one --epsilon");
  json rows = json::array();
  std::vector<analysis::CircuitCounts> sweep;
  for (int n = n0; n <= n1; ++n) {
    const auto grid = generate_grid(GridMode::jitter, n, gamma, seed);
    for (double eps : epsilons) {
      if (!(eps > 0)) throw UsageError("--epsilon must be positive");
      const auto pc = analysis::choose_params(eps, grid);
      const std::map<std::string, double> prm = {{"n", n}, {"m", pc.m}, {"p", pc.p}, {"K", pc.K}};
      std::vector<analysis::CircuitCounts> parts = {
          analysis::count_circuit("QFT", qcirc::qft_circuit(n), prm),
          analysis::count_circuit("U_vr", qcirc::build_Uvr(n, std::max(1, pc.K - 1), pc.p), prm),
          analysis::count_circuit("U_ur", qcirc::build_Uur(grid, n, pc.m, pc.p, pc.K, 0), prm),
          analysis::count_circuit("O_A", qcirc::build_OA(n), prm),
      };
      std::map<std::string, long long> emitted, decomposed, oracles;
      long long depth = 0;
      for (const auto& c : parts) {
        for (const auto& [k, v] : c.emitted) emitted[k] += v;
        for (const auto& [k, v] : c.decomposed) decomposed[k] += v;
        for (const auto& [k, v] : c.oracle_calls) oracles[k] += v;
        depth += c.depth;
        sweep.push_back(c);
      }
      const auto lay = qcirc::vii_layout(n, pc.m, pc.p, pc.K);
      json row;
      row["n"] = n;
      row["epsilon"] = eps;
      row["params"] = io::params_to_json(pc);
      row["L"] = n + std::log2(1.0 / eps);
      row["qubits"] = {{"total", lay.total()},
                       {"system", lay.system},
                       {"comp_u", lay.comp_u},
                       {"lcu_u", lay.lcu_u},
                       {"t", lay.t},
                       {"y", lay.y},
                       {"theta", lay.theta},
                       {"carry", lay.carry},
                       {"comp_v", lay.comp_v},
                       {"x", lay.x},
                       {"ms", lay.ms},
                       {"outer_lcu", lay.outer_lcu}};
      json e = json::object(), d = json::object(), o = json::object();
      for (const auto& [k, v] : emitted) e[k] = v;
      for (const auto& [k, v] : decomposed) d[k] = v;
      for (const auto& [k, v] : oracles) o[k] = v;
      row["gates"] = e;
      row["gates_decomposed"] = d;
      row["oracle_calls"] = o;
      row["depth"] = depth;
      rows.push_back(row);
    }
  }
  const auto rep = analysis::resource_report(sweep);
  if (format == "json") {
    json j = header("estimate", seed);
    j["gamma"] = gamma;
    j["rows"] = rows;
    json fits = json::object();
    for (const auto& [k, f] : rep.fits) fits[k] = io::fit_to_json(f);
    j["fits"] = fits;
    sink.write(dump(j));
  } else if (format == "csv") {
    std::ostringstream os;
    os << "n,epsilon,K,m,p,kappa,L,qubits,depth,CNOT,Toffoli,MCX,H,X,controlled_rotations\n";
    for (const auto& r : rows) {
      auto g = [&](const char* k) { return r["gates"].contains(k) ? r["gates"][k].get<long long>() : 0LL; };
      os << r["n"] << "," << num(r["epsilon"]) << "," << r["params"]["K"] << "," << r["params"]["m"] << ","
         << r["params"]["p"] << "," << num(r["params"]["kappa"]) << "," << num(r["L"]) << "," << r["qubits"]["total"]
         << "," << r["depth"] << "," << g("CNOT") << "," << g("Toffoli") << "," << g("MCX") << "," << g("H") << ","
         << g("X") << "," << g("CR") + g("CRX") + g("CRZ") << "\n";
    }
    sink.write(os.str());
  } else {
    std::vector<io::Series> series;
    for (const char* key : {"CNOT", "Toffoli", "MCX"}) {
      io::Series s{key};
      for (const auto& r : rows) {
        if (r["epsilon"].get<double>() != epsilons.front()) continue;
        s.x.push_back(r["n"].get<double>());
        s.y.push_back(r["gates"].contains(key) ? r["gates"][key].get<double>() : 0.0);
      }
      series.push_back(s);
    }
    sink.write(io::svg_plot("gate counts vs n", "n", "count", series, false));
  }
  return 0;
}

int cmd_lemmas(const std::string& grid_path, int m, int p, int K, const std::string& format, const Sink& sink) {
  const auto grid = io::read_grid(grid_path);
  if (m < grid.n + 1) throw std::invalid_argument("--m must be >= n + 1");
  if (p < 2 || K < 1) throw std::invalid_argument("--p >= 2 and --K >= 1 required");
  const auto t = analysis::scalar_error_lemmas(grid, m, p, K);
  if (format == "csv") {
    std::ostringstream os;
    os << std::setprecision(17) << "j,q,exp_err,exp_bound,x_err,x_bound,y_err,y_bound\n";
    for (const auto& e : t.rows)
      os << e.j << "," << e.q << "," << e.exp_err << "," << e.exp_bound << "," << e.x_err << "," << e.x_bound << ","
         << e.y_err << "," << e.y_bound << "\n";
    sink.write(os.str());
  } else {
    json j = header("lemmas", 0);
    j["grid"] = grid_path;
    j["tables"] = io::lemmas_to_json(t);
    sink.write(dump(j));
  }
  return t.all_within() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-uniform QFT verification lab"};
  app.require_subcommand(1);

  std::string out_path, format = "json", grid_path, signal_path, mode = "jitter", type = "II", rule = "proof";
  std::string nrange = "3";
  int n = 3;
  double gamma = 0.25, epsilon = 1e-3;
  std::vector<double> epsilons;
  std::uint64_t seed = 1;
  std::optional<int> K, m, p;
  bool raw = false;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--out", out_path, "output file (stdout when omitted)");
  };
  auto add_format = [&](CLI::App* sc, std::vector<std::string> allowed) {
    sc->add_option("--format", format, "output format")->check(CLI::IsMember(allowed));
  };

  auto* gen = app.add_subcommand("gen-grid", "generate a sample grid");
  gen->add_option("--mode", mode, "uniform | jitter | random | clustered")
      ->check(CLI::IsMember({"uniform", "jitter", "random", "clustered"}));
  gen->add_option("--n", n, "qubits (N = 2^n)")->check(CLI::Range(1, 20));
  gen->add_option("--gamma", gamma, "jitter half-width");
  gen->add_option("--seed", seed, "random seed");
  add_common(gen);

  auto* tr = app.add_subcommand("transform", "apply the low-rank type I/II transform");
  tr->add_option("--type", type, "I or II");
  tr->add_option("--grid", grid_path, "grid JSON")->required();
  tr->add_option("--signal", signal_path, "signal CSV (re,im)");
  tr->add_option("--epsilon", epsilon, "accuracy used to pick K");
  tr->add_option("--K", K, "truncation rank");
  tr->add_flag("--raw", raw, "raw instead of unitary normalization");
  add_common(tr);

  auto* ver = app.add_subcommand("verify", "end-to-end block-encoding check");
  ver->add_option("--grid", grid_path, "grid JSON")->required();
  ver->add_option("--epsilon", epsilon, "target accuracy");
  ver->add_option("--K", K);
  ver->add_option("--m", m);
  ver->add_option("--p", p);
  ver->add_option("--rule", rule, "proof | statement")->check(CLI::IsMember({"proof", "statement"}));
  add_format(ver, {"json", "csv", "svg"});
  add_common(ver);

  auto* est = app.add_subcommand("estimate", "resource table over n");
  est->add_option("--n", nrange, "n or a..b");
  est->add_option("--epsilon", epsilons, "target accuracy (repeatable)");
  est->add_option("--gamma", gamma, "jitter half-width of the generated grids");
  est->add_option("--seed", seed, "random seed");
  add_format(est, {"json", "csv", "svg"});
  add_common(est);

  auto* lem = app.add_subcommand("lemmas", "scalar error tables");
  int lm = 10, lp = 10, lk = 8;
  lem->add_option("--grid", grid_path, "grid JSON")->required();
  lem->add_option("--m", lm);
  lem->add_option("--p", lp);
  lem->add_option("--K", lk);
  add_format(lem, {"json", "csv"});
  add_common(lem);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Sink sink{out_path, out};
  try {
    if (gen->parsed()) return cmd_gen_grid(mode, n, gamma, seed, sink);
    if (tr->parsed()) return cmd_transform(type, grid_path, signal_path, epsilon, K, raw, sink, out);
    if (ver->parsed()) {
      if (!(epsilon > 0)) throw UsageError("--epsilon must be positive");
      return cmd_verify(grid_path, epsilon, analysis::Overrides{K, m, p},
                        rule == "proof" ? analysis::ParamRule::proof : analysis::ParamRule::statement, format, sink);
    }
    if (est->parsed()) {
      if (epsilons.empty()) epsilons = {1e-3};
      return cmd_estimate(nrange, epsilons, gamma, seed, format, sink);
    }
    if (lem->parsed()) return cmd_lemmas(grid_path, lm, lp, lk, format, sink);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace nuqft::cli
