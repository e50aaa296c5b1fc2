#include "nuqft/analysis.hpp"

#include "nuqft/constructions.hpp"
#include "nuqft/fxp.hpp"
#include "nuqft/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace nuqft::analysis {

using chebfact::SampleGrid;

Kappa compute_kappa(const SampleGrid& grid, int m) { return blockenc::kappa_of(grid, m); }

namespace {

int ceil_log2_real(double v) { return static_cast<int>(std::ceil(std::log2(v))); }

int required_m(const ParamChoice& pc, int N, double kappa) {
  const double C = pc.alpha_prime * std::sqrt(double(pc.c_max));
  if (pc.rule == ParamRule::statement) return ceil_log2_real(8.0 * C * (pi * N + pc.K * kappa) / pc.epsilon);
  return ceil_log2_real(4.0 * C * (pi * N + 2.0 * N * pc.K * kappa) / pc.epsilon);
}

}  // namespace

ParamChoice choose_params(double epsilon, const SampleGrid& grid, ParamRule rule, const Overrides& ov) {
  if (!(epsilon > 0)) throw std::invalid_argument("choose_params: epsilon must be positive");
  const int N = grid.N();
  ParamChoice pc;
  pc.epsilon = epsilon;
  pc.rule = rule;
  pc.c_max = grid.c_max;
  const double eps_trunc = epsilon / (2.0 * std::sqrt(double(N) * grid.c_max));
  if (ov.K) {
    if (*ov.K < 1) throw std::invalid_argument("choose_params: K >= 1");
    pc.K = *ov.K;
  } else {
    pc.K = chebfact::smallest_rank(grid, eps_trunc);
  }
  const double L = std::log(1.0 / eps_trunc);
  pc.K_asymptotic = L > std::exp(1.0) ? static_cast<int>(std::ceil(L / std::log(L))) : 1;
  const auto plan = chebfact::build_plan(grid, pc.K);
  pc.alpha_prime = plan.alpha_prime();
  pc.truncation_error = chebfact::truncation_error(grid, plan);
  const double C = pc.alpha_prime * std::sqrt(double(pc.c_max));

  pc.p = ov.p ? *ov.p : std::max(3, ceil_log2_real(16.0 * C * pc.K / epsilon));

  if (ov.m) {
    if (*ov.m < grid.n + 1) throw std::invalid_argument("choose_params: m >= n + 1");
    pc.m = *ov.m;
  } else {
    // smallest m that meets its own kappa(m) requirement and reproduces the rounding
    bool formula_met = false;
    for (int m = grid.n + 1; m <= 62; ++m) {
      const auto k = compute_kappa(grid, m);
      if (m < required_m(pc, N, k.kappa)) continue;
      formula_met = true;
      if (!blockenc::oracle_consistent(grid, m)) {
        pc.m_raised_for_rounding = true;
        continue;
      }
      pc.m = m;
      break;
    }
    if (!formula_met || pc.m < grid.n + 1) throw std::runtime_error("choose_params: no admissible m <= 62");
  }
  const auto k = compute_kappa(grid, pc.m);
  pc.kappa = k.kappa;
  pc.kappa_clamped = k.clamped;
  return pc;
}

double block_error_bound(const ParamChoice& pc, int n) {
  const double N = std::ldexp(1.0, n);
  const double C = pc.alpha_prime * std::sqrt(double(pc.c_max));
  return C * (pi * N * std::ldexp(1.0, -pc.m) + pc.K * std::ldexp(1.0, -pc.p + 2) +
              N * pc.K * std::ldexp(1.0, -pc.m + 1) * pc.kappa);
}

double truncation_bound(const ParamChoice& pc, int n) {
  return std::sqrt(std::ldexp(1.0, n) * pc.c_max) * pc.truncation_error;
}

VerificationReport verify_encoding(const SampleGrid& grid, double epsilon, const Overrides& ov, ParamRule rule) {
  if (grid.N() > 64) throw std::invalid_argument("verify_encoding: N <= 64 required");
  VerificationReport rep;
  rep.params = choose_params(epsilon, grid, rule, ov);
  const auto& pc = rep.params;
  const auto vii = blockenc::assemble_VII(grid, pc.K, pc.m, pc.p);
  const CMatrix diff = vii.alpha_eff * vii.encoding.block - chebfact::nudft2_matrix(grid, Normalization::unitary);
  rep.measured_error = spectral_norm(diff);
  rep.measured_error_svd = spectral_norm_svd(diff);
  rep.truncation_bound = truncation_bound(pc, grid.n);
  rep.block_bound = block_error_bound(pc, grid.n);
  rep.composed_err = vii.encoding.err;
  rep.bound = rep.truncation_bound + rep.block_bound;
  rep.alpha_eff = vii.alpha_eff;
  rep.alpha_uniform = vii.alpha_uniform;
  rep.ancillas = vii.encoding.ancillas;
  rep.shared_ancillas = vii.shared_ancillas;
  rep.oracle_consistent = vii.oracle_consistent;

  const int n = grid.n;
  const std::vector<qcirc::Circuit> parts = {
      qcirc::qft_circuit(n),
      pc.K > 1 ? qcirc::build_Uvr(n, pc.K - 1, pc.p) : qcirc::build_Uv0(n),
      qcirc::build_Uur(grid, n, pc.m, pc.p, pc.K, 0),
      qcirc::build_OA(n),
  };
  for (const auto& c : parts) {
    for (const auto& [k, v] : c.tally()) rep.gate_counts[k] += v;
    for (const auto& [k, v] : c.oracle_calls()) rep.oracle_calls[k] += v;
    rep.depth += c.depth();
  }
  rep.pass = rep.measured_error <= epsilon;
  rep.within_bound = rep.measured_error <= rep.bound;
  rep.budget_within_epsilon = rep.bound <= epsilon;
  return rep;
}

NormBound hadamard_norm_bound(const CMatrix& B, const CMatrix& C) {
  if (B.rows() != C.rows() || B.cols() != C.cols()) throw std::invalid_argument("hadamard_norm_bound: shape mismatch");
  NormBound nb;
  nb.lhs = spectral_norm_svd(B.cwiseProduct(C).eval());
  nb.rhs = std::sqrt(double(B.rows())) * max_norm(B) * spectral_norm_svd(C);
  return nb;
}

bool LemmaTables::all_within() const {
  for (const auto& e : rows)
    if (e.exp_err > e.exp_bound || e.x_err > e.x_bound || e.y_err > e.y_bound) return false;
  return true;
}

LemmaTables scalar_error_lemmas(const SampleGrid& grid, int m, int p, int K) {
  if (m < grid.n + 1) throw std::invalid_argument("scalar_error_lemmas: requires m >= n + 1");
  const int N = grid.N();
  LemmaTables t;
  t.m = m;
  t.p = p;
  t.K = K;
  t.oracle_consistent = blockenc::oracle_consistent(grid, m);
  const auto kap = compute_kappa(grid, m);
  t.kappa_clamped = kap.clamped;
  const double dp = std::ldexp(1.0, -p + 1);
  const double dm = std::ldexp(1.0, -m + 1);
  for (int j = 0; j < N; ++j) {
    const auto qo = fxp::quantize_offset(grid.t(j), grid.n, m, p);
    const double exp_err =
        std::abs(std::polar(1.0, -pi * N * grid.offset(j)) - std::polar(1.0, -pi * N * qo.y.value()));
    const double x = 2.0 * j / N - 1.0;
    const double theta_x = fxp::fp_arccos(fxp::grid_node(grid.n, j), p).value();
    const double y = std::clamp(2.0 * N * grid.offset(j), -1.0, 1.0);
    const double theta_y = qo.theta.value();
    for (int q = 0; q < K; ++q) {
      LemmaEntry e;
      e.j = j;
      e.q = q;
      e.exp_err = exp_err;
      e.exp_bound = pi * N * dm;
      e.x_err = std::abs(chebfact::cheb_T(q, x) - std::cos(q * theta_x));
      e.x_bound = q * dp;
      e.y_err = std::abs(chebfact::cheb_T(q, y) - std::cos(q * theta_y));
      e.y_bound = q * (dp + N * dm * kap.per_point(j));
      t.rows.push_back(e);
    }
  }
  return t;
}

std::map<std::string, long long> decompose_counts(const qcirc::Circuit& c) {
  std::map<std::string, long long> out;
  for (const auto& g : c.gates()) {
    const long long k = static_cast<long long>(g.controls.size());
    const std::string type = g.type();
    if (type == "MCX") {
      out["Toffoli"] += 2 * k - 3;
    } else if ((type == "CR" || type == "CRX" || type == "CRZ") && k >= 2) {
      out["Toffoli"] += 2 * (k - 1);
      out[type] += 1;
    } else {
      out[type] += 1;
    }
  }
  return out;
}

CircuitCounts count_circuit(const std::string& name, const qcirc::Circuit& c, std::map<std::string, double> params) {
  CircuitCounts cc;
  cc.name = name;
  cc.params = std::move(params);
  cc.emitted = c.tally();
  cc.decomposed = decompose_counts(c);
  cc.oracle_calls = c.oracle_calls();
  for (const char* k : {"CR", "CRX", "CRZ"}) {
    auto it = cc.emitted.find(k);
    if (it != cc.emitted.end()) cc.controlled_rotations += it->second;
  }
  cc.depth = c.depth();
  cc.qubits = c.num_qubits();
  return cc;
}

LinearFit fit_counts(const std::vector<std::string>& features, const RMatrix& X, const RVector& y) {
  if (X.rows() == 0 || X.rows() != y.size() || X.cols() != static_cast<Eigen::Index>(features.size()))
    throw std::invalid_argument("fit_counts: shapes");
  LinearFit f;
  f.features = features;
  f.coefficients = X.colPivHouseholderQr().solve(y);
  const RVector pred = X * f.coefficients;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double denom = std::max(std::abs(y(i)), 1.0);
    f.max_relative_residual = std::max(f.max_relative_residual, std::abs(pred(i) - y(i)) / denom);
  }
  return f;
}

namespace {

long long count_of(const CircuitCounts& c, const std::string& key) {
  if (key == "controlled_rotations") return c.controlled_rotations;
  auto it = c.emitted.find(key);
  return it == c.emitted.end() ? 0 : it->second;
}

double param(const CircuitCounts& c, const std::string& key) {
  auto it = c.params.find(key);
  if (it == c.params.end()) throw std::invalid_argument("resource_report: missing parameter " + key);
  return it->second;
}

struct FitForm {
  std::string circuit, count;
  std::vector<std::string> features;
};

double feature(const CircuitCounts& c, const std::string& f) {
  if (f == "1") return 1.0;
  if (f == "m") return param(c, "m");
  if (f == "p") return param(c, "p");
  if (f == "p^2") return param(c, "p") * param(c, "p");
  if (f == "n^2") return param(c, "n") * param(c, "n");
  if (f == "n(n-1)/2") return param(c, "n") * (param(c, "n") - 1) / 2;
  throw std::invalid_argument("unknown feature " + f);
}

}  // namespace

ResourceReport resource_report(const std::vector<CircuitCounts>& circuits) {
  if (circuits.empty()) throw std::invalid_argument("resource_report: empty sweep");
  ResourceReport rep;
  rep.rows = circuits;
  const std::vector<FitForm> forms = {
      {"QFT", "CR", {"n(n-1)/2"}},
      {"U_vr", "CRX", {"p", "1"}},
      {"U_ur", "CNOT", {"m", "p^2"}},
      {"U_ur", "controlled_rotations", {"p", "m", "n^2"}},
  };
  for (const auto& form : forms) {
    std::vector<const CircuitCounts*> sel;
    for (const auto& c : circuits)
      if (c.name == form.circuit) sel.push_back(&c);
    if (sel.size() < form.features.size() + 1) continue;
    RMatrix X(sel.size(), form.features.size());
    RVector y(sel.size());
    for (size_t i = 0; i < sel.size(); ++i) {
      for (size_t f = 0; f < form.features.size(); ++f) X(i, f) = feature(*sel[i], form.features[f]);
      y(i) = static_cast<double>(count_of(*sel[i], form.count));
    }
    rep.fits[form.circuit + ":" + form.count] = fit_counts(form.features, X, y);
  }
  return rep;
}

}  // namespace nuqft::analysis
