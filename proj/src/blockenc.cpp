#include "nuqft/blockenc.hpp"

#include "nuqft/constructions.hpp"
#include "nuqft/fxp.hpp"
#include "nuqft/linalg.hpp"
#include "nuqft/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace nuqft::blockenc {

using chebfact::LowRankPlan;
using chebfact::SampleGrid;

double BlockEncoding::block_norm() const { return spectral_norm_svd(block); }

BlockEncoding be_exact(const CMatrix& a, double alpha, int ancillas, double err, const std::string& label) {
  if (!(alpha > 0)) throw std::invalid_argument("block encoding: alpha must be positive");
  if (err < 0) throw std::invalid_argument("block encoding: negative error");
  return BlockEncoding{alpha, ancillas, err, a / alpha, label};
}

BlockEncoding be_product(const BlockEncoding& u, const BlockEncoding& v) {
  if (u.block.cols() != v.block.rows()) throw std::invalid_argument("be_product: dimension mismatch");
  BlockEncoding out;
  out.alpha = u.alpha * v.alpha;
  out.ancillas = u.ancillas + v.ancillas;
  out.err = u.alpha * v.err + v.alpha * u.err;
  out.block = u.block * v.block;
  out.label = "(" + u.label + ")*(" + v.label + ")";
  return out;
}

BlockEncoding be_lcu(const std::vector<BlockEncoding>& terms, const std::vector<double>& weights) {
  if (terms.empty() || terms.size() != weights.size()) throw std::invalid_argument("be_lcu: terms/weights");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("be_lcu: negative weight");
  }
  for (size_t i = 0; i < terms.size(); ++i) total += weights[i] * terms[i].alpha;
  if (!(total > 0)) throw std::invalid_argument("be_lcu: all-zero weights");
  BlockEncoding out;
  out.alpha = total;
  out.block = CMatrix::Zero(terms[0].block.rows(), terms[0].block.cols());
  int a = 0;
  std::string label;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].block.rows() != out.block.rows() || terms[i].block.cols() != out.block.cols())
      throw std::invalid_argument("be_lcu: dimension mismatch");
    out.block += (weights[i] * terms[i].alpha / total) * terms[i].block;
    out.err += weights[i] * terms[i].err;
    a = std::max(a, terms[i].ancillas);
    label += (i ? "+" : "") + terms[i].label;
  }
  out.ancillas = a + ceil_log2(static_cast<long long>(terms.size()));
  out.label = "LCU[" + label + "]";
  return out;
}

BlockEncoding be_qft(int n) {
  return BlockEncoding{1.0, 2, 0.0, chebfact::dft_matrix(1 << n, Normalization::unitary), "QFT"};
}

CMatrix selection_matrix(const SampleGrid& grid) {
  const int N = grid.N();
  CMatrix m = CMatrix::Zero(N, N);
  for (int j = 0; j < N; ++j) m(grid.s(j), j) = 1.0;
  return m;
}

BlockEncoding be_Ms(const SampleGrid& grid) {
  const double a = std::sqrt(static_cast<double>(grid.c_max));
  return BlockEncoding{a, grid.n + 3, 0.0, selection_matrix(grid) / a, "M_s"};
}

RVector quantized_v(int n, int r, int p) {
  const int N = 1 << n;
  RVector v(N);
  for (int j = 0; j < N; ++j) {
    if (r == 0) {
      v(j) = 0.5;
      continue;
    }
    const double theta = fxp::fp_arccos(fxp::grid_node(n, j), p).value();
    v(j) = std::cos(r * theta);
  }
  return v;
}

BlockEncoding be_diag_v(const LowRankPlan& plan, int r, std::optional<int> p) {
  if (r < 0 || r >= plan.K) throw std::out_of_range("be_diag_v: r");
  const int N = plan.N();
  BlockEncoding out;
  out.ancillas = 1;
  out.label = "D_v" + std::to_string(r);
  if (p) {
    out.block = quantized_v(ceil_log2(N), r, *p).cast<Complex>().asDiagonal();
    out.err = r * std::ldexp(1.0, -*p + 1);
  } else {
    out.block = plan.v.col(r).cast<Complex>().asDiagonal();
  }
  return out;
}

CVector quantized_u(const LowRankPlan& plan, const SampleGrid& grid, int r, int m, int p) {
  const int N = grid.N();
  CVector u(N);
  for (int j = 0; j < N; ++j) {
    const auto q = fxp::quantize_offset(grid.t(j), grid.n, m, p);
    const Complex phase = std::polar(1.0, -pi * N * q.y.value());
    const double theta = q.theta.value();
    Complex acc = 0;
    for (int k = 0; k < plan.K; ++k) acc += plan.alpha(k, r) * std::cos(k * theta);
    u(j) = acc * phase;
  }
  return u;
}

Kappa kappa_of(const SampleGrid& grid, int m) {
  if (m < grid.n + 1) throw std::invalid_argument("kappa: requires m >= n + 1");
  const int N = grid.N();
  Kappa k;
  k.per_point.resize(N);
  k.y.resize(N);
  k.y_tilde.resize(N);
  const double cap = 1.0 - std::ldexp(1.0, -m);
  for (int j = 0; j < N; ++j) {
    k.y(j) = 2.0 * N * grid.offset(j);
    k.y_tilde(j) = fxp::quantize_offset(grid.t(j), grid.n, m, 0).scaled.value();
    double a = std::max(std::abs(k.y(j)), std::abs(k.y_tilde(j)));
    if (a >= cap) {
      a = cap;
      k.clamped = true;
    }
    k.per_point(j) = 1.0 / std::sqrt(1.0 - a * a);
  }
  k.kappa = k.per_point.maxCoeff();
  return k;
}

bool oracle_consistent(const SampleGrid& grid, int m) {
  for (int j = 0; j < grid.N(); ++j)
    if (fxp::fp_round_Nt(fxp::fp_encode(grid.t(j), m), grid.n).s != grid.s(j)) return false;
  return true;
}

BlockEncoding be_diag_u(const LowRankPlan& plan, const SampleGrid& grid, int r, int m, int p) {
  if (r < 0 || r >= plan.K) throw std::out_of_range("be_diag_u: r");
  if (m < grid.n + 1) throw std::invalid_argument("be_diag_u: requires m >= n + 1");
  const int N = grid.N();
  const double norm1 = plan.alpha_row_norms(r);
  BlockEncoding out;
  out.alpha = norm1;
  out.ancillas = 1 + ceil_log2(plan.K);
  out.block = (quantized_u(plan, grid, r, m, p) / norm1).asDiagonal();
  const double kappa = kappa_of(grid, m).kappa;
  out.err = norm1 * (pi * N * std::ldexp(1.0, -m) +
                     plan.K * (std::ldexp(1.0, -p + 1) + N * std::ldexp(1.0, -m + 1) * kappa));
  out.label = "D_u" + std::to_string(r);
  return out;
}

AssembledVII assemble_VII(const SampleGrid& grid, int K, int m, int p) {
  if (m < grid.n + 1) throw std::invalid_argument("assemble_VII: requires m >= n + 1");
  const auto plan = chebfact::build_plan(grid, K);
  const auto qft = be_qft(grid.n);
  const auto ms = be_Ms(grid);
  std::vector<BlockEncoding> terms;
  std::vector<double> weights;
  for (int r = 0; r < K; ++r) {
    // applied right to left: D_u first, then M_s, F, D_v
    auto vr = be_product(be_product(be_product(be_diag_v(plan, r, p), qft), ms), be_diag_u(plan, grid, r, m, p));
    vr.label = "V_" + std::to_string(r);
    terms.push_back(std::move(vr));
    weights.push_back(LowRankPlan::weight(r));
  }
  AssembledVII out;
  out.encoding = be_lcu(terms, weights);
  out.encoding.label = "V_II";
  out.alpha_eff = out.encoding.alpha;
  out.alpha_uniform = K * std::sqrt(double(grid.c_max)) * plan.alpha_row_norms.sum();
  out.shared_ancillas = grid.n + 5 + ceil_log2(K);
  out.oracle_consistent = oracle_consistent(grid, m);
  out.kappa = kappa_of(grid, m);
  return out;
}

double crosscheck_gate_vs_model(const SampleGrid& grid, int n, int m, int p, int K, int r, Target target) {
  if (n != grid.n) throw std::invalid_argument("crosscheck: n does not match grid");
  using namespace qcirc;
  if (target == Target::v) {
    const auto plan = chebfact::build_plan(grid, std::max(K, r + 1));
    const auto c = r == 0 ? build_Uv0(n, IndexPrep::none) : build_Uvr(n, r, p, IndexPrep::none);
    return max_norm(extract_block(c, "index") - be_diag_v(plan, r, p).block);
  }
  if (target == Target::u) {
    const auto plan = chebfact::build_plan(grid, K);
    const auto c = build_Uur(grid, n, m, p, K, r, IndexPrep::none);
    if (c.num_qubits() > max_sparse_qubits) throw std::length_error("qubit budget exceeded");
    return max_norm(extract_block(c, "index") - be_diag_u(plan, grid, r, m, p).block);
  }
  const auto c = build_Os(grid, n, m);
  const Register& idx = c.reg("index");
  const Register& s = c.reg("s");
  const Register& wrap = c.reg("wrap");
  double dev = 0.0;
  for (int i = 0; i < grid.N(); ++i) {
    const auto out = apply(c, SparseState::basis(c.num_qubits(), with_register(0, idx, i)));
    const auto rd = fxp::fp_round_Nt(fxp::fp_encode(grid.t(i), m), n);
    std::uint64_t want = with_register(0, idx, i);
    want = with_register(want, s, rd.s_over_N.magnitude);
    want = with_register(want, wrap, rd.wrapped ? 1 : 0);
    dev = std::max(dev, std::abs(out.amplitude(want) - 1.0));
    dev = std::max(dev, std::sqrt(std::max(0.0, out.norm() * out.norm() - std::norm(out.amplitude(want)))));
  }
  return dev;
}

}  // namespace nuqft::blockenc
