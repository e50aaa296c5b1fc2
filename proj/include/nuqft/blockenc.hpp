#pragma once

#include "nuqft/chebfact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nuqft::blockenc {

/// (alpha, ancillas, err) with the realized top-left block A / alpha.
struct BlockEncoding {
  double alpha = 1.0;
  int ancillas = 0;
  double err = 0.0;
  CMatrix block;
  std::string label;

  CMatrix matrix() const { return alpha * block; }
  double block_norm() const;
};

BlockEncoding be_exact(const CMatrix& a, double alpha, int ancillas, double err = 0.0,
                       const std::string& label = "exact");
BlockEncoding be_product(const BlockEncoding& u, const BlockEncoding& v);
BlockEncoding be_lcu(const std::vector<BlockEncoding>& terms, const std::vector<double>& weights);

BlockEncoding be_qft(int n);
BlockEncoding be_Ms(const chebfact::SampleGrid& grid);
CMatrix selection_matrix(const chebfact::SampleGrid& grid);
/// Without p the exact D_{v_r}; with p the quantized T^_r(x_j).
BlockEncoding be_diag_v(const chebfact::LowRankPlan& plan, int r, std::optional<int> p = std::nullopt);
BlockEncoding be_diag_u(const chebfact::LowRankPlan& plan, const chebfact::SampleGrid& grid, int r,
                        int m, int p);

/// Quantized diagonals shared with the circuits.
RVector quantized_v(int n, int r, int p);
CVector quantized_u(const chebfact::LowRankPlan& plan, const chebfact::SampleGrid& grid, int r, int m, int p);

struct Kappa {
  double kappa = 1.0;
  bool clamped = false;
  RVector per_point;   // 1/sqrt(1 - y*^2)
  RVector y;           // 2N(t - s/N)
  RVector y_tilde;     // quantized
};
Kappa kappa_of(const chebfact::SampleGrid& grid, int m);

/// fp_round_Nt(fp_encode(t, m)) reproduces nearest_grid(t) for every sample.
bool oracle_consistent(const chebfact::SampleGrid& grid, int m);

struct AssembledVII {
  BlockEncoding encoding;
  double alpha_eff = 0.0;
  double alpha_uniform = 0.0;  // uniform PREP over r: K sqrt(c_max) sum_r ||alpha'_r||_1
  int shared_ancillas = 0;     // ancillas reused across factors: n + 5 + ceil(log2 K)
  bool oracle_consistent = true;
  Kappa kappa;
};
AssembledVII assemble_VII(const chebfact::SampleGrid& grid, int K, int m, int p);

enum class Target { v, u, os };
double crosscheck_gate_vs_model(const chebfact::SampleGrid& grid, int n, int m, int p, int K, int r,
                                Target target);

}  // namespace nuqft::blockenc
