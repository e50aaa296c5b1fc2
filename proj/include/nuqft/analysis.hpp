#pragma once

#include "nuqft/blockenc.hpp"
#include "nuqft/circuit.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nuqft::analysis {

using blockenc::Kappa;

Kappa compute_kappa(const chebfact::SampleGrid& grid, int m);

/// proof: 4C(pi N + 2NK kappa) for m; statement: 8C(pi N + K kappa).
enum class ParamRule { proof, statement };

struct Overrides {
  std::optional<int> K, m, p;
};

struct ParamChoice {
  double epsilon = 0;
  int K = 1, m = 1, p = 3;
  double kappa = 1;
  bool kappa_clamped = false;
  double alpha_prime = 0;  // sum_r w_r ||alpha'_r||_1
  int c_max = 1;
  double truncation_error = 0;  // ||B - B_K||_max
  int K_asymptotic = 1;
  bool m_raised_for_rounding = false;
  ParamRule rule = ParamRule::proof;
};

ParamChoice choose_params(double epsilon, const chebfact::SampleGrid& grid, ParamRule rule = ParamRule::proof,
                          const Overrides& overrides = {});

/// Quantization bound C(pi N 2^-m + K 2^{-p+2} + N K 2^{-m+1} kappa).
double block_error_bound(const ParamChoice& pc, int n);
/// sqrt(N c_max) ||B - B_K||_max
double truncation_bound(const ParamChoice& pc, int n);

struct VerificationReport {
  ParamChoice params;
  double measured_error = 0;
  double measured_error_svd = 0;
  double truncation_bound = 0;
  double block_bound = 0;     // the closed-form quantization bound
  double composed_err = 0;    // err field propagated through the encoding algebra
  double bound = 0;           // truncation_bound + block_bound
  double alpha_eff = 0;
  double alpha_uniform = 0;
  int ancillas = 0;
  int shared_ancillas = 0;
  bool oracle_consistent = true;
  std::map<std::string, long long> gate_counts;
  std::map<std::string, long long> oracle_calls;
  long long depth = 0;
  bool pass = false;
  bool within_bound = false;
  bool budget_within_epsilon = false;
};

VerificationReport verify_encoding(const chebfact::SampleGrid& grid, double epsilon,
                                   const Overrides& overrides = {}, ParamRule rule = ParamRule::proof);

struct NormBound {
  double lhs = 0, rhs = 0;
};
NormBound hadamard_norm_bound(const CMatrix& B, const CMatrix& C);

struct LemmaEntry {
  int j = 0, q = 0;
  double exp_err = 0, exp_bound = 0;
  double x_err = 0, x_bound = 0;
  double y_err = 0, y_bound = 0;
};
struct LemmaTables {
  int m = 0, p = 0, K = 0;
  std::vector<LemmaEntry> rows;
  bool oracle_consistent = true;
  bool kappa_clamped = false;
  bool all_within() const;
};
LemmaTables scalar_error_lemmas(const chebfact::SampleGrid& grid, int m, int p, int K);

struct CircuitCounts {
  std::string name;
  std::map<std::string, double> params;
  std::map<std::string, long long> emitted;
  std::map<std::string, long long> decomposed;
  std::map<std::string, long long> oracle_calls;
  long long controlled_rotations = 0;
  long long depth = 0;
  int qubits = 0;
};
CircuitCounts count_circuit(const std::string& name, const qcirc::Circuit& c,
                            std::map<std::string, double> params = {});
/// Multi-controlled gates rewritten into Toffolis and single-controlled gates.
std::map<std::string, long long> decompose_counts(const qcirc::Circuit& c);

struct LinearFit {
  std::vector<std::string> features;
  RVector coefficients;
  double max_relative_residual = 0;
};
/// Least squares count ~ sum_i coeff_i * feature_i without intercept.
LinearFit fit_counts(const std::vector<std::string>& features, const RMatrix& X, const RVector& y);

struct ResourceReport {
  std::vector<CircuitCounts> rows;
  std::map<std::string, LinearFit> fits;
};
/// Tallies each circuit; fits are keyed "<name>:<count>" for the count forms it recognizes.
ResourceReport resource_report(const std::vector<CircuitCounts>& circuits);

}  // namespace nuqft::analysis
