#pragma once

#include "nuqft/chebfact.hpp"
#include "nuqft/circuit.hpp"

#include <vector>

namespace nuqft::qcirc {

enum class IndexPrep { none, hadamard };

/// Hadamard/CR_m ladder followed by the bit-reversal swaps; register "index".
Circuit qft_circuit(int n);

/// Registers comp, index.
Circuit build_Uv0(int n, IndexPrep prep = IndexPrep::hadamard);
/// Registers comp, index, x (n+1: fraction, integer bit, sign), theta (p).
Circuit build_Uvr(int n, int r, int p, IndexPrep prep = IndexPrep::hadamard);
/// Registers index, t. XOR-loads the m-bit truncation of t_i.
Circuit build_Ot(const chebfact::SampleGrid& grid, int m);
/// Registers index, t (scratch), s (m bits of s_i/N), wrap (rounding carry).
Circuit build_Os(const chebfact::SampleGrid& grid, int n, int m);
/// Registers i, s, flag. flag ^= [i == s].
Circuit build_OA(int n);
/// Registers comp, lcu, index, t, y (m+1), theta, carry.
Circuit build_Uur(const chebfact::SampleGrid& grid, int n, int m, int p, int K, int r,
                  IndexPrep prep = IndexPrep::hadamard);

// arithmetic building blocks

/// bits += 1 (mod 2^w), all gates controlled on `controls`.
void append_increment(Circuit& c, const std::vector<int>& bits, const std::vector<int>& controls = {});
/// Ripple-carry b += a (mod 2^w); `carry` is a clean ancilla; `overflow` (or -1) receives the carry out.
void append_add(Circuit& c, const std::vector<int>& a, const std::vector<int>& b, int carry, int overflow = -1);
/// y (m+1 bits, holding S) <- T - S two's complement, t m bits.
void append_subtract(Circuit& c, const std::vector<int>& t, const std::vector<int>& y, int carry);
/// y[m-n..m] <- top n bits of t, then += t[m-n-1].
void append_round(Circuit& c, const std::vector<int>& t, const std::vector<int>& y, int n);

/// Unitary whose first column is `amplitudes` (unit norm).
CMatrix prep_unitary(const CVector& amplitudes);

/// Qubit breakdown of the assembled encoding for one (n, m, p, K).
struct QubitLayout {
  int system = 0, comp_u = 0, lcu_u = 0, t = 0, y = 0, theta = 0, carry = 0;
  int comp_v = 0, x = 0, ms = 0, outer_lcu = 0;
  int total() const { return system + comp_u + lcu_u + t + y + theta + carry + comp_v + x + ms + outer_lcu; }
};
QubitLayout vii_layout(int n, int m, int p, int K);

int padded_rank(int K);

}  // namespace nuqft::qcirc
