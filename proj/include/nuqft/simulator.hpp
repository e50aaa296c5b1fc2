#pragma once

#include "nuqft/circuit.hpp"

#include <cstdint>
#include <unordered_map>

namespace nuqft::qcirc {

inline constexpr int max_dense_qubits = 26;
inline constexpr int max_unitary_qubits = 12;
inline constexpr int max_sparse_qubits = 62;

struct StateVector {
  int num_qubits = 0;
  CVector amplitudes;

  static StateVector basis(int num_qubits, std::uint64_t index);
  double norm() const { return amplitudes.norm(); }
};

/// Hash-map state for wide registers with small support.
struct SparseState {
  int num_qubits = 0;
  std::unordered_map<std::uint64_t, Complex> amplitudes;

  static SparseState basis(int num_qubits, std::uint64_t index);
  Complex amplitude(std::uint64_t index) const;
  double norm() const;
};

StateVector apply(const Circuit& c, StateVector state);
SparseState apply(const Circuit& c, SparseState state);
CMatrix unitary_of(const Circuit& c);

/// Amplitude-level block: entry (i, j) = <0.., i_sys| U |0.., j_sys> with every
/// register outside `system` fixed to zero.
CMatrix extract_block(const Circuit& c, const std::string& system);

std::uint64_t register_value(std::uint64_t index, const Register& r);
std::uint64_t with_register(std::uint64_t index, const Register& r, std::uint64_t value);

}  // namespace nuqft::qcirc
