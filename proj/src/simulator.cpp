#include "nuqft/simulator.hpp"

#include <stdexcept>

namespace nuqft::qcirc {

namespace {

std::uint64_t gather(std::uint64_t index, const std::vector<int>& bits) {
  std::uint64_t v = 0;
  for (size_t i = 0; i < bits.size(); ++i) v |= ((index >> bits[i]) & 1ULL) << i;
  return v;
}

std::uint64_t scatter(std::uint64_t index, const std::vector<int>& bits, std::uint64_t value) {
  for (size_t i = 0; i < bits.size(); ++i) {
    const std::uint64_t b = 1ULL << bits[i];
    index = ((value >> i) & 1ULL) ? (index | b) : (index & ~b);
  }
  return index;
}

std::uint64_t control_mask(const Gate& g) {
  std::uint64_t m = 0;
  for (int c : g.controls) m |= 1ULL << c;
  return m;
}

bool single_target(const Gate& g) {
  return g.kind != GateKind::Oracle && g.kind != GateKind::Unitary;
}

void check_layout(const Circuit& c, int nq, int budget) {
  if (c.num_qubits() != nq) throw std::invalid_argument("state and circuit sizes differ");
  if (nq > budget) throw std::length_error("qubit budget exceeded");
}

}  // namespace

std::uint64_t register_value(std::uint64_t index, const Register& r) {
  return (index >> r.offset) & ((r.width >= 64) ? ~0ULL : ((1ULL << r.width) - 1));
}

std::uint64_t with_register(std::uint64_t index, const Register& r, std::uint64_t value) {
  return scatter(index, r.bits(), value);
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits > max_dense_qubits) throw std::length_error("qubit budget exceeded");
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes = CVector::Zero(Eigen::Index(1) << num_qubits);
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

SparseState SparseState::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits > max_sparse_qubits) throw std::length_error("qubit budget exceeded");
  SparseState s;
  s.num_qubits = num_qubits;
  s.amplitudes[index] = 1.0;
  return s;
}

Complex SparseState::amplitude(std::uint64_t index) const {
  auto it = amplitudes.find(index);
  return it == amplitudes.end() ? Complex(0) : it->second;
}

double SparseState::norm() const {
  double s = 0;
  for (const auto& [k, a] : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

StateVector apply(const Circuit& c, StateVector state) {
  check_layout(c, state.num_qubits, max_dense_qubits);
  auto& amp = state.amplitudes;
  const std::uint64_t dim = 1ULL << state.num_qubits;
  for (const auto& g : c.gates()) {
    if (single_target(g)) {
      const std::uint64_t tm = 1ULL << g.targets[0];
      const std::uint64_t cm = control_mask(g);
      const auto m = g.matrix2();
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tm) || (i & cm) != cm) continue;
        const Complex a0 = amp(i), a1 = amp(i | tm);
        amp(i) = m(0, 0) * a0 + m(0, 1) * a1;
        amp(i | tm) = m(1, 0) * a0 + m(1, 1) * a1;
      }
    } else if (g.kind == GateKind::Oracle) {
      const auto& f = *g.table;
      for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t out = gather(i, g.targets) ^ f(gather(i, g.inputs));
        const std::uint64_t j = scatter(i, g.targets, out);
        if (j > i) std::swap(amp(i), amp(j));
      }
    } else {
      const auto& u = *g.matrix;
      const std::uint64_t tmask = scatter(0, g.targets, ~0ULL);
      const Eigen::Index k = u.rows();
      CVector buf(k);
      for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & tmask) continue;
        for (Eigen::Index v = 0; v < k; ++v) buf(v) = amp(scatter(base, g.targets, v));
        const CVector out = u * buf;
        for (Eigen::Index v = 0; v < k; ++v) amp(scatter(base, g.targets, v)) = out(v);
      }
    }
  }
  return state;
}

SparseState apply(const Circuit& c, SparseState state) {
  check_layout(c, state.num_qubits, max_sparse_qubits);
  for (const auto& g : c.gates()) {
    std::unordered_map<std::uint64_t, Complex> next;
    next.reserve(state.amplitudes.size() * 2);
    if (single_target(g)) {
      const std::uint64_t tm = 1ULL << g.targets[0];
      const std::uint64_t cm = control_mask(g);
      const auto m = g.matrix2();
      for (const auto& [i, a] : state.amplitudes) {
        if ((i & cm) != cm) {
          next[i] += a;
          continue;
        }
        const int b = (i & tm) ? 1 : 0;
        const std::uint64_t i0 = i & ~tm;
        if (m(0, b) != 0.0) next[i0] += m(0, b) * a;
        if (m(1, b) != 0.0) next[i0 | tm] += m(1, b) * a;
      }
    } else if (g.kind == GateKind::Oracle) {
      const auto& f = *g.table;
      for (const auto& [i, a] : state.amplitudes)
        next[scatter(i, g.targets, gather(i, g.targets) ^ f(gather(i, g.inputs)))] += a;
    } else {
      const auto& u = *g.matrix;
      for (const auto& [i, a] : state.amplitudes) {
        const std::uint64_t col = gather(i, g.targets);
        for (Eigen::Index row = 0; row < u.rows(); ++row) {
          const Complex v = u(row, static_cast<Eigen::Index>(col)) * a;
          if (v != 0.0) next[scatter(i, g.targets, row)] += v;
        }
      }
    }
    state.amplitudes.swap(next);
  }
  return state;
}

CMatrix unitary_of(const Circuit& c) {
  const int nq = c.num_qubits();
  if (nq > max_unitary_qubits) throw std::length_error("qubit budget exceeded");
  const Eigen::Index dim = Eigen::Index(1) << nq;
  CMatrix u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) u.col(j) = apply(c, StateVector::basis(nq, j)).amplitudes;
  return u;
}

CMatrix extract_block(const Circuit& c, const std::string& system) {
  const Register& sys = c.reg(system);
  const Eigen::Index dim = Eigen::Index(1) << sys.width;
  CMatrix b(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto out = apply(c, SparseState::basis(c.num_qubits(), with_register(0, sys, j)));
    for (Eigen::Index i = 0; i < dim; ++i) b(i, j) = out.amplitude(with_register(0, sys, i));
  }
  return b;
}

}  // namespace nuqft::qcirc
