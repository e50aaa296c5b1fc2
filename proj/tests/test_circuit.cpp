#include "nuqft/circuit.hpp"
#include "nuqft/linalg.hpp"
#include "nuqft/simulator.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace nuqft;
using namespace nuqft::qcirc;

namespace {

// full 2^nq matrix of one gate, built column by column from its definition
CMatrix gate_matrix(const Gate& g, int nq) {
  const std::uint64_t dim = 1ULL << nq;
  CMatrix u = CMatrix::Zero(dim, dim);
  auto bit = [](std::uint64_t i, int q) { return int((i >> q) & 1ULL); };
  for (std::uint64_t col = 0; col < dim; ++col) {
    bool on = true;
    for (int c : g.controls) on = on && bit(col, c);
    if (!on) {
      u(col, col) = 1.0;
      continue;
    }
    if (g.kind == GateKind::Oracle) {
      std::uint64_t in = 0, out = 0;
      for (size_t k = 0; k < g.inputs.size(); ++k) in |= std::uint64_t(bit(col, g.inputs[k])) << k;
      for (size_t k = 0; k < g.targets.size(); ++k) out |= std::uint64_t(bit(col, g.targets[k])) << k;
      out ^= (*g.table)(in);
      std::uint64_t row = col;
      for (size_t k = 0; k < g.targets.size(); ++k) {
        row &= ~(1ULL << g.targets[k]);
        row |= ((out >> k) & 1ULL) << g.targets[k];
      }
      u(row, col) = 1.0;
    } else if (g.kind == GateKind::Unitary) {
      std::uint64_t v = 0;
      for (size_t k = 0; k < g.targets.size(); ++k) v |= std::uint64_t(bit(col, g.targets[k])) << k;
      for (Eigen::Index w = 0; w < g.matrix->rows(); ++w) {
        std::uint64_t row = col;
        for (size_t k = 0; k < g.targets.size(); ++k) {
          row &= ~(1ULL << g.targets[k]);
          row |= ((std::uint64_t(w) >> k) & 1ULL) << g.targets[k];
        }
        u(row, col) += (*g.matrix)(w, v);
      }
    } else {
      const auto m = g.matrix2();
      const int t = g.targets[0];
      const int b = bit(col, t);
      u(col & ~(1ULL << t), col) += m(0, b);
      u(col | (1ULL << t), col) += m(1, b);
    }
  }
  return u;
}

CMatrix dense_product(const Circuit& c) {
  const int nq = c.num_qubits();
  CMatrix u = CMatrix::Identity(1 << nq, 1 << nq);
  for (const auto& g : c.gates()) u = gate_matrix(g, nq) * u;
  return u;
}

std::vector<int> pick(std::mt19937_64& rng, int nq, int k) {
  std::vector<int> q(nq);
  std::iota(q.begin(), q.end(), 0);
  std::shuffle(q.begin(), q.end(), rng);
  q.resize(k);
  return q;
}

Circuit random_circuit(int nq, int gates, std::mt19937_64& rng) {
  Circuit c;
  c.add_register("q", nq);
  std::uniform_int_distribution<int> kind(0, 7);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int i = 0; i < gates; ++i) {
    const int k = kind(rng);
    const int nctl = std::uniform_int_distribution<int>(0, std::min(2, nq - 1))(rng);
    auto q = pick(rng, nq, 1 + nctl);
    const int t = q[0];
    std::vector<int> ctl(q.begin() + 1, q.end());
    switch (k) {
      case 0: c.h(t); break;
      case 1: c.x(t, ctl); break;
      case 2: c.phase(ang(rng), t, ctl); break;
      case 3: c.rx(ang(rng), t, ctl); break;
      case 4: c.rz(ang(rng), t, ctl); break;
      case 5: {
        if (nq < 2) break;
        auto tq = pick(rng, nq, 2);
        c.unitary("U", testutil::random_unitary(4, rng), tq);
        break;
      }
      case 6: {
        if (nq < 2) break;
        auto tq = pick(rng, nq, 2);
        const std::uint64_t salt = rng();
        c.oracle("f", {tq[0]}, {tq[1]}, [salt](std::uint64_t in) { return (in ^ salt) & 1ULL; });
        break;
      }
      default:
        if (nq >= 2) c.swap(q[0], (q[0] + 1) % nq);
        break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("empty circuit is the identity") {
  Circuit c;
  c.add_register("q", 3);
  CHECK(max_norm(unitary_of(c) - CMatrix::Identity(8, 8)) == 0.0);
}

TEST_CASE("single H on |0>") {
  Circuit c;
  c.add_register("q", 1);
  c.h(0);
  const auto s = apply(c, StateVector::basis(1, 0));
  CHECK(std::abs(s.amplitudes(0) - 1 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(s.amplitudes(1) - 1 / std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("CNOT and H x H matrices") {
  Circuit c;
  c.add_register("q", 2);
  // qubit 1 is the most significant, i.e. the first tensor factor
  c.cnot(1, 0);
  CMatrix cnot(4, 4);
  cnot << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  CHECK(max_norm(unitary_of(c) - cnot) == 0.0);

  Circuit hh;
  hh.add_register("q", 2);
  hh.h(0);
  hh.h(1);
  const CMatrix u = unitary_of(hh);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(std::abs(u(i, j)) - 0.5) <= 1e-15);
}

TEST_CASE("rotation conventions") {
  Circuit c;
  c.add_register("q", 2);
  c.rx(0.3, 0);
  const CMatrix rx = unitary_of(c).topLeftCorner(2, 2);
  CHECK(std::abs(rx(0, 0) - std::cos(0.3)) <= 1e-15);
  CHECK(std::abs(rx(1, 0) - Complex(0, -std::sin(0.3))) <= 1e-15);
  Circuit d;
  d.add_register("q", 2);
  d.cr(3, 1, 0);
  CHECK(std::abs(unitary_of(d)(3, 3) - std::polar(1.0, -2 * pi / 8)) <= 1e-15);
  CHECK(unitary_of(d)(1, 1) == Complex(1.0));
}

TEST_CASE("random circuits match the dense product of their gates") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int nq = 1 + trial % 4;
    const auto c = random_circuit(nq, 25, rng);
    CHECK(max_norm(unitary_of(c) - dense_product(c)) <= 1e-12);
  }
}

TEST_CASE("norm is preserved after every gate") {
  std::mt19937_64 rng(8);
  const auto c = random_circuit(5, 60, rng);
  const auto start = StateVector::basis(5, 13);
  // replay each prefix through the public builders
  for (size_t i = 0; i < c.gates().size(); ++i) {
    Circuit p = c.empty_like();
    for (size_t k = 0; k <= i; ++k) {
      const auto& g = c.gates()[k];
      switch (g.kind) {
        case GateKind::H: p.h(g.targets[0]); break;
        case GateKind::X: p.x(g.targets[0], g.controls); break;
        case GateKind::Phase: p.phase(g.angle, g.targets[0], g.controls); break;
        case GateKind::RX: p.rx(g.angle, g.targets[0], g.controls); break;
        case GateKind::RZ: p.rz(g.angle, g.targets[0], g.controls); break;
        case GateKind::Oracle: p.oracle(g.label, g.inputs, g.targets, *g.table); break;
        case GateKind::Unitary: p.unitary(g.label, *g.matrix, g.targets); break;
      }
    }
    CHECK(std::abs(apply(p, start).norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("dense and sparse simulators agree") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int nq = 3 + trial % 5;
    const auto c = random_circuit(nq, 40, rng);
    const std::uint64_t start = rng() % (1ULL << nq);
    const auto d = apply(c, StateVector::basis(nq, start));
    const auto s = apply(c, SparseState::basis(nq, start));
    double dev = 0;
    for (std::uint64_t i = 0; i < (1ULL << nq); ++i) dev = std::max(dev, std::abs(d.amplitudes(i) - s.amplitude(i)));
    CHECK(dev <= 1e-12);
    CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("inverse undoes the circuit") {
  std::mt19937_64 rng(5);
  const auto c = random_circuit(4, 30, rng);
  Circuit both = c;
  both.append(c.inverse());
  CHECK(max_norm(unitary_of(both) - CMatrix::Identity(16, 16)) <= 1e-12);
}

TEST_CASE("simulator guards") {
  Circuit c;
  c.add_register("q", 3);
  CHECK_THROWS_AS(apply(c, StateVector::basis(4, 0)), std::invalid_argument);
  CHECK_THROWS_AS(StateVector::basis(27, 0), std::length_error);
  Circuit wide;
  wide.add_register("q", 13);
  CHECK_THROWS_AS(unitary_of(wide), std::length_error);
  Circuit huge;
  huge.add_register("q", 27);
  CHECK_THROWS_AS(apply(huge, StateVector{27, CVector()}), std::length_error);
}

TEST_CASE("gate validation") {
  Circuit c;
  c.add_register("q", 3);
  CHECK_THROWS_AS(c.cnot(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(c.h(3), std::out_of_range);
  CHECK_THROWS_AS(c.unitary("u", CMatrix::Identity(2, 2), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(c.add_register("q", 1), std::invalid_argument);
  CHECK(c.gates().empty());
}

TEST_CASE("tallies, depth and text dump") {
  std::mt19937_64 rng(12);
  const auto r = random_circuit(5, 80, rng);
  CHECK(r.tally() == r.recount());

  Circuit c;
  const auto q = c.add_register("q", 3);
  c.h(q[0]);
  c.h(q[1]);
  c.cnot(q[0], q[2]);
  c.swap(q[1], q[2]);
  c.toffoli(q[0], q[1], q[2]);
  c.x(q[0], {q[1], q[2]});
  c.cr(2, q[0], q[1]);
  CHECK(c.tally().at("CNOT") == 4);
  CHECK(c.tally().at("Toffoli") == 2);
  CHECK(c.tally().at("H") == 2);
  CHECK(c.tally().at("CR") == 1);
  CHECK(c.depth() == 8);
  const std::string text = c.to_text();
  CHECK(text.find("# reg q 0 3\n") == 0);
  CHECK(text.find("CNOT 2 0 -\n") != std::string::npos);
  CHECK(text.find("Toffoli 2 0,1 -\n") != std::string::npos);
  CHECK(text.find("CR 1 0 angle=") != std::string::npos);
}

TEST_CASE("register helpers") {
  Register r{"r", 3, 4};
  CHECK(register_value(0b1011000, r) == 0b1011);
  CHECK(with_register(0, r, 0b0101) == 0b0101000);
  CHECK(r.bits() == std::vector<int>{3, 4, 5, 6});
}
