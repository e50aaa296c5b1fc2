#pragma once

#include "nuqft/types.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nuqft::qcirc {

enum class GateKind { H, X, Phase, RX, RZ, Oracle, Unitary };

using Table = std::function<std::uint64_t(std::uint64_t)>;

/// One gate. Targets and oracle inputs are listed least significant bit first.
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::vector<int> controls;
  double angle = 0.0;
  std::string label;
  std::vector<int> inputs;              // Oracle
  std::shared_ptr<const Table> table;   // Oracle: |in>|out> -> |in>|out ^ f(in)>
  std::shared_ptr<const CMatrix> matrix;  // Unitary

  /// Tally key: H, X, CNOT, Toffoli, MCX, P, CR, RX, CRX, RZ, CRZ, Oracle, Unitary.
  std::string type() const;
  std::vector<int> qubits() const;
  Gate inverse() const;
  /// 2x2 action on the target for single-target kinds.
  Eigen::Matrix2cd matrix2() const;
};

struct Register {
  std::string name;
  int offset = 0;
  int width = 0;
  int operator[](int i) const { return offset + i; }
  std::vector<int> bits() const;
};

class Circuit {
 public:
  Register add_register(const std::string& name, int width);
  const Register& reg(const std::string& name) const;
  bool has_register(const std::string& name) const;
  const std::vector<Register>& registers() const { return regs_; }
  int num_qubits() const { return nq_; }

  void h(int q);
  void x(int q, std::vector<int> controls = {});
  void cnot(int c, int t) { x(t, {c}); }
  void toffoli(int c0, int c1, int t) { x(t, {c0, c1}); }
  void swap(int a, int b);
  /// diag(1, e^{i phi}) on the target.
  void phase(double phi, int target, std::vector<int> controls = {});
  /// CR_m: phase exp(-2 pi i / 2^m).
  void cr(int m, int control, int target);
  /// exp(-i theta sigma_X)
  void rx(double theta, int target, std::vector<int> controls = {});
  /// exp(-i theta sigma_Z)
  void rz(double theta, int target, std::vector<int> controls = {});
  void oracle(const std::string& label, std::vector<int> inputs, std::vector<int> outputs, Table f);
  void unitary(const std::string& label, const CMatrix& u, std::vector<int> targets);

  void append(const Circuit& other);
  Circuit inverse() const;
  /// Same registers, no gates.
  Circuit empty_like() const;

  const std::vector<Gate>& gates() const { return gates_; }
  const std::map<std::string, long long>& tally() const { return tally_; }
  std::map<std::string, long long> recount() const;
  std::map<std::string, long long> oracle_calls() const;
  long long depth() const;
  std::string to_text() const;

 private:
  void push(Gate g);
  std::vector<Register> regs_;
  std::vector<Gate> gates_;
  std::map<std::string, long long> tally_;
  int nq_ = 0;
};

}  // namespace nuqft::qcirc
