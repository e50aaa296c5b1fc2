#include "nuqft/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nuqft::qcirc {

std::string Gate::type() const {
  const auto c = controls.size();
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return c == 0 ? "X" : c == 1 ? "CNOT" : c == 2 ? "Toffoli" : "MCX";
    case GateKind::Phase: return c == 0 ? "P" : "CR";
    case GateKind::RX: return c == 0 ? "RX" : "CRX";
    case GateKind::RZ: return c == 0 ? "RZ" : "CRZ";
    case GateKind::Oracle: return "Oracle";
    case GateKind::Unitary: return "Unitary";
  }
  return "?";
}

std::vector<int> Gate::qubits() const {
  std::vector<int> q = targets;
  q.insert(q.end(), controls.begin(), controls.end());
  q.insert(q.end(), inputs.begin(), inputs.end());
  return q;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::Phase:
    case GateKind::RX:
    case GateKind::RZ: g.angle = -angle; break;
    case GateKind::Unitary: g.matrix = std::make_shared<const CMatrix>(matrix->adjoint()); break;
    default: break;
  }
  return g;
}

Eigen::Matrix2cd Gate::matrix2() const {
  Eigen::Matrix2cd m;
  const Complex i(0, 1);
  switch (kind) {
    case GateKind::H: m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Phase: m << 1, 0, 0, std::polar(1.0, angle); break;
    case GateKind::RX:
      m << std::cos(angle), -i * std::sin(angle), -i * std::sin(angle), std::cos(angle);
      break;
    case GateKind::RZ: m << std::polar(1.0, -angle), 0, 0, std::polar(1.0, angle); break;
    default: throw std::logic_error("matrix2: not a single-target gate");
  }
  return m;
}

std::vector<int> Register::bits() const {
  std::vector<int> b(width);
  for (int i = 0; i < width; ++i) b[i] = offset + i;
  return b;
}

Register Circuit::add_register(const std::string& name, int width) {
  if (width < 0) throw std::invalid_argument("register width");
  if (has_register(name)) throw std::invalid_argument("duplicate register " + name);
  Register r{name, nq_, width};
  regs_.push_back(r);
  nq_ += width;
  return r;
}

const Register& Circuit::reg(const std::string& name) const {
  for (const auto& r : regs_)
    if (r.name == name) return r;
  throw std::out_of_range("no register " + name);
}

bool Circuit::has_register(const std::string& name) const {
  return std::any_of(regs_.begin(), regs_.end(), [&](const Register& r) { return r.name == name; });
}

void Circuit::push(Gate g) {
  const auto q = g.qubits();
  std::set<int> seen;
  for (int b : q) {
    if (b < 0 || b >= nq_) throw std::out_of_range("gate qubit outside layout");
    if (!seen.insert(b).second) throw std::invalid_argument("gate qubits must be distinct");
  }
  if (g.targets.empty()) throw std::invalid_argument("gate without target");
  ++tally_[g.type()];
  gates_.push_back(std::move(g));
}

void Circuit::h(int q) { push(Gate{GateKind::H, {q}}); }

void Circuit::x(int q, std::vector<int> controls) { push(Gate{GateKind::X, {q}, std::move(controls)}); }

void Circuit::swap(int a, int b) {
  cnot(a, b);
  cnot(b, a);
  cnot(a, b);
}

void Circuit::phase(double phi, int target, std::vector<int> controls) {
  push(Gate{GateKind::Phase, {target}, std::move(controls), phi});
}

void Circuit::cr(int m, int control, int target) {
  phase(-2.0 * pi / std::ldexp(1.0, m), target, {control});
}

void Circuit::rx(double theta, int target, std::vector<int> controls) {
  push(Gate{GateKind::RX, {target}, std::move(controls), theta});
}

void Circuit::rz(double theta, int target, std::vector<int> controls) {
  push(Gate{GateKind::RZ, {target}, std::move(controls), theta});
}

void Circuit::oracle(const std::string& label, std::vector<int> inputs, std::vector<int> outputs, Table f) {
  Gate g{GateKind::Oracle, std::move(outputs)};
  g.label = label;
  g.inputs = std::move(inputs);
  g.table = std::make_shared<const Table>(std::move(f));
  push(std::move(g));
}

void Circuit::unitary(const std::string& label, const CMatrix& u, std::vector<int> targets) {
  const long long dim = 1LL << targets.size();
  if (u.rows() != dim || u.cols() != dim) throw std::invalid_argument("unitary size does not match targets");
  Gate g{GateKind::Unitary, std::move(targets)};
  g.label = label;
  g.matrix = std::make_shared<const CMatrix>(u);
  push(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.nq_ > nq_) throw std::invalid_argument("append: layout mismatch");
  for (const auto& g : other.gates_) push(g);
}

Circuit Circuit::empty_like() const {
  Circuit c;
  c.regs_ = regs_;
  c.nq_ = nq_;
  return c;
}

Circuit Circuit::inverse() const {
  Circuit c = empty_like();
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) c.push(it->inverse());
  return c;
}

std::map<std::string, long long> Circuit::recount() const {
  std::map<std::string, long long> t;
  for (const auto& g : gates_) ++t[g.type()];
  return t;
}

std::map<std::string, long long> Circuit::oracle_calls() const {
  std::map<std::string, long long> t;
  for (const auto& g : gates_)
    if (g.kind == GateKind::Oracle || g.kind == GateKind::Unitary) ++t[g.label];
  return t;
}

long long Circuit::depth() const {
  std::vector<long long> level(nq_, 0);
  long long d = 0;
  for (const auto& g : gates_) {
    long long l = 0;
    const auto q = g.qubits();
    for (int b : q) l = std::max(l, level[b]);
    ++l;
    for (int b : q) level[b] = l;
    d = std::max(d, l);
  }
  return d;
}

namespace {
std::string join(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}
}  // namespace

std::string Circuit::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& r : regs_) os << "# reg " << r.name << " " << r.offset << " " << r.width << "\n";
  for (const auto& g : gates_) {
    os << g.type() << " " << join(g.targets) << " " << join(g.controls);
    switch (g.kind) {
      case GateKind::Phase:
      case GateKind::RX:
      case GateKind::RZ: os << " angle=" << g.angle; break;
      case GateKind::Oracle: os << " " << g.label << " in=" << join(g.inputs); break;
      case GateKind::Unitary: os << " " << g.label; break;
      default: os << " -"; break;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace nuqft::qcirc
