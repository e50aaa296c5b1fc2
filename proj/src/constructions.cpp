#include "nuqft/constructions.hpp"

#include "nuqft/fxp.hpp"

#include <cmath>
#include <stdexcept>

namespace nuqft::qcirc {

namespace {

std::vector<int> slice(const Register& r, int from, int to) {
  std::vector<int> b;
  for (int i = from; i < to; ++i) b.push_back(r[i]);
  return b;
}

std::uint64_t angle_table(const fxp::FixedPoint& x, int p) {
  if (std::fabs(x.exact()) > 1.0L) return 0;
  return fxp::fp_arccos(x, p).magnitude;
}

// theta bit k carries weight 2^(k-(p-2))
double theta_weight(int k, int p) { return std::ldexp(1.0, k - (p - 2)); }

}  // namespace

int padded_rank(int K) { return 1 << ceil_log2(K); }

Circuit qft_circuit(int n) {
  if (n < 1) throw std::invalid_argument("qft_circuit: n >= 1");
  Circuit c;
  const Register q = c.add_register("index", n);
  for (int i = n - 1; i >= 0; --i) {
    c.h(q[i]);
    for (int j = i - 1; j >= 0; --j) c.cr(i - j + 1, q[j], q[i]);
  }
  for (int i = 0; i < n / 2; ++i) c.swap(q[i], q[n - 1 - i]);
  return c;
}

Circuit build_Uv0(int n, IndexPrep prep) {
  if (n < 1) throw std::invalid_argument("build_Uv0: n >= 1");
  Circuit c;
  const Register comp = c.add_register("comp", 1);
  const Register idx = c.add_register("index", n);
  if (prep == IndexPrep::hadamard)
    for (int b : idx.bits()) c.h(b);
  c.rx(-pi / 3.0, comp[0]);
  return c;
}

void append_increment(Circuit& c, const std::vector<int>& bits, const std::vector<int>& controls) {
  for (int i = static_cast<int>(bits.size()) - 1; i >= 0; --i) {
    std::vector<int> ctl = controls;
    ctl.insert(ctl.end(), bits.begin(), bits.begin() + i);
    c.x(bits[i], ctl);
  }
}

void append_add(Circuit& c, const std::vector<int>& a, const std::vector<int>& b, int carry, int overflow) {
  const size_t w = a.size();
  if (b.size() != w || w == 0) throw std::invalid_argument("append_add: widths");
  auto maj = [&](int x, int y, int z) {
    c.cnot(z, y);
    c.cnot(z, x);
    c.toffoli(x, y, z);
  };
  auto uma = [&](int x, int y, int z) {
    c.toffoli(x, y, z);
    c.cnot(z, x);
    c.cnot(x, y);
  };
  maj(carry, b[0], a[0]);
  for (size_t i = 1; i < w; ++i) maj(a[i - 1], b[i], a[i]);
  if (overflow >= 0) c.cnot(a[w - 1], overflow);
  for (size_t i = w - 1; i >= 1; --i) uma(a[i - 1], b[i], a[i]);
  uma(carry, b[0], a[0]);
}

void append_subtract(Circuit& c, const std::vector<int>& t, const std::vector<int>& y, int carry) {
  const size_t m = t.size();
  if (y.size() != m + 1) throw std::invalid_argument("append_subtract: y must have m+1 bits");
  // T - S = ~(S + ~T) on m+1 bits, where ~T sign-extends to ~T + 2^m
  for (int b : t) c.x(b);
  append_add(c, t, std::vector<int>(y.begin(), y.begin() + m), carry, y[m]);
  c.x(y[m]);
  for (int b : y) c.x(b);
  for (int b : t) c.x(b);
}

void append_round(Circuit& c, const std::vector<int>& t, const std::vector<int>& y, int n) {
  const int m = static_cast<int>(t.size());
  if (m < n + 1 || static_cast<int>(y.size()) != m + 1) throw std::invalid_argument("append_round: widths");
  for (int k = 0; k < n; ++k) c.cnot(t[m - n + k], y[m - n + k]);
  append_increment(c, std::vector<int>(y.begin() + (m - n), y.end()), {t[m - n - 1]});
}

Circuit build_Uvr(int n, int r, int p, IndexPrep prep) {
  if (n < 1 || r < 1 || p < 2) throw std::invalid_argument("build_Uvr: needs n >= 1, r >= 1, p >= 2");
  Circuit c;
  const Register comp = c.add_register("comp", 1);
  const Register idx = c.add_register("index", n);
  const Register x = c.add_register("x", n + 1);
  const Register th = c.add_register("theta", p);
  if (prep == IndexPrep::hadamard)
    for (int b : idx.bits()) c.h(b);

  Circuit load = c.empty_like();
  for (int k = 0; k <= n - 2; ++k) load.cnot(idx[k], x[k]);
  const int top = idx[n - 1];
  load.x(top);
  for (int k = 0; k <= n - 2; ++k) load.cnot(top, x[k]);
  append_increment(load, slice(x, 0, n), {top});
  load.cnot(top, x[n]);
  load.x(top);
  load.oracle("U_arccos", x.bits(), th.bits(), [n, p](std::uint64_t v) {
    fxp::FixedPoint f;
    f.negative = (v >> n) & 1ULL;
    f.magnitude = v & ((1ULL << n) - 1);
    f.frac_bits = n - 1;
    f.int_bits = 1;
    return angle_table(f, p);
  });

  c.append(load);
  for (int k = 0; k < p; ++k) c.rx(-r * theta_weight(k, p), comp[0], {th[k]});
  c.append(load.inverse());
  return c;
}

Circuit build_Ot(const chebfact::SampleGrid& grid, int m) {
  if (m < grid.n || m > 62) throw std::invalid_argument("build_Ot: needs n <= m <= 62");
  Circuit c;
  const Register idx = c.add_register("index", grid.n);
  const Register t = c.add_register("t", m);
  std::vector<std::uint64_t> table(grid.N());
  for (int i = 0; i < grid.N(); ++i) table[i] = fxp::fp_encode(grid.t(i), m).magnitude;
  c.oracle("O_t", idx.bits(), t.bits(), [table](std::uint64_t i) { return table[i]; });
  return c;
}

Circuit build_Os(const chebfact::SampleGrid& grid, int n, int m) {
  if (n != grid.n) throw std::invalid_argument("build_Os: n does not match grid");
  if (m < n + 1) throw std::invalid_argument("build_Os: needs m >= n + 1");
  const Circuit ot = build_Ot(grid, m);
  Circuit c;
  c.add_register("index", n);
  const Register t = c.add_register("t", m);
  const Register s = c.add_register("s", m);
  const Register wrap = c.add_register("wrap", 1);
  std::vector<int> y = s.bits();
  y.push_back(wrap[0]);
  c.append(ot);
  append_round(c, t.bits(), y, n);
  c.append(ot);
  return c;
}

Circuit build_OA(int n) {
  if (n < 1) throw std::invalid_argument("build_OA: n >= 1");
  Circuit c;
  const Register i = c.add_register("i", n);
  const Register s = c.add_register("s", n);
  const Register flag = c.add_register("flag", 1);
  Circuit xnor = c.empty_like();
  for (int r = 0; r < n; ++r) xnor.cnot(i[r], s[r]);
  for (int r = 0; r < n; ++r) xnor.x(s[r]);
  c.append(xnor);
  c.x(flag[0], s.bits());
  c.append(xnor.inverse());
  return c;
}

CMatrix prep_unitary(const CVector& a) {
  const Eigen::Index d = a.size();
  CMatrix m = CMatrix::Identity(d, d);
  m.col(0) = a;
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ();
  const Complex r00 = q.col(0).dot(a);
  q.col(0) *= r00;
  return q;
}

Circuit build_Uur(const chebfact::SampleGrid& grid, int n, int m, int p, int K, int r, IndexPrep prep) {
  if (n != grid.n) throw std::invalid_argument("build_Uur: n does not match grid");
  if (m < n + 1 || p < 2 || K < 1 || r < 0 || r >= K) throw std::invalid_argument("build_Uur: parameters");
  const int N = grid.N();
  const int L = ceil_log2(K);
  const int Kp = 1 << L;

  Circuit c;
  const Register comp = c.add_register("comp", 1);
  const Register lcu = c.add_register("lcu", L);
  const Register idx = c.add_register("index", n);
  const Register t = c.add_register("t", m);
  const Register y = c.add_register("y", m + 1);
  const Register th = c.add_register("theta", p);
  const Register carry = c.add_register("carry", 1);

  if (prep == IndexPrep::hadamard)
    for (int b : idx.bits()) c.h(b);

  std::vector<std::uint64_t> tt(N);
  for (int i = 0; i < N; ++i) tt[i] = fxp::fp_encode(grid.t(i), m).magnitude;
  Circuit load = c.empty_like();
  load.oracle("O_t", idx.bits(), t.bits(), [tt](std::uint64_t i) { return tt[i]; });
  append_round(load, t.bits(), y.bits(), n);
  append_subtract(load, t.bits(), y.bits(), carry[0]);
  load.oracle("U'_arccos", y.bits(), th.bits(), [m, n, p](std::uint64_t z) {
    const bool neg = (z >> m) & 1ULL;
    fxp::FixedPoint f;
    f.negative = neg;
    f.magnitude = neg ? (1ULL << (m + 1)) - z : z;
    f.frac_bits = m - n - 1;
    return angle_table(f, p);
  });
  c.append(load);

  const CMatrix alpha = chebfact::alpha_table(K, 0.5);
  const double norm1 = alpha.col(r).cwiseAbs().sum();
  CVector right = CVector::Zero(Kp);
  for (int q = 0; q < K; ++q) right(q) = std::sqrt(alpha(q, r) / norm1);
  const CVector left = right.conjugate();
  if (L > 0) c.unitary("PREP_r", prep_unitary(right), lcu.bits());
  for (int b = 0; b < L; ++b)
    for (int k = 0; k < p; ++k) c.rx(-std::ldexp(1.0, b) * theta_weight(k, p), comp[0], {lcu[b], th[k]});
  for (int b = 0; b <= m; ++b) {
    const double w = b < m ? std::ldexp(1.0, b - m) : -1.0;
    c.rz(pi * N * w, comp[0], {y[b]});
  }
  if (L > 0) c.unitary("PREP_r", prep_unitary(left).adjoint(), lcu.bits());
  c.append(load.inverse());
  return c;
}

QubitLayout vii_layout(int n, int m, int p, int K) {
  QubitLayout l;
  const int L = ceil_log2(K);
  l.system = n;
  l.comp_u = 1;
  l.lcu_u = L;
  l.t = m;
  l.y = m + 1;
  l.theta = p;
  l.carry = 1;
  l.comp_v = 1;
  l.x = n + 1;  // theta is shared with U_u (uncomputed in between)
  l.ms = n + 3;
  l.outer_lcu = L;
  return l;
}

}  // namespace nuqft::qcirc
