#include "nuqft/fxp.hpp"

#include <cmath>
#include <stdexcept>

namespace nuqft::fxp {

namespace {
void check_width(int k) {
  if (k < 0 || k > 62) throw std::invalid_argument("fixed point width out of range");
}
std::uint64_t mask(int k) { return k >= 64 ? ~0ULL : ((1ULL << k) - 1); }
}  // namespace

long double FixedPoint::exact() const {
  const long double v = std::ldexp(static_cast<long double>(magnitude), -frac_bits);
  return negative ? -v : v;
}

double FixedPoint::value() const { return static_cast<double>(exact()); }

int FixedPoint::frac_bit(int i) const {
  if (i < 1 || i > frac_bits) throw std::out_of_range("frac_bit index");
  return static_cast<int>((magnitude >> (frac_bits - i)) & 1ULL);
}

std::string FixedPoint::dump() const {
  std::string out(1, negative ? '1' : '0');
  if (int_bits > 0) {
    out += ':';
    for (int i = int_bits - 1; i >= 0; --i) out += ((magnitude >> (frac_bits + i)) & 1ULL) ? '1' : '0';
  }
  out += '.';
  for (int i = 1; i <= frac_bits; ++i) out += frac_bit(i) ? '1' : '0';
  return out;
}

FixedPoint fp_encode(double x, int k) {
  check_width(k);
  if (!(x >= 0.0 && x < 1.0)) throw std::range_error("fp_encode: x outside [0,1)");
  FixedPoint f;
  f.frac_bits = k;
  f.magnitude = static_cast<std::uint64_t>(std::floor(std::ldexp(x, k)));
  return f;
}

FixedPoint fp_neg(const FixedPoint& x) {
  const int k = x.frac_bits;
  check_width(k);
  if (x.negative || x.magnitude > mask(k)) throw std::domain_error("fp_neg: x outside [0,1)");
  if (x.magnitude == 0) throw std::overflow_error("fp_neg: 1 - 0 is not representable");
  FixedPoint out = x;
  out.magnitude = ((~x.magnitude) & mask(k)) + 1;
  return out;
}

FixedPoint fp_subtract(const FixedPoint& x, const FixedPoint& y) {
  const int k = x.frac_bits;
  check_width(k);
  if (y.frac_bits != k) throw std::invalid_argument("fp_subtract: width mismatch");
  if (x.negative || y.negative || x.magnitude > mask(k) || y.magnitude > mask(k))
    throw std::domain_error("fp_subtract: operands outside [0,1)");
  const std::uint64_t w = mask(k + 1);
  const std::uint64_t neg_y = (((~y.magnitude) & w) + 1) & w;
  const std::uint64_t z = (x.magnitude + neg_y) & w;
  FixedPoint out;
  out.frac_bits = k;
  out.negative = (z >> k) & 1ULL;
  out.magnitude = out.negative ? ((w + 1) - z) : z;
  return out;
}

Rounded fp_round_Nt(const FixedPoint& t, int n) {
  const int m = t.frac_bits;
  if (m < n + 1) throw std::invalid_argument("fp_round_Nt: requires m >= n + 1");
  if (t.negative || t.magnitude > mask(m)) throw std::domain_error("fp_round_Nt: t outside [0,1)");
  const std::uint64_t N = 1ULL << n;
  const std::uint64_t top = t.magnitude >> (m - n);
  const std::uint64_t carry = (t.magnitude >> (m - n - 1)) & 1ULL;
  Rounded r;
  r.wrapped = top + carry == N;
  r.s = static_cast<int>((top + carry) % N);
  r.s_over_N.frac_bits = m;
  r.s_over_N.magnitude = static_cast<std::uint64_t>(r.s) << (m - n);
  return r;
}

FixedPoint fp_arccos(const FixedPoint& x, int p) {
  if (p < 2 || p > 62) throw std::invalid_argument("fp_arccos: p out of range");
  const long double v = x.exact();
  if (std::fabs(v) > 1.0L) throw std::domain_error("fp_arccos: |x| > 1");
  const long double theta = std::acos(v);
  FixedPoint out;
  out.frac_bits = p - 2;
  out.int_bits = 2;
  out.magnitude = static_cast<std::uint64_t>(std::llround(std::ldexp(theta, p - 2)));
  return out;
}

FixedPoint fp_shift(const FixedPoint& x, int e) {
  FixedPoint out = x;
  out.frac_bits = x.frac_bits - e;
  out.int_bits = x.int_bits + e;
  if (out.frac_bits < 0) {
    out.magnitude <<= -out.frac_bits;
    out.frac_bits = 0;
  }
  if (out.int_bits < 0) out.int_bits = 0;
  return out;
}

FixedPoint grid_node(int n, int j) {
  const long long N = 1LL << n;
  if (j < 0 || j >= N) throw std::out_of_range("grid_node: index");
  // 2j/N - 1 = (j - N/2) / 2^(n-1)
  const long long num = j - N / 2;
  FixedPoint x;
  x.negative = num < 0;
  x.magnitude = static_cast<std::uint64_t>(num < 0 ? -num : num);
  x.frac_bits = n - 1;
  x.int_bits = 1;
  return x;
}

QuantizedOffset quantize_offset(double t, int n, int m, int p) {
  QuantizedOffset q;
  q.t = fp_encode(t, m);
  q.round = fp_round_Nt(q.t, n);
  if (q.round.wrapped) {
    // t~ - 1 = -(1 - t~)
    q.y = fp_neg(q.t);
    q.y.negative = true;
  } else {
    q.y = fp_subtract(q.t, q.round.s_over_N);
  }
  q.scaled = fp_shift(q.y, n + 1);
  if (p > 0) q.theta = fp_arccos(q.scaled, p);
  return q;
}

}  // namespace nuqft::fxp
