#pragma once

#include <cstdint>
#include <string>

namespace nuqft::fxp {

/// Sign-magnitude fixed point: value = (-1)^negative * magnitude / 2^frac_bits.
struct FixedPoint {
  bool negative = false;
  std::uint64_t magnitude = 0;
  int frac_bits = 0;
  int int_bits = 0;

  double value() const;
  long double exact() const;
  /// Fractional bit i (1-based, MSB first).
  int frac_bit(int i) const;
  /// "s.b1b2...bk", integer bits (if any) go before the point after a colon.
  std::string dump() const;
  bool operator==(const FixedPoint&) const = default;
};

FixedPoint fp_encode(double x, int k);
/// 1 - x via complement and +2^-k. Throws std::overflow_error for x = 0.
FixedPoint fp_neg(const FixedPoint& x);
/// Signed x - y on k+1 bits by two's complement.
FixedPoint fp_subtract(const FixedPoint& x, const FixedPoint& y);

struct Rounded {
  int s = 0;
  FixedPoint s_over_N;  // m-bit encoding of s/N (s already reduced mod N)
  bool wrapped = false;  // round(N t) was N
};
Rounded fp_round_Nt(const FixedPoint& t, int n);

/// arccos quantized round-to-nearest on p bits with 2 integer bits.
FixedPoint fp_arccos(const FixedPoint& x, int p);

/// Reinterpret x scaled by 2^e (moves the binary point).
FixedPoint fp_shift(const FixedPoint& x, int e);

/// x_j = 2j/N - 1 on the (n-1)-bit fraction lattice.
FixedPoint grid_node(int n, int j);

/// Quantized offset chain for one sample: t~, s~, y~ = t~ - s~/N, Y~ = 2N y~, theta^.
/// theta is skipped when p <= 0.
struct QuantizedOffset {
  FixedPoint t;
  Rounded round;
  FixedPoint y;
  FixedPoint scaled;
  FixedPoint theta;
};
QuantizedOffset quantize_offset(double t, int n, int m, int p);

}  // namespace nuqft::fxp
