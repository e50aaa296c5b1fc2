#pragma once

#include "nuqft/types.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nuqft::chebfact {

namespace detail {
template <typename Scalar>
Scalar clamp_unit(Scalar x) {
  using std::abs;
  if (abs(x) > Scalar(1) + Scalar(1e-12)) throw std::domain_error("Chebyshev argument outside [-1,1]");
  if (x > Scalar(1)) return Scalar(1);
  if (x < Scalar(-1)) return Scalar(-1);
  return x;
}

template <typename Scalar>
Scalar recurrence(int r, Scalar x, Scalar first) {
  if (r < 0) throw std::invalid_argument("negative Chebyshev degree");
  Scalar prev = Scalar(1);
  if (r == 0) return prev;
  Scalar cur = first;
  for (int k = 1; k < r; ++k) {
    Scalar next = Scalar(2) * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}
}  // namespace detail

/// Chebyshev polynomial of the first kind by three-term recurrence.
template <typename Scalar>
Scalar cheb_T(int r, Scalar x) {
  x = detail::clamp_unit(x);
  return detail::recurrence(r, x, x);
}

/// Second kind: S_0 = 1, S_1 = 2x.
template <typename Scalar>
Scalar cheb_S(int r, Scalar x) {
  x = detail::clamp_unit(x);
  return detail::recurrence(r, x, Scalar(2) * x);
}

double bessel_J(int nu, double x);

/// K x K table of alpha'_{qr} (row q, column r).
CMatrix alpha_table(int K, double gamma);

/// Nearest uniform grid index, ties round up, N wraps to 0.
int nearest_grid(double t, int n);

struct SampleGrid {
  int n = 0;
  RVector t;
  IVector s;
  RVector offset;  // t_j - s_j/N taken on the circle, |offset| <= 1/(2N)
  IVector counts;
  int c_max = 0;

  int N() const { return 1 << n; }
  static SampleGrid from_points(int n, const RVector& t);
};

struct LowRankPlan {
  int K = 0;
  double gamma = 0.5;
  CMatrix alpha;  // K x K, alpha(q, r)
  CMatrix u;      // N x K, column r is u_r
  RMatrix v;      // N x K, column r is v_r
  RVector alpha_row_norms;

  // v_0 carries 1/2 while alpha' already absorbs the halvings, so term 0 counts twice.
  static double weight(int r) { return r == 0 ? 2.0 : 1.0; }
  double alpha_prime() const;
  int N() const { return static_cast<int>(v.rows()); }
};

LowRankPlan build_plan(const SampleGrid& grid, int K);

/// Offset kernel B_{jk} = exp(-2 pi i (t_j - s_j/N) k).
CMatrix offset_kernel(const SampleGrid& grid);
/// Rank-K approximation sum_r w_r u_r(j) v_r(k) of the offset kernel.
CMatrix offset_kernel_lowrank(const LowRankPlan& plan);
/// max_{j,k} of the truncation error of the offset kernel.
double truncation_error(const SampleGrid& grid, const LowRankPlan& plan);

CVector dft_direct(const CVector& x);
CVector fft_radix2(const CVector& x);
/// Raw forward DFT, direct below N = 64 and radix-2 above.
CVector dft(const CVector& x);
CMatrix dft_matrix(int N, Normalization norm = Normalization::unitary);

/// X_k = sum_j exp(-2 pi i t_j k) x_j.
CVector nudft2_exact(const SampleGrid& grid, const CVector& x,
                     Normalization norm = Normalization::unitary);
CMatrix nudft2_matrix(const SampleGrid& grid, Normalization norm = Normalization::unitary);

/// sum_r w_r D_{v_r} F M_s D_{u_r} x
CVector nudft2_lowrank(const LowRankPlan& plan, const SampleGrid& grid, const CVector& x,
                       Normalization norm = Normalization::unitary);
/// Transposed factorization sum_r w_r D_{u_r} M_s^T F^T D_{v_r} x.
CVector nudft1_apply(const LowRankPlan& plan, const SampleGrid& grid, const CVector& x,
                     Normalization norm = Normalization::unitary);

/// Smallest K with truncation_error <= tol, searching up to k_max.
int smallest_rank(const SampleGrid& grid, double tol, int k_max = 64);

template <typename Apply>
CMatrix materialize(Apply&& f, int N) {
  CMatrix m(N, N);
  for (int c = 0; c < N; ++c) m.col(c) = f(CVector::Unit(N, c));
  return m;
}

}  // namespace nuqft::chebfact
