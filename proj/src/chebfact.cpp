#include "nuqft/chebfact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nuqft::chebfact {

double bessel_J(int nu, double x) {
  if (nu < 0) throw std::invalid_argument("bessel_J: negative order");
  if (std::abs(x) > 4.0) throw std::domain_error("bessel_J: |x| > 4");
  const double h = std::abs(x) / 2.0;
  double term = 1.0;
  for (int i = 1; i <= nu; ++i) term *= h / i;
  double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= -(h * h) / ((k + 1.0) * (nu + k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  if (x < 0 && (nu % 2 == 1)) sum = -sum;
  return sum;
}

CMatrix alpha_table(int K, double gamma) {
  if (K < 1) throw std::invalid_argument("alpha_table: K must be >= 1");
  const double arg = -gamma * pi / 2.0;
  const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  CMatrix a = CMatrix::Zero(K, K);
  for (int q = 0; q < K; ++q) {
    for (int r = 0; r < K; ++r) {
      if ((q + r) % 2 != 0) continue;
      // J_{(r-q)/2} for negative order via J_{-k} = (-1)^k J_k
      const int lo = (r - q) / 2;
      double jlo = bessel_J(std::abs(lo), arg);
      if (lo < 0 && (-lo) % 2 == 1) jlo = -jlo;
      Complex v = 4.0 * ipow[r % 4] * bessel_J((q + r) / 2, arg) * jlo;
      if (q == 0 && r == 0)
        v /= 4.0;
      else if (q == 0 || r == 0)
        v /= 2.0;
      a(q, r) = v;
    }
  }
  return a;
}

int nearest_grid(double t, int n) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("nearest_grid: t outside [0,1)");
  const long long N = 1LL << n;
  long long s = static_cast<long long>(std::floor(t * N + 0.5));
  if (s == N) s = 0;
  return static_cast<int>(s);
}

SampleGrid SampleGrid::from_points(int n, const RVector& t) {
  if (n < 1 || n > 20) throw std::invalid_argument("grid: n out of range");
  const int N = 1 << n;
  if (t.size() != N) throw std::invalid_argument("grid: expected 2^n points");
  SampleGrid g;
  g.n = n;
  g.t = t;
  g.s.resize(N);
  g.offset.resize(N);
  g.counts = IVector::Zero(N);
  for (int j = 0; j < N; ++j) {
    const int s = nearest_grid(t(j), n);
    g.s(j) = s;
    double off = t(j) - static_cast<double>(s) / N;
    if (off > 0.5) off -= 1.0;
    g.offset(j) = off;
    g.counts(s) += 1;
  }
  g.c_max = g.counts.maxCoeff();
  return g;
}

double LowRankPlan::alpha_prime() const {
  double a = 0;
  for (int r = 0; r < K; ++r) a += weight(r) * alpha_row_norms(r);
  return a;
}

LowRankPlan build_plan(const SampleGrid& grid, int K) {
  const int N = grid.N();
  LowRankPlan p;
  p.K = K;
  p.gamma = 0.5;
  p.alpha = alpha_table(K, p.gamma);
  p.alpha_row_norms = p.alpha.cwiseAbs().colwise().sum().transpose();
  p.u = CMatrix::Zero(N, K);
  p.v = RMatrix::Zero(N, K);
  for (int j = 0; j < N; ++j) {
    double y = 2.0 * N * grid.offset(j);
    if (std::abs(y) > 1.0 + 1e-9) throw std::domain_error("build_plan: offset outside the grid cell");
    y = std::clamp(y, -1.0, 1.0);
    const Complex phase = std::polar(1.0, -pi * N * grid.offset(j));
    for (int r = 0; r < K; ++r) {
      Complex acc = 0;
      for (int q = 0; q < K; ++q) acc += p.alpha(q, r) * cheb_T(q, y);
      p.u(j, r) = acc * phase;
    }
  }
  for (int k = 0; k < N; ++k) {
    const double x = 2.0 * k / N - 1.0;
    p.v(k, 0) = 0.5;
    for (int r = 1; r < K; ++r) p.v(k, r) = cheb_T(r, x);
  }
  return p;
}

CMatrix offset_kernel(const SampleGrid& grid) {
  const int N = grid.N();
  CMatrix b(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) b(j, k) = std::polar(1.0, -2.0 * pi * grid.offset(j) * k);
  return b;
}

CMatrix offset_kernel_lowrank(const LowRankPlan& plan) {
  const int N = plan.N();
  CMatrix b = CMatrix::Zero(N, N);
  for (int r = 0; r < plan.K; ++r)
    b += LowRankPlan::weight(r) * plan.u.col(r) * plan.v.col(r).cast<Complex>().transpose();
  return b;
}

double truncation_error(const SampleGrid& grid, const LowRankPlan& plan) {
  return (offset_kernel(grid) - offset_kernel_lowrank(plan)).cwiseAbs().maxCoeff();
}

int smallest_rank(const SampleGrid& grid, double tol, int k_max) {
  for (int K = 1; K <= k_max; ++K)
    if (truncation_error(grid, build_plan(grid, K)) <= tol) return K;
  throw std::runtime_error("smallest_rank: tolerance not reached");
}

CVector dft_direct(const CVector& x) {
  const Eigen::Index N = x.size();
  CVector y = CVector::Zero(N);
  for (Eigen::Index k = 0; k < N; ++k) {
    Complex acc = 0;
    for (Eigen::Index j = 0; j < N; ++j)
      acc += std::polar(1.0, -2.0 * pi * static_cast<double>((j * k) % N) / N) * x(j);
    y(k) = acc;
  }
  return y;
}

CVector fft_radix2(const CVector& x) {
  const Eigen::Index N = x.size();
  if (N == 0 || (N & (N - 1)) != 0) throw std::invalid_argument("fft_radix2: length must be a power of two");
  CVector a = x;
  for (Eigen::Index i = 1, j = 0; i < N; ++i) {
    Eigen::Index bit = N >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a(i), a(j));
  }
  for (Eigen::Index len = 2; len <= N; len <<= 1) {
    for (Eigen::Index i = 0; i < N; i += len) {
      for (Eigen::Index k = 0; k < len / 2; ++k) {
        const Complex w = std::polar(1.0, -2.0 * pi * static_cast<double>(k) / len);
        const Complex u = a(i + k);
        const Complex v = a(i + k + len / 2) * w;
        a(i + k) = u + v;
        a(i + k + len / 2) = u - v;
      }
    }
  }
  return a;
}

CVector dft(const CVector& x) { return x.size() <= 64 ? dft_direct(x) : fft_radix2(x); }

CMatrix dft_matrix(int N, Normalization norm) {
  CMatrix f(N, N);
  const double scale = norm == Normalization::unitary ? 1.0 / std::sqrt(double(N)) : 1.0;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k)
      f(j, k) = scale * std::polar(1.0, -2.0 * pi * static_cast<double>((1LL * j * k) % N) / N);
  return f;
}

namespace {
double scale_of(Normalization norm, int N) {
  return norm == Normalization::unitary ? 1.0 / std::sqrt(double(N)) : 1.0;
}
void check_length(const SampleGrid& grid, const CVector& x) {
  if (x.size() != grid.N()) throw std::invalid_argument("signal length does not match grid");
}
}  // namespace

CVector nudft2_exact(const SampleGrid& grid, const CVector& x, Normalization norm) {
  check_length(grid, x);
  const int N = grid.N();
  CVector out = CVector::Zero(N);
  for (int k = 0; k < N; ++k) {
    Complex acc = 0;
    for (int j = 0; j < N; ++j) {
      const double ph = std::fmod(grid.t(j) * k, 1.0);
      acc += std::polar(1.0, -2.0 * pi * ph) * x(j);
    }
    out(k) = acc * scale_of(norm, N);
  }
  return out;
}

CMatrix nudft2_matrix(const SampleGrid& grid, Normalization norm) {
  return materialize([&](const CVector& e) { return nudft2_exact(grid, e, norm); }, grid.N());
}

CVector nudft2_lowrank(const LowRankPlan& plan, const SampleGrid& grid, const CVector& x,
                       Normalization norm) {
  check_length(grid, x);
  const int N = grid.N();
  CVector out = CVector::Zero(N);
  for (int r = 0; r < plan.K; ++r) {
    CVector z = CVector::Zero(N);
    for (int j = 0; j < N; ++j) z(grid.s(j)) += plan.u(j, r) * x(j);
    out += LowRankPlan::weight(r) * plan.v.col(r).cast<Complex>().cwiseProduct(dft(z));
  }
  return out * scale_of(norm, N);
}

CVector nudft1_apply(const LowRankPlan& plan, const SampleGrid& grid, const CVector& x,
                     Normalization norm) {
  check_length(grid, x);
  const int N = grid.N();
  CVector out = CVector::Zero(N);
  for (int r = 0; r < plan.K; ++r) {
    // F is symmetric, so F^T is the forward transform itself.
    const CVector z = dft(plan.v.col(r).cast<Complex>().cwiseProduct(x));
    for (int j = 0; j < N; ++j) out(j) += LowRankPlan::weight(r) * plan.u(j, r) * z(grid.s(j));
  }
  return out * scale_of(norm, N);
}

}  // namespace nuqft::chebfact
