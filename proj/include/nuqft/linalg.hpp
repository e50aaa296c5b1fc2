#pragma once

#include "nuqft/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cstdint>
#include <random>

namespace nuqft {

template <typename Derived>
double max_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : static_cast<double>(a.cwiseAbs().maxCoeff());
}

/// Largest singular value by power iteration on A^H A with seeded restarts.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& a, double tol = 1e-10, int restarts = 5,
                     std::uint64_t seed = 0x5eed) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const auto gram = (a.adjoint() * a).eval();
  const Eigen::Index n = gram.cols();
  if (n == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  double best = 0.0;
  for (int s = 0; s < restarts; ++s) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if constexpr (Eigen::NumTraits<Scalar>::IsComplex)
        v(i) = Scalar(dist(rng), dist(rng));
      else
        v(i) = Scalar(dist(rng));
    }
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 100000; ++it) {
      Vec w = gram * v;
      const double next = std::abs(v.dot(w));
      const double wn = w.norm();
      if (wn == 0.0) {
        lambda = 0.0;
        break;
      }
      v = w / wn;
      const bool done = std::abs(next - lambda) <= tol * std::max(next, 1e-300);
      lambda = next;
      if (done && it > 2) break;
    }
    best = std::max(best, lambda);
  }
  return std::sqrt(best);
}

template <typename Derived>
double spectral_norm_svd(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(a.eval());
  return svd.singularValues()(0);
}

}  // namespace nuqft
