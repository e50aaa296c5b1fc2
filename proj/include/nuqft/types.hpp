#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace nuqft {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using IVector = Eigen::VectorXi;

inline constexpr double pi = std::numbers::pi;

enum class Normalization { raw, unitary };

inline int ceil_log2(long long v) {
  int b = 0;
  while ((1LL << b) < v) ++b;
  return b;
}

}  // namespace nuqft
