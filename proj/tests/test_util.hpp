#pragma once

#include "nuqft/chebfact.hpp"
#include "nuqft/io.hpp"

#include <random>
#include <string>
#include <vector>

namespace testutil {

inline std::string fixture(const std::string& name) { return std::string(NUQFT_FIXTURE_DIR) + "/" + name + ".json"; }

inline nuqft::chebfact::SampleGrid load(const std::string& name) { return nuqft::io::read_grid(fixture(name)); }

inline const std::vector<std::string>& n3_fixtures() {
  static const std::vector<std::string> names = {"jitter_n3_a", "jitter_n3_b", "jitter_n3_c", "random_n3",
                                                 "clustered_n3"};
  return names;
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names = {"jitter_n3_a", "jitter_n3_b", "jitter_n3_c", "random_n3",
                                                 "clustered_n3", "jitter_n2",   "random_n2",   "jitter_n1"};
  return names;
}

inline nuqft::chebfact::SampleGrid uniform_grid(int n) {
  const int N = 1 << n;
  nuqft::RVector t(N);
  for (int j = 0; j < N; ++j) t(j) = double(j) / N;
  return nuqft::chebfact::SampleGrid::from_points(n, t);
}

inline nuqft::chebfact::SampleGrid random_grid(int n, std::uint64_t seed) {
  const int N = 1 << n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  nuqft::RVector t(N);
  for (int j = 0; j < N; ++j) t(j) = u(rng);
  return nuqft::chebfact::SampleGrid::from_points(n, t);
}

inline nuqft::CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  nuqft::CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = {d(rng), d(rng)};
  return m;
}

inline nuqft::CVector random_vector(int n, std::mt19937_64& rng) { return random_matrix(n, 1, rng).col(0); }

inline nuqft::CMatrix random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<nuqft::CMatrix> qr(random_matrix(n, n, rng));
  return qr.householderQ() * nuqft::CMatrix::Identity(n, n);
}

}  // namespace testutil
