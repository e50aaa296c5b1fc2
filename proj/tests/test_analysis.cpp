#include "nuqft/analysis.hpp"
#include "nuqft/constructions.hpp"
#include "nuqft/linalg.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace nuqft;
using namespace nuqft::analysis;
using testutil::load;

TEST_CASE("kappa examples") {
  CHECK(compute_kappa(testutil::uniform_grid(3), 6).kappa == 1.0);
  CHECK_FALSE(compute_kappa(testutil::uniform_grid(3), 6).clamped);

  RVector t(4);
  t << 1.0 / 16, 5.0 / 16, 9.0 / 16, 13.0 / 16;  // y = 2N * 1/16 = 1/2, exact on 5 bits
  const auto k = compute_kappa(chebfact::SampleGrid::from_points(2, t), 5);
  CHECK(k.kappa == doctest::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-15));
  CHECK_FALSE(k.clamped);

  RVector b(4);
  b << 0.125, 0.3, 0.5, 0.75;  // first point sits on a half-cell boundary
  const auto kb = compute_kappa(chebfact::SampleGrid::from_points(2, b), 6);
  CHECK(kb.clamped);
  const double cap = 1 - std::ldexp(1.0, -6);
  CHECK(kb.kappa == doctest::Approx(1 / std::sqrt(1 - cap * cap)));
  CHECK_THROWS_AS(compute_kappa(testutil::uniform_grid(3), 3), std::invalid_argument);
}

TEST_CASE("kappa takes the worse endpoint") {
  for (const auto& name : testutil::all_fixtures()) {
    const auto g = load(name);
    const auto k = compute_kappa(g, g.n + 5);
    CHECK(k.kappa >= 1.0);
    for (int j = 0; j < g.N(); ++j) {
      const double a = std::min(std::max(std::abs(k.y(j)), std::abs(k.y_tilde(j))), 1 - std::ldexp(1.0, -g.n - 5));
      CHECK(k.per_point(j) == doctest::Approx(1 / std::sqrt(1 - a * a)).epsilon(1e-14));
    }
  }
}

TEST_CASE("choose_params on the fixture triple") {
  // oracle values from tests/oracles/oracles.py
  const auto g = load("jitter_n3_a");
  const auto pc = choose_params(1e-3, g);
  CHECK(pc.K == 7);
  CHECK(pc.m == 22);
  CHECK(pc.p == 19);
  CHECK(pc.alpha_prime == doctest::Approx(4.04818329568242).epsilon(1e-12));
  CHECK(pc.kappa == doctest::Approx(1.22202526988938).epsilon(1e-12));
  CHECK(pc.c_max == 1);
  CHECK_FALSE(pc.kappa_clamped);
  CHECK(pc.K_asymptotic >= 1);
  const auto a = choose_params(1e-2, g), b = choose_params(1e-4, g);
  CHECK((a.K == 6 && a.m == 18 && a.p == 16));
  CHECK((b.K == 8 && b.m == 25 && b.p == 23));
}

TEST_CASE("choose_params formulas") {
  const auto g = load("jitter_n3_b");
  SUBCASE("halving epsilon raises p by one") {
    Overrides ov;
    ov.K = 6;
    double eps = 3e-3;
    for (int i = 0; i < 6; ++i, eps /= 2) CHECK(choose_params(eps / 2, g, ParamRule::proof, ov).p ==
                                                choose_params(eps, g, ParamRule::proof, ov).p + 1);
  }
  SUBCASE("proof displays") {
    const auto pc = choose_params(1e-3, g);
    const double C = pc.alpha_prime * std::sqrt(double(pc.c_max));
    CHECK(pc.p == std::max(3, int(std::ceil(std::log2(16 * C * pc.K / 1e-3)))));
    CHECK(pc.m >= std::ceil(std::log2(4 * C * (pi * 8 + 2 * 8 * pc.K * pc.kappa) / 1e-3)));
    CHECK(pc.m >= g.n + 1);
    CHECK(pc.truncation_error <= 1e-3 / (2 * std::sqrt(8.0 * pc.c_max)));
  }
  SUBCASE("uniform lattice uses kappa = 1") {
    const auto u = testutil::uniform_grid(3);
    const auto pc = choose_params(1e-3, u);
    const double C = pc.alpha_prime;
    CHECK(pc.kappa == 1.0);
    CHECK(pc.m == std::max(4, int(std::ceil(std::log2(4 * C * (pi * 8 + 2 * 8 * pc.K) / 1e-3)))));
  }
  SUBCASE("statement rule") {
    const auto pc = choose_params(1e-3, g, ParamRule::statement);
    const double C = pc.alpha_prime * std::sqrt(double(pc.c_max));
    CHECK(pc.m >= std::ceil(std::log2(8 * C * (pi * 8 + pc.K * pc.kappa) / 1e-3)));
  }
  CHECK_THROWS_AS(choose_params(0.0, g), std::invalid_argument);
  CHECK_THROWS_AS(choose_params(-1.0, g), std::invalid_argument);
  Overrides bad;
  bad.m = 2;
  CHECK_THROWS_AS(choose_params(1e-3, g, ParamRule::proof, bad), std::invalid_argument);
}

TEST_CASE("Hadamard product bound") {
  std::mt19937_64 rng(21);
  SUBCASE("all-ones B") {
    const CMatrix C = testutil::random_matrix(8, 8, rng);
    const auto nb = hadamard_norm_bound(CMatrix::Ones(8, 8), C);
    CHECK(nb.lhs == doctest::Approx(spectral_norm_svd(C)));
    CHECK(nb.lhs <= nb.rhs);
  }
  SUBCASE("identity C") {
    const CMatrix B = testutil::random_matrix(8, 8, rng);
    const auto nb = hadamard_norm_bound(B, CMatrix::Identity(8, 8));
    CHECK(nb.lhs == doctest::Approx(B.diagonal().cwiseAbs().maxCoeff()));
    CHECK(nb.lhs <= nb.rhs);
  }
  SUBCASE("random pairs") {
    int violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const int N = 4 << (trial % 3);
      const auto nb = hadamard_norm_bound(testutil::random_matrix(N, N, rng), testutil::random_matrix(N, N, rng));
      violations += nb.lhs > nb.rhs;
    }
    CHECK(violations == 0);
  }
  CHECK_THROWS_AS(hadamard_norm_bound(CMatrix::Ones(2, 2), CMatrix::Ones(3, 3)), std::invalid_argument);
}

TEST_CASE("scalar error tables") {
  SUBCASE("uniform lattice has no m-channel error") {
    const auto t = scalar_error_lemmas(testutil::uniform_grid(3), 8, 8, 6);
    for (const auto& e : t.rows) CHECK(e.exp_err == 0.0);
    CHECK(t.all_within());
  }
  SUBCASE("fixture grid at (10, 10, 8)") {
    const auto g = load("jitter_n3_c");
    const auto t = scalar_error_lemmas(g, 10, 10, 8);
    REQUIRE(t.rows.size() == 8u * 8u);
    CHECK(t.oracle_consistent);
    for (const auto& e : t.rows) {
      if (e.q == 0) {
        CHECK(e.x_err == 0.0);
        CHECK(e.y_err == 0.0);
      }
      // x-channel recomputed from the closed form
      const double x = 2.0 * e.j / 8 - 1;
      const double th = std::llround(std::acos(x) * 256.0) / 256.0;
      CHECK(e.x_err == doctest::Approx(std::abs(std::cos(e.q * std::acos(x)) - std::cos(e.q * th))).epsilon(1e-9));
      CHECK(e.exp_bound == doctest::Approx(pi * 8 * std::ldexp(1.0, -9)));
      CHECK(e.x_bound == e.q * std::ldexp(1.0, -9));
    }
    CHECK(t.all_within());
  }
  for (const auto& name : testutil::all_fixtures())
    for (int mp : {8, 10, 12}) {
      CAPTURE(name);
      CAPTURE(mp);
      CHECK(scalar_error_lemmas(load(name), mp, mp, 8).all_within());
    }
}

TEST_CASE("verify_encoding on fixtures") {
  for (const char* name : {"jitter_n3_a", "jitter_n2", "random_n2"}) {
    const auto r = verify_encoding(load(name), 1e-3);
    CAPTURE(name);
    CHECK(r.pass);
    CHECK(r.within_bound);
    CHECK(r.oracle_consistent);
    CHECK(r.measured_error <= 1e-3);
    CHECK(r.measured_error == doctest::Approx(r.measured_error_svd).epsilon(1e-6));
    CHECK(r.bound == r.truncation_bound + r.block_bound);
    CHECK(r.alpha_eff <= r.alpha_uniform);
    CHECK(r.gate_counts.at("H") > 0);
    CHECK(r.oracle_calls.at("O_t") == 2);
    CHECK(r.depth > 0);
  }
}

TEST_CASE("verify_encoding on the uniform lattice") {
  const auto u = testutil::uniform_grid(3);
  for (double eps : {1e-3, 1e-6}) {
    const auto r = verify_encoding(u, eps);
    CHECK(r.pass);
    CHECK(r.within_bound);
    CHECK(r.params.kappa == 1.0);
  }
}

TEST_CASE("undersized p") {
  const auto g = load("jitter_n3_a");
  for (double eps : {1e-3, 1e-4}) {
    const auto base = verify_encoding(g, eps);
    Overrides ov;
    ov.p = base.params.p - 4;
    const auto r = verify_encoding(g, eps, ov);
    CHECK(r.measured_error > base.measured_error);
    CHECK_FALSE(r.budget_within_epsilon);
    CHECK(r.within_bound);
    CHECK(r.pass == (r.measured_error <= eps));
  }
  Overrides two;
  two.p = 2;
  const auto r = verify_encoding(g, 1e-3, two);
  CHECK_FALSE(r.pass);
  CHECK(r.measured_error > 1e-3);
}

TEST_CASE("measured error is monotone in each parameter") {
  const auto g = load("jitter_n3_b");
  const double eps = 1e-3;
  const auto base = choose_params(eps, g);
  auto err = [&](int K, int m, int p) {
    Overrides ov;
    ov.K = K;
    ov.m = m;
    ov.p = p;
    return verify_encoding(g, eps, ov).measured_error;
  };
  double prev = 1e300;
  for (int K = 1; K <= base.K + 3; ++K) {
    const double e = err(K, 30, 30);
    CHECK(e <= prev * (1 + 1e-9));
    prev = e;
  }
  prev = 1e300;
  for (int m = 8; m <= 26; m += 2) {
    const double e = err(base.K + 2, m, 30);
    CAPTURE(m);
    CHECK(e <= prev * (1 + 1e-9));
    prev = e;
  }
  prev = 1e300;
  for (int p = 4; p <= 24; p += 2) {
    const double e = err(base.K + 2, 30, p);
    CAPTURE(p);
    CHECK(e <= prev * (1 + 1e-9));
    prev = e;
  }
}

TEST_CASE("counts and decomposition") {
  qcirc::Circuit c;
  const auto q = c.add_register("q", 5);
  c.x(q[0], {q[1], q[2], q[3]});
  c.x(q[0], {q[1], q[2], q[3], q[4]});
  c.rx(0.1, q[0], {q[1], q[2]});
  c.cnot(q[0], q[1]);
  const auto d = decompose_counts(c);
  CHECK(d.at("Toffoli") == 3 + 5 + 2);
  CHECK(d.at("CRX") == 1);
  CHECK(d.at("CNOT") == 1);
  CHECK(d.count("MCX") == 0);
  const auto cc = count_circuit("demo", c, {{"n", 5}});
  CHECK(cc.controlled_rotations == 1);
  CHECK(cc.qubits == 5);
  CHECK(cc.emitted.at("MCX") == 2);
}

TEST_CASE("linear fits") {
  RMatrix X(4, 2);
  X << 1, 1, 2, 1, 3, 1, 4, 1;
  RVector y(4);
  y << 5, 7, 9, 11;
  const auto f = fit_counts({"p", "1"}, X, y);
  CHECK(f.coefficients(0) == doctest::Approx(2.0));
  CHECK(f.coefficients(1) == doctest::Approx(3.0));
  CHECK(f.max_relative_residual <= 1e-12);
  CHECK_THROWS_AS(fit_counts({"p"}, X, y), std::invalid_argument);
  CHECK_THROWS_AS(resource_report({}), std::invalid_argument);
}

TEST_CASE("resource scaling") {
  const auto g = load("jitter_n3_a");
  std::vector<CircuitCounts> rows;
  for (int n = 2; n <= 6; ++n) rows.push_back(count_circuit("QFT", qcirc::qft_circuit(n), {{"n", n}}));
  for (int p = 6; p <= 14; ++p) rows.push_back(count_circuit("U_vr", qcirc::build_Uvr(3, 2, p), {{"n", 3}, {"p", p}}));
  for (int m = 8; m <= 16; m += 2)
    for (int p = 6; p <= 14; p += 2) {
      const auto c = qcirc::build_Uur(g, 3, m, p, 4, 1);
      CHECK(c.tally().at("H") == 3);
      rows.push_back(count_circuit("U_ur", c, {{"n", 3}, {"m", m}, {"p", p}}));
    }
  const auto rep = resource_report(rows);
  const auto& qft = rep.fits.at("QFT:CR");
  CHECK(qft.coefficients(0) == doctest::Approx(1.0));
  CHECK(qft.max_relative_residual <= 1e-12);
  const auto& vr = rep.fits.at("U_vr:CRX");
  CHECK(vr.coefficients(0) == doctest::Approx(1.0));
  CHECK(std::abs(vr.coefficients(1)) <= 1e-9);
  CHECK(rep.fits.at("U_ur:CNOT").max_relative_residual <= 0.2);
  CHECK(rep.fits.count("U_ur:controlled_rotations") == 1);
}
