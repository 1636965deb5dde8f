#include "ionmap/system_model.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace ionmap;

TEST_CASE("laguerre closed forms") {
  CHECK(laguerre(0, 0, 0.0625) == 1.0);
  CHECK(laguerre(0, 3, 0.5) == 1.0);
  CHECK(laguerre(1, 1, 0.0625) == doctest::Approx(1.9375).epsilon(1e-15));   // 2 - x
  CHECK(laguerre(2, 0, 0.0625) == doctest::Approx(0.876953125).epsilon(1e-15));  // 1 - 2x + x^2/2
  CHECK_THROWS_AS(laguerre(-1, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(2, 0, -0.5), std::invalid_argument);
}

TEST_CASE("laguerre recurrence matches power-series summation") {
  for (double x : {0.0, 0.01, 0.0625, 0.1}) {
    for (int k = 0; k <= 2; ++k) {
      for (int n = 0; n <= 20; ++n) {
        const double ref = oracles::laguerre_series(n, k, x);
        CHECK(laguerre(n, k, x) == doctest::Approx(ref).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("matrix elements") {
  SUBCASE("carrier ground state") {
    const Complex m00 = matrix_element(0, 0, 0.25);
    CHECK(m00.imag() == 0.0);
    CHECK(m00.real() == doctest::Approx(0.9692332344763441).epsilon(1e-14));
  }
  SUBCASE("sidebands vanish at eta = 0") {
    CHECK(std::abs(matrix_element(3, +1, 0.0)) == 0.0);
    CHECK(std::abs(matrix_element(3, -1, 0.0)) == 0.0);
  }
  SUBCASE("first blue sideband") {
    const Complex m12 = matrix_element(1, +1, 0.25);
    CHECK(m12.real() == 0.0);
    CHECK(m12.imag() == doctest::Approx(0.3319670808146471).epsilon(1e-14));
  }
  SUBCASE("no level below the ground state") {
    CHECK_THROWS_AS(matrix_element(0, -1, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(matrix_element(2, +2, 0.25), std::invalid_argument);
  }
  SUBCASE("carrier decreasing, sidebands increasing over n = 0..9") {
    for (int n = 0; n < 9; ++n) {
      CHECK(matrix_element(n + 1, 0, 0.25).real() < matrix_element(n, 0, 0.25).real());
      CHECK(std::abs(matrix_element(n + 1, +1, 0.25)) > std::abs(matrix_element(n, +1, 0.25)));
      CHECK(std::abs(matrix_element(n + 2, -1, 0.25)) > std::abs(matrix_element(n + 1, -1, 0.25)));
    }
  }
  SUBCASE("raising/lowering symmetry") {
    for (int n = 0; n < 12; ++n)
      CHECK(std::abs(matrix_element(n, +1, 0.25)) ==
            doctest::Approx(std::abs(matrix_element(n + 1, -1, 0.25))).epsilon(1e-15));
  }
}

TEST_CASE("basis index bijection") {
  SystemParams p;
  for (int i = 0; i < p.dim(); ++i) {
    const BasisIndex b = BasisIndex::from_flat(i);
    CHECK(b.flat() == i);
    CHECK(b.spin >= 0);
    CHECK(b.spin <= 1);
    CHECK(b.n <= p.n_max);
  }
  CHECK(BasisIndex{1, 3}.flat() == 7);
}

TEST_CASE("system params validation") {
  SystemParams p;
  CHECK_NOTHROW(validate(p));
  CHECK(regime_warnings(p).empty());

  SystemParams bad = p;
  bad.n_steps = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = p;
  bad.total_time = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = p;
  bad.eta = -0.1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  SystemParams loud = p;
  loud.omega_0 = 0.2 * loud.omega_z;
  CHECK(regime_warnings(loud).size() == 1);
}

TEST_CASE("pulse set invariants") {
  PulseSet zero = PulseSet::zeros(100);
  CHECK(!pulse_violation(zero, 100));
  CHECK(zero.n_samples() == 101);

  PulseSet bad = zero;
  bad[Field::Blue][0] = 0.5;
  CHECK(pulse_violation(bad, 100));

  bad = zero;
  bad[Field::Red][50] = 1.5;
  REQUIRE(pulse_violation(bad, 100));
  CHECK(pulse_violation(bad, 100)->find("|f| > 1") != std::string::npos);

  CHECK(pulse_violation(zero, 99));  // size mismatch
}

TEST_CASE("hamiltonian structure") {
  SystemParams p;
  p.n_max = 2;

  SUBCASE("all amplitudes zero") {
    const Eigen::MatrixXcd H = assemble_hamiltonian(p, {0.0, 0.0, 0.0}, 1.0);
    CHECK(H.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("eta = 0 resonant carrier is a global sigma_x") {
    SystemParams q = p;
    q.eta = 0.0;
    q.resonant_only = true;
    const Eigen::MatrixXcd H = assemble_hamiltonian(q, {1.0, 0.0, 0.0}, 3.0);
    for (int n = 0; n <= q.n_max; ++n) {
      CHECK(H(2 * n + 1, 2 * n) == Complex(0.5 * q.omega_0, 0.0));
      CHECK(H(2 * n, 2 * n + 1) == Complex(0.5 * q.omega_0, 0.0));
    }
    // no intermode coupling anywhere
    double off = 0.0;
    for (int r = 0; r < q.dim(); ++r)
      for (int c = 0; c < q.dim(); ++c)
        if (std::abs(r - c) > 1) off += std::abs(H(r, c));
    CHECK(off == 0.0);
  }

  SUBCASE("resonant blue couplings compose matrix_element") {
    SystemParams q = p;
    q.resonant_only = true;
    const Eigen::MatrixXcd H = assemble_hamiltonian(q, {0.0, 1.0, 0.0}, 0.7);
    for (int n = 0; n < q.n_max; ++n) {
      const Complex want = 0.5 * q.omega_0 * matrix_element(n, +1, q.eta);
      CHECK(std::abs(H(2 * (n + 1) + 1, 2 * n) - want) < 1e-16);
    }
  }

  SUBCASE("hermiticity for random amplitudes and times") {
    Rng rng(2024);
    SystemParams q;
    for (int trial = 0; trial < 20; ++trial) {
      const std::array<double, 3> amps = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                          rng.uniform(-1.0, 1.0)};
      const double t = rng.uniform(0.0, q.total_time);
      const Eigen::MatrixXcd H = assemble_hamiltonian(q, amps, t);
      const double defect = (H - H.adjoint()).cwiseAbs().maxCoeff();
      const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
      CHECK(defect <= 1e-14 * scale);
    }
  }

  SUBCASE("all rotating phases are unity at t = 0") {
    // with unit phases every coupling is (f_c + f_b + f_r arrangements of)
    // M_{n,n+dn}; build that sum directly from the matrix elements
    SystemParams q = p;
    const std::array<double, 3> amps = {0.3, -0.7, 0.5};
    const Eigen::MatrixXcd H = assemble_hamiltonian(q, amps, 0.0);
    const int d = q.fock_dim();
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n) {
      C(n, n) += 0.5 * q.omega_0 * (amps[0] + amps[1] + amps[2]) * matrix_element(n, 0, q.eta);
      if (n + 1 < d) {
        C(n + 1, n) += 0.5 * q.omega_0 * (amps[0] + amps[1]) * matrix_element(n, +1, q.eta);
        C(n, n + 1) += 0.5 * q.omega_0 * (amps[0] + amps[2]) * matrix_element(n + 1, -1, q.eta);
      }
    }
    double worst = 0.0;
    for (int n = 0; n < d; ++n)
      for (int k = 0; k < d; ++k)
        worst = std::max(worst, std::abs(H(2 * n + 1, 2 * k) - C(n, k)));
    CHECK(worst < 1e-15);
  }
}
