#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracdg/kernel.hpp"
#include "fracdg/verify.hpp"

using namespace fracdg;

TEST_CASE("omega closed-form values") {
  for (double x : {1e-12, 1e-3, 0.25, 1.0, 17.0, 1e3}) CHECK(omega(1.0, x) == 1.0);
  CHECK(omega(2.0, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  // omega_{3/2}(1) = 1/Gamma(3/2) = 2/sqrt(pi)
  CHECK(omega(1.5, 1.0) == doctest::Approx(1.1283791670955126).epsilon(1e-13));
  // omega_{1/2}(4) = 4^(-1/2)/Gamma(1/2) = 1/(2 sqrt(pi))
  CHECK(omega(0.5, 4.0) == doctest::Approx(0.28209479177387814).epsilon(1e-13));
  CHECK(omega(2.0, 0.0) == 0.0);
  CHECK(omega(1.0, 0.0) == 1.0);
}

TEST_CASE("omega domain errors") {
  CHECK_THROWS_AS((void)omega(0.5, -1.0), std::domain_error);
  CHECK_THROWS_AS((void)omega(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)omega(0.0, 1.0), std::domain_error);
}

TEST_CASE("kernel moment closed-form examples") {
  // antiderivative of omega_beta is omega_{beta+1}
  CHECK(kernel_moment(0.0, 1.0, 0.0, 0.5, 0) ==
        doctest::Approx(1.1283791670955126).epsilon(1e-13));
  // q = 1 on the singular interval: 1/Gamma(1.5) - 1/Gamma(2.5)
  CHECK(kernel_moment(0.0, 1.0, 0.0, 0.5, 1) ==
        doctest::Approx(0.37612638903183752).epsilon(1e-13));
  // omega_1 = 1 over a unit interval
  CHECK(kernel_moment(1.0, 2.0, 1.0, 1.0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kernel moment domain errors") {
  CHECK_THROWS_AS((void)kernel_moment(0.0, 1.0, 0.5, 0.5, 0), std::domain_error);
  CHECK_THROWS_AS((void)kernel_moment(0.0, 1.0, 0.0, 0.5, 3), std::domain_error);
  CHECK_THROWS_AS((void)kernel_moment(1.0, 1.0, 0.0, 0.5, 0), std::domain_error);
  CHECK_THROWS_AS((void)kernel_moment(0.0, 1.0, 0.0, 0.0, 0), std::domain_error);
}

TEST_CASE("kernel moments agree with the quadrature oracle on 200 seeded cases") {
  const Verdict v = checks::kernel_moment_vs_oracle(101);
  INFO(v.detail);
  CHECK(v.pass);
}

TEST_CASE("moment splitting and nonnegativity") {
  const Verdict v = checks::kernel_moment_splitting(102);
  INFO(v.detail);
  CHECK(v.pass);
}

TEST_CASE("basis moments partition of unity: L0-weight + L1-weight = plain moment") {
  const BasisMoments bm = kernel_basis_moments(0.3, 0.9, 0.1, 0.75);
  const double whole = kernel_moment(0.3, 0.9, 0.1, 0.75, 0);
  CHECK(bm.l0 + bm.l1 == doctest::Approx(whole).epsilon(1e-14));
}

TEST_CASE("caputo derivative of power functions") {
  // Gamma(2)/Gamma(1.5) = 2/sqrt(pi)
  CHECK(caputo_power(0.5, 1.0, 1.0) == doctest::Approx(1.1283791670955126).epsilon(1e-13));
  // Gamma(1.5)/Gamma(1), t-independent since sigma = mu
  CHECK(caputo_power(0.5, 0.5, 7.0) == doctest::Approx(0.88622692545275801).epsilon(1e-13));
  // Gamma(1.7)/Gamma(1.4)
  CHECK(caputo_power(0.3, 0.7, 1.0) == doctest::Approx(1.0240908227390227).epsilon(1e-13));
  CHECK_THROWS_AS((void)caputo_power(0.5, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)caputo_power(0.5, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)caputo_power(1.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("caputo scaling and quadrature cross-checks") {
  Verdict v = checks::caputo_power_scaling(103);
  INFO(v.detail);
  CHECK(v.pass);
  v = checks::caputo_power_vs_quadrature(104);
  INFO(v.detail);
  CHECK(v.pass);
}

TEST_CASE("FractionalOrder rejects orders outside (0,1)") {
  CHECK_THROWS_AS(FractionalOrder(0.0), std::domain_error);
  CHECK_THROWS_AS(FractionalOrder(1.0), std::domain_error);
  CHECK(FractionalOrder(0.5).mu == 0.5);
}
