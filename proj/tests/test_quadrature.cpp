#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracdg/quadrature.hpp"

using namespace fracdg;

TEST_CASE("gauss rules integrate polynomials of degree 2n-1 exactly") {
  for (int n : {2, 3, 4, 5, 8, 12, 16}) {
    const int degree = 2 * n - 1;
    auto f = [degree](double x) { return std::pow(x, degree) + 3.0 * x * x - 1.0; };
    const double exact = (std::pow(2.0, degree + 1) - std::pow(-1.0, degree + 1)) / (degree + 1) +
                         (8.0 + 1.0) - 3.0;
    CHECK(gauss_panel(f, -1.0, 2.0, n) == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("oracle reference integrals") {
  // integral of omega_{1/2} over (0,1] equals 1/Gamma(3/2)
  auto om_half = [](double t) { return std::pow(t, -0.5) / std::tgamma(0.5); };
  CHECK(quadrature_oracle(om_half, 0.0, 1.0, 1e-12, SingularSide::left, -0.5) ==
        doctest::Approx(1.1283791670955126).epsilon(1e-12));
  CHECK(quadrature_oracle([](double) { return 1.0; }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(quadrature_oracle([](double t) { return std::pow(t, -0.4); }, 0.0, 1.0, 1e-12,
                          SingularSide::left, -0.4) ==
        doctest::Approx(1.0 / 0.6).epsilon(1e-12));
  CHECK(quadrature_oracle([](double t) { return std::pow(1.0 - t, -0.5); }, 0.0, 1.0, 1e-12,
                          SingularSide::right, -0.5) == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("oracle reports non-convergence instead of truncating") {
  // a kink keeps the composite rule at O(h^2); 1e-14 is unreachable
  auto kinked = [](double x) { return std::abs(x - std::numbers::sqrt2 / 2.0); };
  CHECK_THROWS_AS((void)quadrature_oracle(kinked, 0.0, 1.0, 1e-14), std::runtime_error);
}

TEST_CASE("oracle argument validation") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS((void)quadrature_oracle(one, 1.0, 0.0, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS((void)quadrature_oracle(one, 0.0, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)quadrature_oracle(one, 0.0, 1.0, 1e-10, SingularSide::left, -1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)gauss_rule(7), std::invalid_argument);
}

TEST_CASE("fixed graded rule matches the adaptive oracle") {
  for (double p : {-0.7, -0.3, 0.5}) {
    auto g = [p](double xi) { return std::pow(xi, p) * std::cos(3.0 * xi); };
    const double ref = oracle_distance_singular(g, 0.8, 1e-12, p);
    CHECK(graded_distance_gauss(g, 0.8, p) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("log-graded composite handles power integrands over wide ranges") {
  // integral of t^(-0.4) over [1e-6, 1] = (1 - 1e-6^0.6)/0.6
  const double exact = (1.0 - std::pow(1e-6, 0.6)) / 0.6;
  auto f = [](double t) { return std::pow(t, -0.4); };
  CHECK(log_graded_gauss(f, 1e-6, 1.0, 5, 40) == doctest::Approx(exact).epsilon(1e-12));
  CHECK_THROWS_AS((void)log_graded_gauss(f, 0.0, 1.0, 5, 10), std::invalid_argument);
}

TEST_CASE("distance-variable oracle keeps precision at a remote singular endpoint") {
  // integral of (t - a)^(-0.9) over [a, a+w] in distance form, a far from 0
  const double a = 3.0, w = 1e-3, p = -0.9;
  const double exact = std::pow(w, p + 1.0) / (p + 1.0);
  auto g = [p](double xi) { return std::pow(xi, p); };
  CHECK(oracle_distance_singular(g, w, 1e-12, p) == doctest::Approx(exact).epsilon(1e-12));
  (void)a;
}
