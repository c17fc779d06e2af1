#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fracdg/time_mesh.hpp"
#include "fracdg/verify.hpp"

using namespace fracdg;

TEST_CASE("graded nodes by direct substitution") {
  const TimeMesh m = graded_mesh(4, 2.0, 1.0);
  const double expected[5] = {0.0, 0.0625, 0.25, 0.5625, 1.0};
  for (int i = 0; i <= 4; ++i) CHECK(m.node(i) == doctest::Approx(expected[i]).epsilon(1e-15));

  const TimeMesh u = graded_mesh(5, 1.0, 1.0);
  for (int i = 0; i <= 5; ++i) CHECK(u.node(i) == doctest::Approx(0.2 * i).epsilon(1e-15));
  // uniform mesh: all steps equal T/N to rounding
  for (int n = 1; n <= 5; ++n) CHECK(u.step(n) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("strong grading: first/last steps and the step bound") {
  const TimeMesh m = graded_mesh(10, 3.0, 1.0);
  CHECK(m.step(1) == doctest::Approx(1e-3).epsilon(1e-13));
  CHECK(m.step(10) == doctest::Approx(1.0 - 0.729).epsilon(1e-13));
  CHECK(m.mesh_property_ratio() <= 1.0 + 1e-12);
  for (int j = 2; j <= 10; ++j) CHECK(m.step(j) >= m.step(j - 1));
}

TEST_CASE("mesh invariants over a battery of (N, gamma, T)") {
  const Verdict v = checks::mesh_property(0);
  INFO(v.detail);
  CHECK(v.pass);
}

TEST_CASE("graded_mesh argument validation") {
  CHECK_THROWS_AS((void)graded_mesh(0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)graded_mesh(4, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)graded_mesh(4, 2.0, 0.0), std::domain_error);
}

TEST_CASE("fine grid enumerations") {
  TimeMesh single;
  single.T = 1.0;
  single.nodes = {0.0, 1.0};
  auto p1 = fine_grid(single, 2);
  REQUIRE(p1.size() == 3);
  CHECK(p1[0] == 0.0);
  CHECK(p1[1] == 0.5);
  CHECK(p1[2] == 1.0);

  auto p2 = fine_grid(graded_mesh(2, 1.0, 1.0), 1);
  REQUIRE(p2.size() == 3);
  CHECK(p2[1] == doctest::Approx(0.5).epsilon(1e-15));

  auto p3 = fine_grid(graded_mesh(4, 2.0, 1.0), 10);
  REQUIRE(p3.size() == 41);
  CHECK(std::is_sorted(p3.begin(), p3.end()));
  CHECK(p3[1] == doctest::Approx(0.00625).epsilon(1e-14));
  const Verdict v = checks::fine_grid_count(0);
  CHECK(v.pass);
}

TEST_CASE("interval lookup uses left-open convention") {
  const TimeMesh m = graded_mesh(4, 2.0, 1.0);
  CHECK(m.interval_of(0.0) == 1);
  CHECK(m.interval_of(0.0625) == 1);
  CHECK(m.interval_of(0.0626) == 2);
  CHECK(m.interval_of(1.0) == 4);
  CHECK_THROWS_AS((void)m.interval_of(1.5), std::domain_error);
}

TEST_CASE("mesh_from_nodes validation") {
  CHECK_THROWS_AS((void)mesh_from_nodes({0.5, 1.0}), std::domain_error);
  CHECK_THROWS_AS((void)mesh_from_nodes({0.0, 0.3, 0.3, 1.0}), std::domain_error);
  const TimeMesh m = mesh_from_nodes({0.0, 0.4, 1.3});
  CHECK(m.T == 1.3);
  CHECK(m.intervals() == 2);
}
