#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qdiff/builtins.hpp"
#include "qdiff/error.hpp"
#include "qdiff/field.hpp"

using namespace qdiff;

TEST_CASE("every builtin parses, is periodic where declared and positively oriented") {
  for (const char* spec : {"sphere:2", "cylinder:1.5", "torus:2,1", "prolate:1,1.5", "triaxial:3,2,1",
                           "graph:u^2-v^2", "plane", "clifford", "great-sphere", "small-sphere:0.4"}) {
    const auto m = builtins::make_surface(spec);
    REQUIRE_MESSAGE(!m.charts.empty(), spec);
    for (const auto& c : m.charts) {
      CHECK_MESSAGE(periodicity_defect(c) < 1e-12, spec);
      const auto f = sweep_geometry(c, GridSpec(c.domain, 16, 16), m.ambient_curvature, Exec::Serial);
      double min_area = 1e300;
      for (const auto& n : f.nodes) min_area = std::min(min_area, n.coframe.area());
      CHECK_MESSAGE(min_area > 0, spec << " chart " << c.label);
    }
  }
}

TEST_CASE("declared Euler characteristics") {
  CHECK(builtins::make_surface("torus:2,1").euler_characteristic == 0);
  CHECK(builtins::make_surface("prolate:1,1.5").euler_characteristic == 2);
  CHECK(builtins::make_surface("triaxial:3,2,1").euler_characteristic == 2);
  CHECK(builtins::make_surface("clifford").euler_characteristic == 0);
  CHECK_FALSE(builtins::make_surface("sphere:1").euler_characteristic.has_value());
  CHECK(builtins::make_surface("torus:2,1").revolution_chart);
  CHECK(builtins::make_surface("clifford").ambient_curvature == 1.0);
}

TEST_CASE("chart images lie on the declared surface") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> t(0, 1);
  const auto tri = builtins::triaxial(3, 2, 1);
  const auto pro = builtins::prolate(1, 1.5);
  for (const auto* m : {&tri, &pro})
    for (const auto& c : m->charts)
      for (int k = 0; k < 20; ++k) {
        const double u = c.domain.u_min + t(rng) * (c.domain.u_max - c.domain.u_min);
        const double v = c.domain.v_min + t(rng) * (c.domain.v_max - c.domain.v_min);
        const auto x = c.surface.position(u, v);
        const double q = m == &tri ? x[0] * x[0] / 9 + x[1] * x[1] / 4 + x[2] * x[2]
                                   : x[0] * x[0] + x[1] * x[1] + x[2] * x[2] / 2.25;
        CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
      }
}

TEST_CASE("the two triaxial charts cover the ellipsoid") {
  // every point of the ellipsoid is within the v-range of one chart
  const auto m = builtins::triaxial(3, 2, 1);
  std::mt19937 rng(9);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 500; ++k) {
    Eigen::Vector3d d(n(rng), n(rng), n(rng));
    d.normalize();
    // polar angle from the b-axis and from the a-axis
    const double vb = std::acos(d[1]), va = std::acos(-d[0]);
    const bool covered = (vb >= m.charts[0].domain.v_min && vb <= m.charts[0].domain.v_max) ||
                         (va >= m.charts[1].domain.v_min && va <= m.charts[1].domain.v_max);
    CHECK(covered);
  }
}

TEST_CASE("bad specs are configuration errors") {
  for (const char* bad : {"torus:1,2", "torus:2", "sphere:-1", "donut", "small-sphere:2", "sphere:x", "graph:"})
    CHECK_THROWS_AS(builtins::make_surface(bad), Error);
  CHECK_THROWS_AS(builtins::make_surface("torus:1,2"), ConfigError);
  CHECK(builtins::builtin_names().size() >= 10);
}
