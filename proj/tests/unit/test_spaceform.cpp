#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdiff/builtins.hpp"
#include "qdiff/conformal.hpp"
#include "qdiff/error.hpp"
#include "qdiff/spaceform.hpp"

using namespace qdiff;

namespace {

GeometryField sweep(const SurfaceModel& m, int n) {
  return sweep_geometry(m.charts[0], GridSpec(m.charts[0].domain, n, n), m.ambient_curvature, Exec::Serial);
}

}  // namespace

TEST_CASE("Clifford torus is minimal and flat with zz = 1") {
  const auto f = sweep(builtins::clifford(), 32);
  for (const auto& n : f.nodes) {
    CHECK(std::abs(n.shape.H) <= 1e-10);
    CHECK(std::abs(n.shape.K) <= 1e-10);
    CHECK(std::abs(n.shape.zz() - 1) <= 1e-9);
  }
  CHECK(spaceform::spaceform_invariant_check(f).sup <= 1e-9);
}

TEST_CASE("great sphere is totally geodesic with K = 1") {
  const auto f = sweep(builtins::great_sphere(), 32);
  for (const auto& n : f.nodes) {
    CHECK(n.shape.zz() <= 1e-10);
    CHECK(std::abs(n.shape.H) <= 1e-10);
    CHECK(n.shape.K == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("distance sphere at latitude alpha has H = tan(alpha) and zz = 0") {
  for (double a : {0.2, 0.4, -0.9}) {
    const auto f = sweep(builtins::small_sphere(a), 24);
    for (const auto& n : f.nodes) {
      CHECK(std::abs(n.shape.H) == doctest::Approx(std::abs(std::tan(a))).epsilon(1e-10));
      CHECK(n.shape.K == doctest::Approx(1 / (std::cos(a) * std::cos(a))).epsilon(1e-10));
      CHECK(n.shape.zz() <= 1e-10);
    }
  }
}

TEST_CASE("structure equations converge in S^3") {
  const auto m = builtins::great_sphere();
  std::vector<double> e;
  for (int n : {32, 64, 128}) e.push_back(structure_defects(sweep(m, n), Exec::Serial).s1.sup);
  CHECK(std::log2(e[0] / e[1]) >= 1.8);
  CHECK(std::log2(e[1] / e[2]) >= 1.8);
}

TEST_CASE("Clifford torus with f = 0 is exactly holomorphic") {
  const auto h = conformal::holomorphy_residual(
      sweep(builtins::clifford(), 32), weingarten::FGPair(weingarten::WeingartenFunction::constant(0)), Exec::Serial);
  CHECK(h.stats.sup <= 1e-10);
}

TEST_CASE("R = 0 delegates to the Euclidean path") {
  const ExpressionSurface s3({"(2+cos(v))*cos(u)", "(2+cos(v))*sin(u)", "sin(v)"});
  const ExpressionSurface s4({"(2+cos(v))*cos(u)", "(2+cos(v))*sin(u)", "sin(v)", "0"});
  const auto a = geom::analyze_point(s3.jet3(0.3, 0.8)).shape;
  const auto b = spaceform::spaceform_shape_data(s4.jet4(0.3, 0.8), 0.0);
  CHECK(a.H == b.H);
  CHECK(a.K == b.K);
  CHECK(a.z == b.z);
}

TEST_CASE("precondition errors") {
  const ExpressionSurface off({"2*cos(u)*cos(v)", "2*sin(u)*cos(v)", "2*sin(v)", "0"});
  CHECK_THROWS_AS(spaceform::analyze_point(off.jet4(0.1, 0.2), 1.0), NotOnSphere);
  SurfaceJet4 j;
  j.x << 1, 0, 0, 0;
  j.xu << 0.5, 1, 0, 0;
  j.xv << 0, 0, 1, 0;
  CHECK_THROWS_AS(spaceform::analyze_point(j, 1.0), NotTangent);
  CHECK_THROWS_AS(spaceform::spaceform_shape_data(j, -1.0), ConfigError);
}
