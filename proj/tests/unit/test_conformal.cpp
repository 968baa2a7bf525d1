#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdiff/builtins.hpp"
#include "qdiff/conformal.hpp"
#include "qdiff/error.hpp"

using namespace qdiff;
using namespace qdiff::conformal;
using weingarten::FGPair;
using weingarten::WeingartenFunction;

namespace {

GeometryField sweep(const SurfaceModel& m, int n, std::size_t chart = 0) {
  return sweep_geometry(m.charts[chart], GridSpec(m.charts[chart].domain, n, n), m.ambient_curvature,
                        Exec::Serial);
}

FGPair torus_fg() {
  return FGPair(weingarten::smooth_extension(WeingartenFunction::shifted_sqrt(), 1.0 / 9, 0.05));
}

}  // namespace

TEST_CASE("constant f: sigma is omega and the metric is the first fundamental form") {
  const auto m = builtins::torus(2, 1);
  const ExpressionSurface& s = m.charts[0].surface;
  const FGPair fg(WeingartenFunction::constant(1));
  const auto jet = s.jet3(0.4, 2.2);
  const auto p = geom::analyze_point(jet);
  const auto sig = sigma_chart(p.shape, p.coframe, fg);
  CHECK(std::abs(sig.p - p.coframe.w_p) < 1e-15);
  const auto g = metric_from_sigma(sig);
  CHECK(g.E == doctest::Approx(jet.xu.squaredNorm()));
  CHECK(g.F_m == doctest::Approx(jet.xu.dot(jet.xv)).scale(1));
  CHECK(g.G_m == doctest::Approx(jet.xv.squaredNorm()));
}

TEST_CASE("sigma area equals the surface area form since F^2 - x G^2 = 1") {
  const auto fg = torus_fg();
  const auto f = sweep(builtins::torus(2, 1), 32);
  for (const auto& n : f.nodes) {
    const auto s = sigma_chart(n.shape, n.coframe, fg);
    CHECK(s.area() == doctest::Approx(n.coframe.area()).epsilon(1e-12));
    CHECK(metric_from_sigma(s).det() > 0);
  }
}

TEST_CASE("Q = z sigma^2 coefficients") {
  const auto fg = torus_fg();
  const auto f = sweep(builtins::torus(2, 1), 16);
  const auto& n = f.at(3, 5);
  const auto s = sigma_chart(n.shape, n.coframe, fg);
  const auto q = q_form(n.shape, s);
  CHECK(std::abs(q.c_uu - n.shape.z * s.p * s.p) < 1e-14);
  CHECK(std::abs(q.c_uv - 2.0 * n.shape.z * s.p * s.q) < 1e-14);
  CHECK(std::abs(q.c_vv - n.shape.z * s.q * s.q) < 1e-14);
}

TEST_CASE("non-positive sigma metric is rejected") {
  SigmaForm s{cplx(1, 0), cplx(2, 0)};
  CHECK_THROWS_AS(metric_from_sigma(s), NonPositiveMetric);
}

TEST_CASE("torus holomorphy residual converges at second order") {
  const auto st = holomorphy_study(builtins::torus(2, 1).charts[0], torus_fg(), 0, 32, 32, 2, Exec::Serial);
  REQUIRE(st.sup.orders.size() == 2);
  CHECK(st.sup.min_order() >= 1.8);
  CHECK(st.sup.errors[2] < st.sup.errors[0]);
}

TEST_CASE("cylinder with constant f is exactly holomorphic") {
  const auto h = holomorphy_residual(sweep(builtins::cylinder(1.5), 64), FGPair(WeingartenFunction::constant(-1 / 3.0)),
                                     Exec::Serial);
  CHECK(h.stats.sup <= 1e-12);
}

TEST_CASE("serial and parallel residuals are bit-identical") {
  const auto f = sweep(builtins::torus(2, 1), 40);
  const auto fg = torus_fg();
  const auto a = holomorphy_residual(f, fg, Exec::Serial), b = holomorphy_residual(f, fg, Exec::Parallel);
  CHECK(a.normalized == b.normalized);
  CHECK(a.stats.sup == b.stats.sup);
  CHECK(a.stats.l2 == b.stats.l2);
}

TEST_CASE("extensions differ only by a constant phi shift on the surface range") {
  const auto f = sweep(builtins::torus(2, 1), 48);
  const FGPair a(weingarten::smooth_extension(WeingartenFunction::shifted_sqrt(), 1.0 / 9, 0.05));
  const FGPair b(weingarten::smooth_extension(WeingartenFunction::shifted_sqrt(), 1.0 / 9, 0.02));
  const double shift = a.phi(1.0 / 3) - b.phi(1.0 / 3);
  CHECK(std::abs(shift) > 1e-6);
  for (double r : {0.4, 0.6, 0.8, 1.0}) CHECK(a.phi(r) - b.phi(r) == doctest::Approx(shift).epsilon(1e-10));
  CHECK(holomorphy_residual(f, a, Exec::Serial).stats.sup < 1e-2);
  CHECK(holomorphy_residual(f, b, Exec::Serial).stats.sup < 1e-2);
}
