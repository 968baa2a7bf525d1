#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "qdiff/builtins.hpp"
#include "qdiff/error.hpp"
#include "qdiff/field.hpp"
#include "qdiff/geom.hpp"

using namespace qdiff;
using geom::cplx;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.17g)", x);
  return buf;
}

// The three components of `comps` rotated by the orthogonal matrix Q.
std::vector<std::string> rotated(const std::vector<std::string>& comps, const Eigen::Matrix3d& Q) {
  std::vector<std::string> out;
  for (int r = 0; r < 3; ++r) {
    std::string s;
    for (int c = 0; c < 3; ++c) s += (c ? "+" : "") + num(Q(r, c)) + "*(" + comps[c] + ")";
    out.push_back(s);
  }
  return out;
}

const std::vector<std::string> kTorus{"(2+cos(v))*cos(u)", "(2+cos(v))*sin(u)", "sin(v)"};

}  // namespace

TEST_CASE("sphere of radius 2 has H = -1/2 and K = 1/4 with the outward normal") {
  const auto m = builtins::sphere(2.0);
  const auto& s = m.charts[0].surface;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0, 6.28), v(-1.1, 1.1);
  for (int k = 0; k < 50; ++k) {
    const auto p = geom::analyze_point(s.jet3(u(rng), v(rng)));
    CHECK(p.shape.H == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(p.shape.K == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p.shape.zz() < 1e-20);
    CHECK(p.coframe.area() > 0);
  }
}

TEST_CASE("adapted frame is orthonormal, oriented and normal to the surface") {
  const ExpressionSurface s(kTorus);
  const auto jet = s.jet3(0.4, 1.3);
  const auto f = geom::adapted_frame(jet);
  CHECK(std::abs(f.e1.dot(f.e2)) < 1e-14);
  CHECK(f.e1.norm() == doctest::Approx(1.0));
  CHECK(f.e2.norm() == doctest::Approx(1.0));
  CHECK(f.e3.dot(f.e1.cross(f.e2)) == doctest::Approx(1.0));
  CHECK(std::abs(f.e3.dot(jet.xu)) < 1e-14);
  CHECK(std::abs(f.e3.dot(jet.xv)) < 1e-14);
  CHECK((f.e1 - jet.xu.normalized()).norm() < 1e-14);
}

TEST_CASE("torus principal curvatures match the closed form") {
  const ExpressionSurface s(kTorus);
  for (double v : {0.0, 0.7, 2.0, 3.0, 4.5}) {
    const auto p = geom::analyze_point(s.jet3(1.1, v));
    const auto [k1, k2] = geom::principal_curvatures(p.shape);
    const double a = -1.0, b = -std::cos(v) / (2 + std::cos(v));
    CHECK(k1 == doctest::Approx(std::max(a, b)).epsilon(1e-12));
    CHECK(k2 == doctest::Approx(std::min(a, b)).epsilon(1e-12));
    CHECK(p.shape.zz() == doctest::Approx(p.shape.H * p.shape.H - p.shape.K).epsilon(1e-12));
    CHECK(p.shape.symmetry_defect < 1e-12);
  }
}

TEST_CASE("curvatures are invariant under rigid rotations of the immersion") {
  std::mt19937 rng(3);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix3d A;
    for (int i = 0; i < 9; ++i) A(i) = n(rng);
    Eigen::Matrix3d Q = A.householderQr().householderQ();
    if (Q.determinant() < 0) Q.col(0) *= -1;
    const ExpressionSurface a(kTorus), b(rotated(kTorus, Q));
    const auto pa = geom::analyze_point(a.jet3(0.3, 0.9)), pb = geom::analyze_point(b.jet3(0.3, 0.9));
    CHECK(pb.shape.H == doctest::Approx(pa.shape.H).epsilon(1e-11));
    CHECK(pb.shape.K == doctest::Approx(pa.shape.K).epsilon(1e-11));
    // the frame is built from x_u, so z itself is rotation invariant, not just |z|
    CHECK(std::abs(pb.shape.z - pa.shape.z) < 1e-11);
    CHECK(std::abs(pb.coframe.w_p - pa.coframe.w_p) < 1e-11);
  }
}

TEST_CASE("swapping u and v reverses orientation: H flips, K and |z| are kept") {
  const ExpressionSurface a(kTorus);
  std::vector<std::string> sw;
  for (const auto& c : kTorus) {
    std::string s;
    for (char ch : c) s += ch == 'u' ? 'v' : ch == 'v' ? 'u' : ch;
    sw.push_back(s);
  }
  const ExpressionSurface b(sw);
  const auto pa = geom::analyze_point(a.jet3(0.8, 0.5)), pb = geom::analyze_point(b.jet3(0.5, 0.8));
  CHECK(pb.shape.H == doctest::Approx(-pa.shape.H).epsilon(1e-12));
  CHECK(pb.shape.K == doctest::Approx(pa.shape.K).epsilon(1e-12));
  CHECK(pb.shape.zz() == doctest::Approx(pa.shape.zz()).epsilon(1e-12));
}

TEST_CASE("frame rotation follows the spin laws") {
  const ExpressionSurface s(kTorus);
  const auto p = geom::analyze_point(s.jet3(0.2, 1.0));
  const double th = 0.37;
  const auto [sh, co] = geom::rotate_frame(p.shape, p.coframe, th, 0.1, -0.2);
  CHECK(std::abs(sh.z - std::polar(1.0, 2 * th) * p.shape.z) < 1e-14);
  CHECK(std::abs(co.w_p - std::polar(1.0, -th) * p.coframe.w_p) < 1e-14);
  CHECK(std::abs(co.w_q - std::polar(1.0, -th) * p.coframe.w_q) < 1e-14);
  CHECK(co.r_p == doctest::Approx(p.coframe.r_p + 0.1));
  CHECK(co.r_q == doctest::Approx(p.coframe.r_q - 0.2));
  CHECK(sh.H == p.shape.H);
  CHECK(sh.K == doctest::Approx(p.shape.K));
  CHECK(co.area() == doctest::Approx(p.coframe.area()));
}

TEST_CASE("derivative coefficients reproduce dH") {
  const auto m = builtins::triaxial(3, 2, 1);
  const GridSpec g(m.charts[0].domain, 64, 64);
  const auto f = sweep_geometry(m.charts[0], g, 0, Exec::Serial);
  for (auto [i, j] : {std::pair{5, 20}, {30, 31}, {50, 40}}) {
    const auto& n = f.at(i, j);
    const auto d = geom::derivative_coefficients(n.shape, n.coframe, shape_partials(f, i, j));
    const auto P = shape_partials(f, i, j);
    CHECK(2 * std::real(d.u * n.coframe.w_p) == doctest::Approx(P.H_u).epsilon(1e-10));
    CHECK(2 * std::real(d.u * n.coframe.w_q) == doctest::Approx(P.H_v).epsilon(1e-10));
  }
}

TEST_CASE("degenerate immersions are rejected") {
  const ExpressionSurface s({"u^2", "v", "0"});
  CHECK_THROWS_AS(geom::analyze_point(s.jet3(0.0, 0.3)), DegenerateImmersion);
  const ExpressionSurface t({"u+v", "2*(u+v)", "0"});
  CHECK_THROWS_AS(geom::analyze_point(t.jet3(0.1, 0.3)), DegenerateImmersion);
}

TEST_CASE("serial and parallel sweeps are bit-identical") {
  const auto m = builtins::torus(2, 1);
  const GridSpec g(m.charts[0].domain, 48, 40);
  const auto a = sweep_geometry(m.charts[0], g, 0, Exec::Serial);
  const auto b = sweep_geometry(m.charts[0], g, 0, Exec::Parallel);
  REQUIRE(a.nodes.size() == b.nodes.size());
  bool same = true;
  for (std::size_t k = 0; k < a.nodes.size(); ++k)
    same = same && a.nodes[k].shape.H == b.nodes[k].shape.H && a.nodes[k].shape.z == b.nodes[k].shape.z &&
           a.nodes[k].coframe.r_p == b.nodes[k].coframe.r_p;
  CHECK(same);
  const auto da = structure_defects(a, Exec::Serial), db = structure_defects(b, Exec::Parallel);
  CHECK(da.d1 == db.d1);
  CHECK(da.d2 == db.d2);
  CHECK(da.d3 == db.d3);
}

TEST_CASE("structure defects converge at second order on the torus") {
  const auto m = builtins::torus(2, 1);
  std::vector<double> e;
  for (int n : {32, 64, 128}) {
    const auto f = sweep_geometry(m.charts[0], GridSpec(m.charts[0].domain, n, n), 0, Exec::Serial);
    e.push_back(structure_defects(f, Exec::Serial).s2.sup);
  }
  CHECK(std::log2(e[0] / e[1]) > 1.8);
  CHECK(std::log2(e[1] / e[2]) > 1.8);
}
