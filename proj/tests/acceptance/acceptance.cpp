// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qdiff/builtins.hpp"
#include "qdiff/conformal.hpp"
#include "qdiff/field.hpp"
#include "qdiff/spaceform.hpp"
#include "qdiff/umbilic.hpp"
#include "qdiff/weingarten.hpp"

using namespace qdiff;
using weingarten::FGPair;
using weingarten::WeingartenFunction;

namespace {

int g_failed = 0;

struct Criterion {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "=%.3e", value);
    if (!detail.empty()) detail += "; ";
    detail += what + buf;
    if (!cond) {
      ok = false;
      detail += " [FAIL]";
    }
  }
};

void report(int id, const std::string& title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail += std::string(" exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %2d %s (%.2fs)\n      %s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs, c.detail.c_str());
  if (!c.ok) ++g_failed;
}

GeometryField sweep(const Chart& c, int n, double R = 0.0) {
  return sweep_geometry(c, GridSpec(c.domain, n, n), R, Exec::Parallel);
}

std::vector<GeometryField> sweep_all(const SurfaceModel& m, int n) {
  std::vector<GeometryField> out;
  for (const auto& c : m.charts) out.push_back(sweep(c, n, m.ambient_curvature));
  return out;
}

double order_min(const std::vector<double>& e) {
  double o = 1e300;
  for (std::size_t k = 0; k + 1 < e.size(); ++k) o = std::min(o, std::log2(e[k] / e[k + 1]));
  return o;
}

WeingartenFunction torus_relation() {
  return weingarten::smooth_extension(WeingartenFunction::shifted_sqrt(), 1.0 / 9.0, 0.05);
}

void sphere_pin(Criterion& c) {
  const auto m = builtins::make_surface("sphere:2");
  const auto f = sweep(m.charts[0], 64);
  double eh = 0, ek = 0, eg = 0;
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i) {
      if (!f.grid.interior(i, j)) continue;
      const auto& s = f.at(i, j).shape;
      eh = std::max(eh, std::abs(s.H + 0.5));
      ek = std::max(ek, std::abs(s.K - 0.25));
      eg = std::max(eg, std::abs(s.H * s.H - s.K));
    }
  c.require(eh <= 1e-9, "max|H+1/2|", eh);
  c.require(ek <= 1e-9, "max|K-1/4|", ek);
  c.require(eg <= 1e-10, "max|H^2-K|", eg);
}

void zz_identity(Criterion& c) {
  for (const char* spec : {"sphere:2", "cylinder:1.5", "torus:2,1", "prolate:1,1.5", "triaxial:3,2,1"}) {
    double worst = 0;
    for (const auto& f : sweep_all(builtins::make_surface(spec), 64))
      for (const auto& n : f.nodes) worst = std::max(worst, std::abs(n.shape.zz() - (n.shape.H * n.shape.H - n.shape.K)));
    c.require(worst <= 1e-10, spec, worst);
  }
}

void structure_orders(Criterion& c) {
  for (const char* spec : {"sphere:2", "torus:2,1"}) {
    const auto m = builtins::make_surface(spec);
    std::vector<double> e1, e2, e3;
    for (int n : {32, 64, 128}) {
      const auto d = structure_defects(sweep(m.charts[0], n), Exec::Parallel);
      e1.push_back(d.s1.sup);
      e2.push_back(d.s2.sup);
      e3.push_back(d.s3.sup);
    }
    const std::string s = spec;
    c.require(order_min(e1) >= 1.8, s + " order(d omega)", order_min(e1));
    c.require(order_min(e2) >= 1.8, s + " order(d pi)", order_min(e2));
    c.require(order_min(e3) >= 1.8, s + " order(d rho)", order_min(e3));
  }
}

void crucial(Criterion& c) {
  const auto m = builtins::torus(2, 1);
  const auto f = torus_relation();
  std::vector<double> e;
  for (int n : {32, 64, 128}) {
    const auto fld = sweep(m.charts[0], n);
    e.push_back(weingarten::crucial_relation_defect(fld, derivative_field(fld, Exec::Parallel), f).stats.sup);
  }
  c.require(e.back() < e.front(), "defect(128)", e.back());
  c.require(order_min(e) >= 1.5, "order", order_min(e));
}

void fg_suite(Criterion& c) {
  std::vector<double> xs;
  for (int k = 0; k <= 100; ++k) xs.push_back(0.1 * k);
  for (const auto& f : {WeingartenFunction::liebmann(1), torus_relation()}) {
    const auto id = weingarten::fg_identity_check(FGPair(f), xs, 1e-4);
    c.require(id.identity1 <= 1e-10, f.name() + " |F^2-xG^2-1|", id.identity1);
    c.require(id.identity2 <= 1e-6, f.name() + " |2F'-f'G|", id.identity2);
    c.require(id.identity3 <= 1e-6, f.name() + " |2xG'-f'F+G|", id.identity3);
  }
  const FGPair lb(WeingartenFunction::liebmann(1));
  double worst = 0;
  for (int k = 0; k <= 200; ++k) {
    const double r = 0.02 * k;
    worst = std::max(worst, std::abs(lb.phi(r) - 0.5 * std::asinh(r)));
  }
  c.require(worst <= 1e-10, "|phi-asinh/2|", worst);
}

void holomorphy(Criterion& c) {
  const auto torus = builtins::torus(2, 1);
  const auto st = conformal::holomorphy_study(torus.charts[0], FGPair(torus_relation()), 0, 64, 64, 2, Exec::Parallel);
  c.require(st.sup.min_order() >= 1.8, "torus order", st.sup.min_order());

  const auto cyl = builtins::cylinder(1.5);
  const auto h = conformal::holomorphy_residual(sweep(cyl.charts[0], 64), FGPair(WeingartenFunction::constant(-1 / 3.0)),
                                                Exec::Parallel);
  c.require(h.stats.sup <= 1e-12, "cylinder sup", h.stats.sup);

  const auto sph = builtins::prolate(1, 1.5);
  const FGPair lb(WeingartenFunction::liebmann(1));
  double least = 1e300;
  for (const auto& ch : sph.charts) {
    const auto s = conformal::holomorphy_study(ch, lb, 0, 64, 64, 2, Exec::Parallel);
    for (double e : s.sup.errors) least = std::min(least, e);
  }
  c.require(least >= 1e-3, "spheroid+liebmann min sup", least);
}

// Chart coordinates of an ambient point for the two triaxial charts.
std::pair<double, double> triaxial_chart_coords(int chart, double a, double b, double cc, const Eigen::Vector4d& x) {
  const double X = x[0] / a, Y = x[1] / b, Z = x[2] / cc;
  double u, v;
  if (chart == 0) {
    v = std::acos(std::clamp(Y, -1.0, 1.0));
    u = std::atan2(Z, X);
  } else {
    v = std::acos(std::clamp(-X, -1.0, 1.0));
    u = std::atan2(Z, Y);
  }
  if (u < 0) u += 2 * M_PI;
  return {u, v};
}

void umbilic_indices(Criterion& c) {
  const auto pro = builtins::prolate(1, 1.5);
  const auto rp = umbilic::index_sum_check(pro, sweep_all(pro, 64), {}, {}, Exec::Parallel);
  c.require(rp.umbilics.size() == 2, "prolate count", static_cast<double>(rp.umbilics.size()));
  for (const auto& p : rp.umbilics) c.require(p.index == 1.0, "prolate index", p.index);
  c.require(rp.index_sum == 2.0 && rp.pass, "prolate sum", rp.index_sum);

  const auto tri = builtins::triaxial(3, 2, 1);
  const auto rt = umbilic::index_sum_check(tri, sweep_all(tri, 64), {}, {}, Exec::Parallel);
  c.require(rt.umbilics.size() == 4, "triaxial count", static_cast<double>(rt.umbilics.size()));
  const double X = 3 * std::sqrt(5.0 / 8.0), Z = std::sqrt(3.0 / 8.0);
  double worst = 0;
  for (const auto& p : rt.umbilics) {
    c.require(p.index == 0.5, "triaxial index", p.index);
    double best = 1e300;
    for (double sx : {-1.0, 1.0})
      for (double sz : {-1.0, 1.0}) {
        const Eigen::Vector4d q(sx * X, 0, sz * Z, 0);
        const auto [u, v] = triaxial_chart_coords(p.chart, 3, 2, 1, q);
        const double du = std::remainder(p.u - u, 2 * M_PI);
        best = std::min(best, std::hypot(du, p.v - v));
      }
    worst = std::max(worst, best);
  }
  c.require(worst <= 1e-3, "triaxial location error", worst);
  c.require(rt.index_sum == 2.0 && rt.pass, "triaxial sum", rt.index_sum);
}

void torus_theorem(Criterion& c) {
  const auto m = builtins::torus(2, 1);
  const auto f = sweep(m.charts[0], 64);
  double gmin = 1e300, im = 0;
  for (const auto& n : f.nodes) {
    gmin = std::min(gmin, n.shape.H * n.shape.H - n.shape.K);
    im = std::max(im, std::abs(n.shape.z.imag()));
  }
  c.require(gmin >= 0.1111 - 1e-6, "min(H^2-K)", gmin);
  c.require(im <= 1e-9, "max|Im z|", im);
}

void ellipticity(Criterion& c) {
  const auto lb = WeingartenFunction::liebmann(1);
  double worst = 0;
  int elliptic = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double x = 0.01 * k;
    const auto e = weingarten::ellipticity(lb, x);
    worst = std::max(worst, std::abs(e.A - x / (1 + x)));
    elliptic += e.cls == weingarten::EllipticClass::Elliptic;
  }
  c.require(worst <= 1e-9, "liebmann |A-x/(1+x)|", worst);
  c.require(elliptic == 1001, "liebmann elliptic fraction", elliptic / 1001.0);

  const auto m = builtins::torus(2, 1);
  const auto f = sweep(m.charts[0], 64);
  const auto rep = weingarten::ellipticity_field(f, WeingartenFunction::expression("x"));
  std::size_t above = 0, interior = 0;
  for (int j = 0; j < f.grid.nv(); ++j)
    for (int i = 0; i < f.grid.nu(); ++i)
      if (f.grid.interior(i, j)) {
        ++interior;
        above += f.at(i, j).shape.zz() > 0.25 + 1e-6;
      }
  const double expected = static_cast<double>(above) / interior;
  c.require(std::abs(rep.hyperbolic - expected) <= 1e-12, "f=x hyperbolic fraction", rep.hyperbolic);

  const auto ss = weingarten::ellipticity_field(f, WeingartenFunction::shifted_sqrt());
  double dev = 0;
  for (double A : ss.A)
    if (!std::isnan(A)) dev = std::max(dev, std::abs(A - 1));
  c.require(dev <= 1e-9, "shifted-sqrt |A-1|", dev);
}

void space_form(Criterion& c) {
  const auto cl = builtins::clifford();
  double h = 0, k = 0, z = 0;
  for (const auto& n : sweep(cl.charts[0], 64, 1).nodes) {
    h = std::max(h, std::abs(n.shape.H));
    k = std::max(k, std::abs(n.shape.K));
    z = std::max(z, std::abs(n.shape.zz() - 1));
  }
  c.require(h <= 1e-10, "clifford |H|", h);
  c.require(k <= 1e-10, "clifford |K|", k);
  c.require(z <= 1e-9, "clifford |zz-1|", z);

  const auto gs = builtins::great_sphere();
  const auto f = sweep(gs.charts[0], 64, 1);
  double zz = 0, dk = 0;
  for (const auto& n : f.nodes) {
    zz = std::max(zz, n.shape.zz());
    dk = std::max(dk, std::abs(n.shape.K - 1));
  }
  c.require(zz <= 1e-10, "great sphere max zz", zz);
  c.require(dk <= 1e-10, "great sphere |K-1|", dk);
  const auto r = umbilic::find_umbilics(gs, {f});
  c.require(r.totally_umbilic, "great sphere totally umbilic", r.max_g);
}

void fit_pipeline(Criterion& c) {
  const auto torus = builtins::torus(2, 1);
  const auto fit = weingarten::fit_weingarten(weingarten::relation_samples(sweep(torus.charts[0], 256)));
  const auto g = fit.to_function();
  double worst = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double x = 1.0 / 9 + (8.0 / 9) * k / 1000;
    worst = std::max(worst, std::abs(g(x) - (std::sqrt(x) - 1)));
  }
  c.require(worst <= 1e-4, "torus |fit-(sqrt(x)-1)|", worst);

  const auto pro = builtins::prolate(1, 1.5);
  std::vector<weingarten::RelationSample> samples;
  for (const auto& f : sweep_all(pro, 128)) {
    const auto s = weingarten::relation_samples(f);
    samples.insert(samples.end(), s.begin(), s.end());
  }
  const auto pf = weingarten::fit_weingarten(samples);
  c.require(pf.slope_blowup > 10, "spheroid slope blowup", pf.slope_blowup);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  report(1, "sphere convention pin", sphere_pin);
  report(2, "zz = H^2 - K on the Euclidean builtins", zz_identity);
  report(3, "structure equations converge at order >= 1.8", structure_orders);
  report(4, "crucial relation on the torus converges at order >= 1.5", crucial);
  report(5, "F/G identities and phi for liebmann:1", fg_suite);
  report(6, "holomorphy: torus order, cylinder exact, spheroid control", holomorphy);
  report(7, "umbilic indices and index sums", umbilic_indices);
  report(8, "torus is free of umbilics, real z in the revolution frame", torus_theorem);
  report(9, "ellipticity function", ellipticity);
  report(10, "space form: Clifford torus and great sphere", space_form);
  report(11, "fit pipeline: torus recovery, spheroid slope blowup", fit_pipeline);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 11 criteria failed (%.1fs total)\n", g_failed, secs);
  return g_failed == 0 ? 0 : 1;
}
