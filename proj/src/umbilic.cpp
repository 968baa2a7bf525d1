#include "qdiff/umbilic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdiff/error.hpp"
#include "text_util.hpp"

namespace qdiff::umbilic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x, double lo, double hi) {
  const double L = hi - lo;
  double y = std::fmod(x - lo, L);
  if (y < 0.0) y += L;
  return lo + y;
}

// Parameter-space distance honouring periodic directions.
double chart_distance(const ChartDomain& d, double u0, double v0, double u1, double v1) {
  double du = std::abs(u1 - u0), dv = std::abs(v1 - v0);
  if (d.u_periodic) du = std::min(du, (d.u_max - d.u_min) - du);
  if (d.v_periodic) dv = std::min(dv, (d.v_max - d.v_min) - dv);
  return std::hypot(du, dv);
}

// Relative distance to the nearest non-periodic edge; 0.5 when there is none.
double boundary_margin(const ChartDomain& d, double u, double v) {
  double m = 0.5;
  if (!d.u_periodic) m = std::min(m, std::min(u - d.u_min, d.u_max - u) / (d.u_max - d.u_min));
  if (!d.v_periodic) m = std::min(m, std::min(v - d.v_min, d.v_max - v) / (d.v_max - d.v_min));
  return m;
}

struct Refined {
  enum Status { Converged, LeftChart, Failed } status = Failed;
  double u = 0.0, v = 0.0, g = 0.0;
  std::string message;
};

Refined refine(const Chart& chart, double R, double u, double v, double fd, int max_iter) {
  const ChartDomain& d = chart.domain;
  auto z_at = [&](double a, double b) { return evaluate_point(chart.surface, a, b, R).shape.z; };
  auto inside = [&](double a, double b) {
    return (d.u_periodic || (a >= d.u_min && a <= d.u_max)) &&
           (d.v_periodic || (b >= d.v_min && b <= d.v_max));
  };
  Refined out;
  cplx z = z_at(u, v);
  double g = std::norm(z);
  double grad = 0.0;
  for (int it = 0; it < max_iter && g > 0.0; ++it) {
    const cplx zu = (z_at(u + fd, v) - z_at(u - fd, v)) / (2.0 * fd);
    const cplx zv = (z_at(u, v + fd) - z_at(u, v - fd)) / (2.0 * fd);
    const double gu = 2.0 * std::real(std::conj(z) * zu), gv = 2.0 * std::real(std::conj(z) * zv);
    grad = std::hypot(gu, gv);
    const double a = zu.real(), b = zv.real(), c = zu.imag(), e = zv.imag();
    const double det = a * e - b * c;
    double du, dv;
    if (std::abs(det) > 1e-300) {
      du = -(e * z.real() - b * z.imag()) / det;
      dv = -(-c * z.real() + a * z.imag()) / det;
    } else if (grad > 0.0) {
      du = -g * gu / (grad * grad);
      dv = -g * gv / (grad * grad);
    } else {
      break;
    }
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      const double un = u + lambda * du, vn = v + lambda * dv;
      if (!inside(un, vn)) continue;
      const cplx zn = z_at(un, vn);
      if (std::norm(zn) < g) {
        u = un;
        v = vn;
        z = zn;
        g = std::norm(zn);
        improved = true;
        break;
      }
    }
    if (!improved) {
      if (!inside(u + du, v + dv) && !inside(u + 1e-3 * du, v + 1e-3 * dv)) {
        out.status = Refined::LeftChart;
        out.u = u;
        out.v = v;
        out.g = g;
        return out;
      }
      break;
    }
    if (d.u_periodic) u = wrap(u, d.u_min, d.u_max);
    if (d.v_periodic) v = wrap(v, d.v_min, d.v_max);
    if (lambda * std::hypot(du, dv) < 1e-15 * (1.0 + std::abs(u) + std::abs(v))) break;
  }
  out.u = u;
  out.v = v;
  out.g = g;
  if (g <= 1e-14 || (grad <= 1e-12 && g <= 1e-10)) {
    out.status = Refined::Converged;
  } else {
    out.status = Refined::Failed;
    out.message = "refinement stalled at g = " + detail::format_number(g);
  }
  return out;
}

}  // namespace

SearchResult find_umbilics(const SurfaceModel& model, const std::vector<GeometryField>& fields,
                           const SearchOptions& opt, Exec exec) {
  if (fields.size() != model.charts.size())
    throw ConfigError("find_umbilics needs one geometry field per chart");
  SearchResult res;
  res.min_g = std::numeric_limits<double>::infinity();
  for (const auto& f : fields)
    for (const auto& n : f.nodes) {
      res.max_g = std::max(res.max_g, n.shape.zz());
      res.min_g = std::min(res.min_g, n.shape.zz());
    }
  if (res.max_g <= opt.totally_umbilic_g) {
    res.totally_umbilic = true;
    return res;
  }
  res.tol_g = opt.tol_g > 0.0 ? opt.tol_g : 1e-2 * res.max_g;

  struct Candidate {
    int chart;
    int i, j;
  };
  std::vector<Candidate> cands;
  for (std::size_t c = 0; c < fields.size(); ++c) {
    const auto& f = fields[c];
    const GridSpec& g = f.grid;
    const ChartDomain& d = g.domain();
    for (int j = 0; j < g.nv(); ++j)
      for (int i = 0; i < g.nu(); ++i) {
        if (!g.interior(i, j)) continue;
        const std::size_t k = g.index(i, j);
        const double gk = f.nodes[k].shape.zz();
        if (gk > res.tol_g) continue;
        bool is_min = true;
        for (int dj = -1; dj <= 1 && is_min; ++dj)
          for (int di = -1; di <= 1 && is_min; ++di) {
            if (di == 0 && dj == 0) continue;
            int a = i + di, b = j + dj;
            if (d.u_periodic) a = (a + g.nu()) % g.nu();
            if (d.v_periodic) b = (b + g.nv()) % g.nv();
            const std::size_t kn = g.index(a, b);
            const double gn = f.nodes[kn].shape.zz();
            // ties broken by node index so plateaus give one candidate
            if (gn < gk || (gn == gk && kn < k)) is_min = false;
          }
        if (is_min) cands.push_back({static_cast<int>(c), i, j});
      }
  }

  std::vector<Refined> refined(cands.size());
  for_each_index(cands.size(), exec, [&](std::size_t k) {
    const auto& cd = cands[k];
    const auto& ch = model.charts[cd.chart];
    const GridSpec& g = fields[cd.chart].grid;
    const double fd = 1e-5 * std::min(g.hu(), g.hv());
    refined[k] = refine(ch, model.ambient_curvature, g.u(cd.i), g.v(cd.j), fd, opt.max_iterations);
  });

  struct Kept {
    UmbilicPoint p;
    double radius;
    double margin;
  };
  std::vector<Kept> kept;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const auto& r = refined[k];
    const int c = cands[k].chart;
    if (r.status == Refined::LeftChart) {
      ++res.left_chart;
      continue;
    }
    if (r.status == Refined::Failed) {
      res.failures.push_back({c, r.u, r.v, r.message});
      continue;
    }
    const Chart& ch = model.charts[c];
    const auto& node = fields[c].nodes[fields[c].grid.index(cands[k].i, cands[k].j)];
    UmbilicPoint p;
    p.chart = c;
    p.u = r.u;
    p.v = r.v;
    p.g = r.g;
    p.position = ch.surface.position(r.u, r.v);
    const double radius =
        opt.dedup_radius > 0.0
            ? opt.dedup_radius
            : 2.0 * std::hypot(std::abs(node.coframe.w_p) * fields[c].grid.hu(),
                               std::abs(node.coframe.w_q) * fields[c].grid.hv());
    const double margin = boundary_margin(ch.domain, r.u, r.v);
    bool merged = false;
    for (auto& q : kept) {
      if ((q.p.position - p.position).norm() < std::max(q.radius, radius)) {
        merged = true;
        if (margin > q.margin) q = {p, radius, margin};
        break;
      }
    }
    if (!merged) kept.push_back({p, radius, margin});
  }
  for (const auto& q : kept) res.points.push_back(q.p);
  std::sort(res.points.begin(), res.points.end(), [](const UmbilicPoint& a, const UmbilicPoint& b) {
    if (a.chart != b.chart) return a.chart < b.chart;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return res;
}

int winding_degree(std::span<const cplx> z, double floor) {
  if (z.size() < 3) throw InvalidRange("winding loop needs at least three samples");
  double zmin = std::numeric_limits<double>::infinity(), zmax = 0.0;
  for (const auto& s : z) {
    zmin = std::min(zmin, std::abs(s));
    zmax = std::max(zmax, std::abs(s));
  }
  if (!(zmin > floor) || zmin == 0.0)
    throw LoopThroughZero("loop passes through z = 0 (min |z| = " + detail::format_number(zmin) + ")");
  if (std::abs(z.front() - z.back()) > 1e-12 * zmax) throw InvalidRange("winding loop is not closed");
  double total = 0.0;
  for (std::size_t k = 1; k < z.size(); ++k) {
    const double step = std::arg(z[k] / z[k - 1]);
    if (std::abs(step) >= 0.5 * std::numbers::pi)
      throw UnresolvedWinding("argument step " + detail::format_number(step) + " exceeds pi/2");
    total += step;
  }
  const double turns = total / kTwoPi;
  const double d = std::round(turns);
  if (std::abs(turns - d) >= 0.1)
    throw UnresolvedWinding("winding " + detail::format_number(turns) + " is not near an integer");
  return static_cast<int>(d);
}

LoopWinding loop_winding(const std::function<cplx(double)>& z_of_t, double floor, int initial, int cap) {
  for (int n = initial; n <= cap; n *= 2) {
    std::vector<cplx> z(n + 1);
    double zmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      z[k] = z_of_t(kTwoPi * k / n);
      zmin = std::min(zmin, std::abs(z[k]));
    }
    z[n] = z[0];
    if (!(zmin > floor) || zmin == 0.0)
      throw LoopThroughZero("loop passes through z = 0 (min |z| = " + detail::format_number(zmin) + ")");
    bool fine = true;
    for (int k = 1; k <= n && fine; ++k)
      if (std::abs(std::arg(z[k] / z[k - 1])) >= 0.5 * std::numbers::pi) fine = false;
    if (!fine) continue;
    return {winding_degree(z, floor), n, zmin};
  }
  throw UnresolvedWinding("argument steps stay above pi/2 with " + std::to_string(cap) + " samples");
}

UmbilicPoint umbilic_index(const Chart& chart, double R, const GridSpec& grid, UmbilicPoint p,
                           const std::vector<UmbilicPoint>& neighbours, const IndexOptions& opt) {
  const ChartDomain& d = chart.domain;
  const bool automatic = !(opt.loop_radius > 0.0);
  double r = automatic ? 2.0 * std::max(grid.hu(), grid.hv()) : opt.loop_radius;
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& q : neighbours) {
    if (q.chart != p.chart) continue;
    const double dist = chart_distance(d, p.u, p.v, q.u, q.v);
    if (dist > 0.0) nearest = std::min(nearest, dist);
  }
  if (nearest < 2.0 * r) {
    if (!automatic)
      throw AmbiguousLoop("another umbilic lies within twice the loop radius of (" +
                          detail::format_number(p.u) + ", " + detail::format_number(p.v) + ")");
    r = nearest / 3.0;
  }
  if (automatic) {
    if (!d.u_periodic) r = std::min(r, 0.9 * std::min(p.u - d.u_min, d.u_max - p.u));
    if (!d.v_periodic) r = std::min(r, 0.9 * std::min(p.v - d.v_min, d.v_max - p.v));
  }
  if (!(r > 1e-9)) throw AmbiguousLoop("no admissible loop radius around the umbilic");

  const auto centre = evaluate_point(chart.surface, p.u, p.v, R);
  const double noise = 1e-12 * (std::abs(centre.shape.H) + std::sqrt(std::abs(centre.shape.K)));
  const auto w = loop_winding(
      [&](double t) {
        return evaluate_point(chart.surface, p.u + r * std::cos(t), p.v + r * std::sin(t), R).shape.z;
      },
      10.0 * noise, opt.initial_samples, opt.max_samples);
  p.loop_radius = r;
  p.degree = w.degree;
  p.index = -0.5 * w.degree;
  p.min_abs_z = w.min_abs;
  p.samples = w.samples;
  return p;
}

IndexSumReport index_sum_check(const SurfaceModel& model, const std::vector<GeometryField>& fields,
                               const SearchOptions& search, const IndexOptions& index, Exec exec) {
  IndexSumReport rep;
  rep.search = find_umbilics(model, fields, search, exec);
  rep.euler_characteristic = model.euler_characteristic;
  const auto& pts = rep.search.points;
  rep.umbilics.resize(pts.size());
  for_each_index(pts.size(), exec, [&](std::size_t k) {
    const int c = pts[k].chart;
    rep.umbilics[k] = umbilic_index(model.charts[c], model.ambient_curvature, fields[c].grid, pts[k], pts, index);
  });
  for (const auto& u : rep.umbilics) rep.index_sum += u.index;
  rep.pass = rep.euler_characteristic.has_value() && !rep.search.totally_umbilic &&
             rep.search.failures.empty() &&
             std::abs(rep.index_sum - *rep.euler_characteristic) < 1e-9;
  return rep;
}

NegativeIndexCheck negative_index_check(const IndexSumReport& report, double weingarten_sup,
                                        bool f_smooth_through_zero, double residual_tol) {
  NegativeIndexCheck c;
  c.applies = f_smooth_through_zero && weingarten_sup <= residual_tol;
  if (!c.applies) {
    c.detail = f_smooth_through_zero ? "relation not satisfied on this surface"
                                     : "relation not smooth through 0";
    return c;
  }
  if (report.search.totally_umbilic) {
    c.detail = "totally umbilic";
    return c;
  }
  for (const auto& u : report.umbilics)
    if (!(u.index < 0.0)) {
      c.holds = false;
      c.detail = "umbilic of index " + detail::format_number(u.index) + " at chart " +
                 std::to_string(u.chart) + " (" + detail::format_number(u.u) + ", " +
                 detail::format_number(u.v) + ")";
      return c;
    }
  c.detail = report.umbilics.empty() ? "no umbilics" : "all umbilics have negative index";
  return c;
}

}  // namespace qdiff::umbilic
