#include "qdiff/field.hpp"

#include <cmath>

#include "qdiff/error.hpp"
#include "qdiff/spaceform.hpp"

namespace qdiff {

namespace {

using geom::cplx;
const cplx I(0.0, 1.0);

}  // namespace

std::vector<double> GeometryField::area() const {
  std::vector<double> a(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) a[k] = nodes[k].coframe.area();
  return a;
}

geom::PointGeometry evaluate_point(const ExpressionSurface& surface, double u, double v, double R) {
  if (R == 0.0) {
    if (surface.dimension() != 3)
      throw ConfigError("Euclidean ambient needs a surface with 3 components");
    return geom::analyze_point(surface.jet3(u, v));
  }
  if (surface.dimension() != 4) throw ConfigError("S^3 ambient needs a surface with 4 components");
  return spaceform::analyze_point(surface.jet4(u, v), R);
}

GeometryField sweep_geometry(const Chart& chart, const GridSpec& grid, double R, Exec exec) {
  GeometryField f;
  f.grid = grid;
  f.ambient_curvature = R;
  f.nodes.resize(grid.size());
  for_each_node(grid, exec, [&](std::size_t k, int i, int j) {
    f.nodes[k] = evaluate_point(chart.surface, grid.u(i), grid.v(j), R);
  });
  return f;
}

geom::ShapePartials shape_partials(const GeometryField& field, int i, int j) {
  const GridSpec& g = field.grid;
  auto H = [&](int a, int b) { return field.at(a, b).shape.H; };
  auto z = [&](int a, int b) { return field.at(a, b).shape.z; };
  geom::ShapePartials d;
  d.H_u = diff_u(g, H, i, j);
  d.H_v = diff_v(g, H, i, j);
  d.z_u = diff_u(g, z, i, j);
  d.z_v = diff_v(g, z, i, j);
  return d;
}

StructureDefects structure_defects(const GeometryField& field, Exec exec) {
  const GridSpec& g = field.grid;
  const double R = field.ambient_curvature;
  StructureDefects out;
  out.d1.resize(g.size());
  out.d2.resize(g.size());
  out.d3.resize(g.size());

  auto pi_p = [&](int a, int b) {
    const auto& n = field.at(a, b);
    return n.shape.z * n.coframe.w_p + n.shape.H * std::conj(n.coframe.w_p);
  };
  auto pi_q = [&](int a, int b) {
    const auto& n = field.at(a, b);
    return n.shape.z * n.coframe.w_q + n.shape.H * std::conj(n.coframe.w_q);
  };
  auto wp = [&](int a, int b) { return field.at(a, b).coframe.w_p; };
  auto wq = [&](int a, int b) { return field.at(a, b).coframe.w_q; };
  auto rp = [&](int a, int b) { return field.at(a, b).coframe.r_p; };
  auto rq = [&](int a, int b) { return field.at(a, b).coframe.r_q; };

  for_each_node(g, exec, [&](std::size_t k, int i, int j) {
    const auto& c = field.nodes[k].coframe;
    const cplx pp = pi_p(i, j), pq = pi_q(i, j);
    const cplx d_omega = diff_u(g, wq, i, j) - diff_v(g, wp, i, j);
    out.d1[k] = std::abs(d_omega + I * (c.r_p * c.w_q - c.r_q * c.w_p));
    const cplx d_pi = diff_u(g, pi_q, i, j) - diff_v(g, pi_p, i, j);
    out.d2[k] = std::abs(d_pi - I * (c.r_p * pq - c.r_q * pp));
    const double d_rho = diff_u(g, rq, i, j) - diff_v(g, rp, i, j);
    // (i/2)(a ^ conj(b)) on du^dv is -Im(a_p conj(a_q)).
    out.d3[k] = std::abs(d_rho + std::imag(pp * std::conj(pq)) -
                         R * std::imag(c.w_p * std::conj(c.w_q)));
  });
  const auto area = field.area();
  out.s1 = field_stats(g, out.d1, area);
  out.s2 = field_stats(g, out.d2, area);
  out.s3 = field_stats(g, out.d3, area);
  return out;
}

DerivativeField derivative_field(const GeometryField& field, Exec exec) {
  const GridSpec& g = field.grid;
  DerivativeField out;
  out.coeffs.resize(g.size());
  out.codazzi.resize(g.size());
  for_each_node(g, exec, [&](std::size_t k, int i, int j) {
    const auto& n = field.nodes[k];
    out.coeffs[k] = geom::derivative_coefficients(n.shape, n.coframe, shape_partials(field, i, j));
    out.codazzi[k] = out.coeffs[k].codazzi_residual;
  });
  out.codazzi_stats = field_stats(g, out.codazzi, field.area());
  return out;
}

}  // namespace qdiff
