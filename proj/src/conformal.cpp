#include "qdiff/conformal.hpp"

#include <cmath>

#include "qdiff/error.hpp"

namespace qdiff::conformal {

SigmaForm sigma_chart(const geom::ShapeData& shape, const geom::CoframeChart& coframe,
                      const weingarten::FGPair& fg) {
  const auto v = fg.eval(shape.zz());
  const cplx zb = std::conj(shape.z);
  return {v.F * coframe.w_p + v.G * zb * std::conj(coframe.w_p),
          v.F * coframe.w_q + v.G * zb * std::conj(coframe.w_q)};
}

MetricChart metric_from_sigma(const SigmaForm& s) {
  MetricChart m;
  m.E = std::norm(s.p);
  m.G_m = std::norm(s.q);
  m.F_m = std::real(std::conj(s.p) * s.q);
  if (!(m.E > 0.0) || !(m.det() > 0.0))
    throw NonPositiveMetric("sigma metric is not positive definite (E = " + std::to_string(m.E) +
                            ", det = " + std::to_string(m.det()) + ")");
  return m;
}

QForm q_form(const geom::ShapeData& shape, const SigmaForm& s) {
  return {shape.z * s.p * s.p, 2.0 * shape.z * s.p * s.q, shape.z * s.q * s.q};
}

HolomorphyField holomorphy_residual(const GeometryField& field, const weingarten::FGPair& fg,
                                    Exec exec) {
  const GridSpec& g = field.grid;
  HolomorphyField h;
  h.grid = g;
  h.sigma.resize(g.size());
  h.residual.resize(g.size());
  h.normalized.resize(g.size());
  for_each_node(g, exec, [&](std::size_t k, int, int) {
    const auto& n = field.nodes[k];
    h.sigma[k] = sigma_chart(n.shape, n.coframe, fg);
  });
  auto z = [&](int a, int b) { return field.at(a, b).shape.z; };
  auto p = [&](int a, int b) { return h.sigma[g.index(a, b)].p; };
  auto q = [&](int a, int b) { return h.sigma[g.index(a, b)].q; };
  for_each_node(g, exec, [&](std::size_t k, int i, int j) {
    const cplx zk = field.nodes[k].shape.z;
    const cplx res = (diff_u(g, z, i, j) * h.sigma[k].q - diff_v(g, z, i, j) * h.sigma[k].p) +
                     2.0 * zk * (diff_u(g, q, i, j) - diff_v(g, p, i, j));
    h.residual[k] = res;
    h.normalized[k] = std::abs(res) / std::abs(field.nodes[k].coframe.area());
  });
  h.stats = field_stats(g, h.normalized, field.area());
  return h;
}

HolomorphyStudy holomorphy_study(const Chart& chart, const weingarten::FGPair& fg, double R,
                                 int n_u, int n_v, int refinements, Exec exec, double exact_floor) {
  std::vector<int> sizes;
  std::vector<double> spacing, sup, l2;
  for (int level = 0; level <= refinements; ++level) {
    const GridSpec g(chart.domain, n_u << level, n_v << level);
    const auto field = sweep_geometry(chart, g, R, exec);
    const auto h = holomorphy_residual(field, fg, exec);
    sizes.push_back(g.nu());
    spacing.push_back(std::max(g.hu(), g.hv()));
    sup.push_back(h.stats.sup);
    l2.push_back(h.stats.l2);
  }
  return {make_study(sizes, spacing, sup, exact_floor), make_study(sizes, spacing, l2, exact_floor)};
}

}  // namespace qdiff::conformal
