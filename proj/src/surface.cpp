#include "qdiff/surface.hpp"

#include <algorithm>
#include <cmath>

#include "qdiff/error.hpp"

namespace qdiff {

void ChartDomain::validate() const {
  if (!(u_min < u_max)) throw ConfigError("chart domain requires u_min < u_max");
  if (!(v_min < v_max)) throw ConfigError("chart domain requires v_min < v_max");
  if (n_u < 8 || n_v < 8) throw ConfigError("chart grid requires at least 8 nodes per direction");
}

ExpressionSurface::ExpressionSurface(const std::vector<std::string>& components) {
  if (components.size() != 3 && components.size() != 4)
    throw ConfigError("surface needs 3 (Euclidean) or 4 (S^3) components");
  const std::vector<std::string> vars{"u", "v"};
  components_.reserve(components.size());
  for (const auto& c : components) components_.push_back(expr::parse_expression(c, vars));
}

namespace {

template <int N>
JetN<N> evaluate_jet(const std::vector<expr::ExprAST>& comps, double u, double v) {
  JetN<N> jet;
  jet.u = u;
  jet.v = v;
  const double p[2] = {u, v};
  for (int k = 0; k < N; ++k) {
    const Taylor2 t = expr::eval_taylor2(comps[k], p);
    jet.x[k] = t.value();
    jet.xu[k] = t.d(0);
    jet.xv[k] = t.d(1);
    jet.xuu[k] = t.d2(0, 0);
    jet.xuv[k] = t.d2(0, 1);
    jet.xvv[k] = t.d2(1, 1);
  }
  return jet;
}

template <int N>
double jet_distance(const JetN<N>& a, const JetN<N>& b) {
  return std::max({(a.x - b.x).cwiseAbs().maxCoeff(), (a.xu - b.xu).cwiseAbs().maxCoeff(),
                   (a.xv - b.xv).cwiseAbs().maxCoeff(), (a.xuu - b.xuu).cwiseAbs().maxCoeff(),
                   (a.xuv - b.xuv).cwiseAbs().maxCoeff(), (a.xvv - b.xvv).cwiseAbs().maxCoeff()});
}

}  // namespace

SurfaceJet ExpressionSurface::jet3(double u, double v) const {
  if (dimension() != 3) throw ConfigError("jet3 requested on a surface in R^" + std::to_string(dimension()));
  return evaluate_jet<3>(components_, u, v);
}

SurfaceJet4 ExpressionSurface::jet4(double u, double v) const {
  if (dimension() != 4) throw ConfigError("jet4 requested on a surface in R^" + std::to_string(dimension()));
  return evaluate_jet<4>(components_, u, v);
}

Eigen::Vector4d ExpressionSurface::position(double u, double v) const {
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  const double p[2] = {u, v};
  for (int k = 0; k < dimension(); ++k) x[k] = expr::eval_value(components_[k], p);
  return x;
}

double periodicity_defect(const Chart& chart, int samples) {
  const ChartDomain& d = chart.domain;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double t = (s + 0.5) / samples;
    const double u = d.u_min + t * (d.u_max - d.u_min);
    const double v = d.v_min + t * (d.v_max - d.v_min);
    if (chart.surface.dimension() == 3) {
      if (d.u_periodic)
        worst = std::max(worst, jet_distance(chart.surface.jet3(d.u_min, v), chart.surface.jet3(d.u_max, v)));
      if (d.v_periodic)
        worst = std::max(worst, jet_distance(chart.surface.jet3(u, d.v_min), chart.surface.jet3(u, d.v_max)));
    } else {
      if (d.u_periodic)
        worst = std::max(worst, jet_distance(chart.surface.jet4(d.u_min, v), chart.surface.jet4(d.u_max, v)));
      if (d.v_periodic)
        worst = std::max(worst, jet_distance(chart.surface.jet4(u, d.v_min), chart.surface.jet4(u, d.v_max)));
    }
  }
  return worst;
}

}  // namespace qdiff
