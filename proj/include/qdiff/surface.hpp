#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qdiff/expr.hpp"

namespace qdiff {

/// Rectangular parameter domain of one chart plus its default sampling.
/// Periodic directions are sampled half-open: n nodes at min + i*(max-min)/n.
/// Closed directions include both endpoints: n nodes at min + i*(max-min)/(n-1).
struct ChartDomain {
  double u_min = 0.0, u_max = 1.0;
  double v_min = 0.0, v_max = 1.0;
  bool u_periodic = false, v_periodic = false;
  int n_u = 32, n_v = 32;

  void validate() const;
};

/// Second-order Taylor data of an immersion into R^N at a chart point.
template <int N>
struct JetN {
  using Vec = Eigen::Matrix<double, N, 1>;
  double u = 0.0, v = 0.0;
  Vec x = Vec::Zero();
  Vec xu = Vec::Zero(), xv = Vec::Zero();
  Vec xuu = Vec::Zero(), xuv = Vec::Zero(), xvv = Vec::Zero();
};

using SurfaceJet = JetN<3>;
using SurfaceJet4 = JetN<4>;

/// Parametric surface given by component expressions in (u, v).
class ExpressionSurface {
 public:
  ExpressionSurface() = default;
  /// Parses each component with variables {u, v}.
  explicit ExpressionSurface(const std::vector<std::string>& components);

  int dimension() const { return static_cast<int>(components_.size()); }
  const std::vector<expr::ExprAST>& components() const { return components_; }

  SurfaceJet jet3(double u, double v) const;
  SurfaceJet4 jet4(double u, double v) const;
  /// Position only, padded with zeros to four components.
  Eigen::Vector4d position(double u, double v) const;

 private:
  std::vector<expr::ExprAST> components_;
};

struct Chart {
  std::string label;
  ExpressionSurface surface;
  ChartDomain domain;
};

/// Maximum componentwise mismatch of the jets at the two ends of every
/// periodic direction, sampled at `samples` points along the other direction.
double periodicity_defect(const Chart& chart, int samples = 7);

/// A (possibly multi-chart) surface together with its ambient space.
/// ambient_curvature == 0 means Euclidean R^3, > 0 the round S^3 of that curvature in R^4.
struct SurfaceModel {
  std::string name;
  std::vector<Chart> charts;
  double ambient_curvature = 0.0;
  /// Euler characteristic when the charts jointly cover a closed surface.
  std::optional<int> euler_characteristic;
  /// True when the first chart is a revolution chart (u = rotation angle).
  bool revolution_chart = false;
};

}  // namespace qdiff
