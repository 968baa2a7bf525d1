#pragma once

#include <vector>

#include "qdiff/geom.hpp"
#include "qdiff/grid.hpp"
#include "qdiff/surface.hpp"

namespace qdiff {

/// Exact-jet geometry at every node of one chart grid.
struct GeometryField {
  GridSpec grid;
  double ambient_curvature = 0.0;
  std::vector<geom::PointGeometry> nodes;

  const geom::PointGeometry& at(int i, int j) const { return nodes[grid.index(i, j)]; }
  /// omega_1 ^ omega_2 coefficient per node, used as the L2 weight.
  std::vector<double> area() const;
};

/// Exact geometry at one chart point: Euclidean path when R == 0 (3 components),
/// S^3 path when R > 0 (4 components).
geom::PointGeometry evaluate_point(const ExpressionSurface& surface, double u, double v, double R);

/// Evaluates the chart on the grid. R == 0 uses the Euclidean path (3 components),
/// R > 0 the S^3 path (4 components).
GeometryField sweep_geometry(const Chart& chart, const GridSpec& grid, double R, Exec exec);

/// Centered-difference partials of H and z at a node.
geom::ShapePartials shape_partials(const GeometryField& field, int i, int j);

/// du^dv coefficients of the three structure-equation defects at each node:
///   d1 = d omega + i rho ^ omega
///   d2 = d pi - i rho ^ pi,            pi = z omega + H conj(omega)
///   d3 = d rho - (i/2)(pi ^ conj(pi) - R omega ^ conj(omega))
struct StructureDefects {
  std::vector<double> d1, d2, d3;
  FieldStats s1, s2, s3;
};

StructureDefects structure_defects(const GeometryField& field, Exec exec);

/// derivative_coefficients at every node from centered partials.
struct DerivativeField {
  std::vector<geom::DerivCoeffs> coeffs;
  std::vector<double> codazzi;
  FieldStats codazzi_stats;
};

DerivativeField derivative_field(const GeometryField& field, Exec exec);

}  // namespace qdiff
