#pragma once

#include "qdiff/field.hpp"
#include "qdiff/geom.hpp"
#include "qdiff/surface.hpp"

namespace qdiff::spaceform {

/// Geometry of a surface in the round S^3 of curvature R > 0, embedded in R^4
/// as the sphere of radius 1/sqrt(R). K = h11 h22 - h12^2 + R.
/// Throws NotOnSphere when |R |x|^2 - 1| > 1e-10 and NotTangent when
/// |x . x_a| > 1e-10 (scaled by |x||x_a|).
geom::PointGeometry analyze_point(const SurfaceJet4& jet, double R);

/// Shape data only; R == 0 delegates to the Euclidean path on the first three components.
geom::ShapeData spaceform_shape_data(const SurfaceJet4& jet, double R);

/// |zz - (H^2 - K + R)| per node.
struct InvariantReport {
  double sup = 0.0;
  std::vector<double> defect;
};

InvariantReport spaceform_invariant_check(const GeometryField& field);

}  // namespace qdiff::spaceform
