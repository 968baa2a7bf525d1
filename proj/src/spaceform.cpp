#include "qdiff/spaceform.hpp"

#include <cmath>

#include "frame_detail.hpp"
#include "qdiff/error.hpp"

namespace qdiff::spaceform {

namespace {

void check_ambient(const SurfaceJet4& jet, double R) {
  const double on = std::abs(R * jet.x.squaredNorm() - 1.0);
  if (!(on <= 1e-10))
    throw NotOnSphere("point (" + std::to_string(jet.u) + ", " + std::to_string(jet.v) +
                      ") is off the sphere: |R|x|^2 - 1| = " + std::to_string(on));
  const double lx = jet.x.norm();
  const Eigen::Vector4d xa[2] = {jet.xu, jet.xv};
  for (const auto& t : xa) {
    const double dot = std::abs(jet.x.dot(t));
    if (!(dot <= 1e-10 * std::max(1.0, lx * t.norm())))
      throw NotTangent("chart derivative not tangent to the sphere at (" + std::to_string(jet.u) +
                       ", " + std::to_string(jet.v) + ")");
  }
}

SurfaceJet euclidean_part(const SurfaceJet4& j) {
  SurfaceJet e;
  e.u = j.u;
  e.v = j.v;
  e.x = j.x.head<3>();
  e.xu = j.xu.head<3>();
  e.xv = j.xv.head<3>();
  e.xuu = j.xuu.head<3>();
  e.xuv = j.xuv.head<3>();
  e.xvv = j.xvv.head<3>();
  return e;
}

}  // namespace

geom::PointGeometry analyze_point(const SurfaceJet4& jet, double R) {
  if (R == 0.0) {
    auto p = geom::analyze_point(euclidean_part(jet));
    p.position = jet.x;
    return p;
  }
  if (R < 0.0) throw ConfigError("negative ambient curvature is not supported");
  check_ambient(jet, R);
  const auto f = detail::frame_jet(jet, R);
  geom::PointGeometry p;
  p.u = jet.u;
  p.v = jet.v;
  p.position = jet.x;
  p.shape = detail::shape_from<4>(jet, f, R);
  p.coframe = detail::coframe_from<4>(jet, f);
  return p;
}

geom::ShapeData spaceform_shape_data(const SurfaceJet4& jet, double R) {
  return analyze_point(jet, R).shape;
}

InvariantReport spaceform_invariant_check(const GeometryField& field) {
  InvariantReport r;
  const double R = field.ambient_curvature;
  r.defect.reserve(field.nodes.size());
  for (const auto& n : field.nodes) {
    const auto& s = n.shape;
    const double d = std::abs(s.zz() - (s.H * s.H - s.K + R));
    r.defect.push_back(d);
    r.sup = std::max(r.sup, d);
  }
  return r;
}

}  // namespace qdiff::spaceform
