#pragma once

#include <string>
#include <vector>

#include "qdiff/surface.hpp"

namespace qdiff::builtins {

/// Parses "name:p1,p2,..." (e.g. "torus:2,1", "graph:u^2-v^2").
SurfaceModel make_surface(const std::string& spec);

/// Names accepted by make_surface, with their parameter lists.
std::vector<std::string> builtin_names();

/// rho (cos u cos v, sin u cos v, sin v), u periodic, |v| <= 1.2; outward normal.
SurfaceModel sphere(double rho);
SurfaceModel cylinder(double r);
/// Revolution chart ((R + r cos v) cos u, (R + r cos v) sin u, r sin v), outward normal.
SurfaceModel torus(double R, double r);
/// Ellipsoid of revolution with semi-axes (a, a, c): Monge charts over both
/// poles plus an equatorial band.
SurfaceModel prolate(double a, double c);
/// Ellipsoid with semi-axes a, b, c: one chart with poles on the b-axis and
/// one with poles on the a-axis, so together they cover the surface.
SurfaceModel triaxial(double a, double b, double c);
/// (u, v, h(u, v)) on [-1, 1]^2.
SurfaceModel graph(const std::string& height);
SurfaceModel plane();
/// (cos u, sin u, cos v, sin v) / sqrt(2) in S^3 of curvature 1.
SurfaceModel clifford();
/// Totally geodesic 2-sphere in S^3.
SurfaceModel great_sphere();
/// Distance sphere at latitude alpha in S^3.
SurfaceModel small_sphere(double alpha);

}  // namespace qdiff::builtins
