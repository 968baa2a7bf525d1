#include "qdiff/geom.hpp"

#include <cmath>

#include "frame_detail.hpp"
#include "qdiff/error.hpp"

namespace qdiff::geom {

AdaptedFrame adapted_frame(const SurfaceJet& jet) {
  const auto f = detail::frame_jet(jet);
  return {f.e1, f.e2, f.e3};
}

CoframeChart coframe_and_connection(const SurfaceJet& jet, const AdaptedFrame& frame) {
  auto f = detail::frame_jet(jet);
  f.e1 = frame.e1;
  f.e2 = frame.e2;
  return detail::coframe_from<3>(jet, f);
}

ShapeData shape_data(const SurfaceJet& jet, const AdaptedFrame& frame) {
  auto f = detail::frame_jet(jet);
  f.e1 = frame.e1;
  f.e2 = frame.e2;
  f.e3 = frame.e3;
  return detail::shape_from<3>(jet, f, 0.0);
}

PointGeometry analyze_point(const SurfaceJet& jet) {
  const auto f = detail::frame_jet(jet);
  PointGeometry p;
  p.u = jet.u;
  p.v = jet.v;
  p.position.head<3>() = jet.x;
  p.shape = detail::shape_from<3>(jet, f, 0.0);
  p.coframe = detail::coframe_from<3>(jet, f);
  return p;
}

std::pair<ShapeData, CoframeChart> rotate_frame(const ShapeData& shape, const CoframeChart& coframe,
                                                double theta, double dtheta_u, double dtheta_v) {
  const double c = std::cos(theta), s = std::sin(theta);
  ShapeData r = shape;
  r.h11 = c * c * shape.h11 + 2.0 * c * s * shape.h12 + s * s * shape.h22;
  r.h22 = s * s * shape.h11 - 2.0 * c * s * shape.h12 + c * c * shape.h22;
  r.h12 = -c * s * shape.h11 + (c * c - s * s) * shape.h12 + c * s * shape.h22;
  r.z = std::polar(1.0, 2.0 * theta) * shape.z;

  CoframeChart q = coframe;
  q.w1_u = c * coframe.w1_u + s * coframe.w2_u;
  q.w1_v = c * coframe.w1_v + s * coframe.w2_v;
  q.w2_u = -s * coframe.w1_u + c * coframe.w2_u;
  q.w2_v = -s * coframe.w1_v + c * coframe.w2_v;
  const cplx phase = std::polar(1.0, -theta);
  q.w_p = phase * coframe.w_p;
  q.w_q = phase * coframe.w_q;
  q.r_p = coframe.r_p + dtheta_u;
  q.r_q = coframe.r_q + dtheta_v;
  return {r, q};
}

std::pair<double, double> principal_curvatures(const ShapeData& shape) {
  const double r = std::abs(shape.z);
  return {shape.H + r, shape.H - r};
}

DerivCoeffs derivative_coefficients(const ShapeData& shape, const CoframeChart& coframe,
                                    const ShapePartials& d) {
  const cplx wa[2] = {coframe.w_p, coframe.w_q};
  const double ra[2] = {coframe.r_p, coframe.r_q};
  const double Ha[2] = {d.H_u, d.H_v};
  const cplx za[2] = {d.z_u, d.z_v};

  // H_a = 2 Re(u w_a) = 2 (Re u Re w_a - Im u Im w_a)
  const double m00 = 2.0 * wa[0].real(), m01 = -2.0 * wa[0].imag();
  const double m10 = 2.0 * wa[1].real(), m11 = -2.0 * wa[1].imag();
  const double det = m00 * m11 - m01 * m10;
  if (std::abs(coframe.area()) < 1e-12) throw SingularCoframe("omega ^ conj(omega) vanishes");
  DerivCoeffs out;
  out.u = {(Ha[0] * m11 - m01 * Ha[1]) / det, (m00 * Ha[1] - m10 * Ha[0]) / det};

  // (z_a - 2iz r_a) - u conj(w_a) = v w_a, least squares over a
  const cplx I(0.0, 1.0);
  cplx c[2];
  cplx num = 0.0;
  double den = 0.0;
  for (int a = 0; a < 2; ++a) {
    c[a] = za[a] - 2.0 * I * shape.z * ra[a] - out.u * std::conj(wa[a]);
    num += std::conj(wa[a]) * c[a];
    den += std::norm(wa[a]);
  }
  out.v = num / den;
  double res = 0.0;
  for (int a = 0; a < 2; ++a) res += std::norm(c[a] - out.v * wa[a]);
  out.codazzi_residual = std::sqrt(res);
  return out;
}

}  // namespace qdiff::geom
