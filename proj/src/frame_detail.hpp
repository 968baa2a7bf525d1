#pragma once

// Frame construction shared by the Euclidean and S^3 code paths.

#include <cmath>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

#include "qdiff/error.hpp"
#include "qdiff/geom.hpp"

namespace qdiff::detail {

template <int N>
struct FrameJet {
  using Vec = Eigen::Matrix<double, N, 1>;
  Vec e1, e2, e3;
  Vec de1[2];
  Vec de3[2];
};

// Vector n with n . w = det[a b c w].
inline Eigen::Vector4d cross4(const Eigen::Vector4d& a, const Eigen::Vector4d& b,
                              const Eigen::Vector4d& c) {
  Eigen::Vector4d n;
  Eigen::Matrix4d m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  for (int i = 0; i < 4; ++i) {
    m.col(3) = Eigen::Vector4d::Unit(i);
    n[i] = m.determinant();
  }
  return n;
}

// e1, e2 by Gram-Schmidt from (x_u, x_v) and the exact first derivatives of e1.
template <int N>
void tangent_frame(const JetN<N>& jet, FrameJet<N>& f) {
  using Vec = typename FrameJet<N>::Vec;
  const double lu = jet.xu.norm();
  if (!(lu > 0.0)) throw DegenerateImmersion("x_u vanishes");
  f.e1 = jet.xu / lu;
  const Vec xua[2] = {jet.xuu, jet.xuv};
  for (int a = 0; a < 2; ++a) f.de1[a] = (xua[a] - f.e1 * f.e1.dot(xua[a])) / lu;
  const Vec w = jet.xv - f.e1 * f.e1.dot(jet.xv);
  const double lw = w.norm();
  if (!(lw > 1e-12 * jet.xv.norm())) throw DegenerateImmersion("x_v parallel to x_u");
  f.e2 = w / lw;
}

inline FrameJet<3> frame_jet(const SurfaceJet& jet) {
  FrameJet<3> f;
  const Eigen::Vector3d n = jet.xu.cross(jet.xv);
  const double ln = n.norm();
  if (!(ln >= 1e-12 * jet.xu.norm() * jet.xv.norm()) || ln == 0.0)
    throw DegenerateImmersion("|x_u x x_v| below tolerance at (" + std::to_string(jet.u) + ", " +
                              std::to_string(jet.v) + ")");
  tangent_frame<3>(jet, f);
  f.e3 = f.e1.cross(f.e2);
  const Eigen::Vector3d dn[2] = {jet.xuu.cross(jet.xv) + jet.xu.cross(jet.xuv),
                                 jet.xuv.cross(jet.xv) + jet.xu.cross(jet.xvv)};
  for (int a = 0; a < 2; ++a) f.de3[a] = (dn[a] - f.e3 * f.e3.dot(dn[a])) / ln;
  return f;
}

// For S^3 of curvature R: e3 is the unit vector orthogonal to {x, e1, e2} with
// det[sqrt(R) x, e1, e2, e3] = +1.
inline FrameJet<4> frame_jet(const SurfaceJet4& jet, double R) {
  FrameJet<4> f;
  const double s = std::sqrt(R);
  const Eigen::Vector4d n = cross4(s * jet.x, jet.xu, jet.xv);
  const double ln = n.norm();
  if (!(ln >= 1e-12 * jet.xu.norm() * jet.xv.norm()) || ln == 0.0)
    throw DegenerateImmersion("degenerate immersion in S^3 at (" + std::to_string(jet.u) + ", " +
                              std::to_string(jet.v) + ")");
  tangent_frame<4>(jet, f);
  f.e3 = n / ln;
  const Eigen::Vector4d dn[2] = {
      cross4(s * jet.xu, jet.xu, jet.xv) + cross4(s * jet.x, jet.xuu, jet.xv) +
          cross4(s * jet.x, jet.xu, jet.xuv),
      cross4(s * jet.xv, jet.xu, jet.xv) + cross4(s * jet.x, jet.xuv, jet.xv) +
          cross4(s * jet.x, jet.xu, jet.xvv)};
  // e_i . de3 only sees the tangential part, so the component along x that
  // carries the ambient sphere's own curvature drops out automatically.
  for (int a = 0; a < 2; ++a) f.de3[a] = (dn[a] - f.e3 * f.e3.dot(dn[a])) / ln;
  return f;
}

template <int N>
geom::CoframeChart coframe_from(const JetN<N>& jet, const FrameJet<N>& f) {
  geom::CoframeChart c;
  c.w1_u = f.e1.dot(jet.xu);
  c.w1_v = f.e1.dot(jet.xv);
  c.w2_u = f.e2.dot(jet.xu);
  c.w2_v = f.e2.dot(jet.xv);
  c.w_p = {c.w1_u, c.w2_u};
  c.w_q = {c.w1_v, c.w2_v};
  c.r_p = f.e2.dot(f.de1[0]);
  c.r_q = f.e2.dot(f.de1[1]);
  return c;
}

template <int N>
geom::ShapeData shape_from(const JetN<N>& jet, const FrameJet<N>& f, double R) {
  Eigen::Matrix2d W, B;
  const typename FrameJet<N>::Vec xa[2] = {jet.xu, jet.xv};
  for (int a = 0; a < 2; ++a) {
    W(0, a) = f.e1.dot(xa[a]);
    W(1, a) = f.e2.dot(xa[a]);
    B(0, a) = -f.e1.dot(f.de3[a]);
    B(1, a) = -f.e2.dot(f.de3[a]);
  }
  const double det = W.determinant();
  if (!(std::abs(det) > 0.0)) throw DegenerateImmersion("singular coframe matrix");
  const Eigen::Matrix2d h = B * W.inverse();
  geom::ShapeData s;
  s.h11 = h(0, 0);
  s.h22 = h(1, 1);
  s.h12 = 0.5 * (h(0, 1) + h(1, 0));
  s.symmetry_defect = std::abs(h(0, 1) - h(1, 0));
  s.H = 0.5 * (s.h11 + s.h22);
  s.K = s.h11 * s.h22 - s.h12 * s.h12 + R;
  s.z = {0.5 * (s.h11 - s.h22), -s.h12};
  return s;
}

}  // namespace qdiff::detail
