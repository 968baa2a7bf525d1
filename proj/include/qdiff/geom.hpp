#pragma once

#include <complex>
#include <utility>

#include <Eigen/Core>

#include "qdiff/surface.hpp"

namespace qdiff::geom {

using cplx = std::complex<double>;

/// Oriented orthonormal frame with e3 normal to the surface.
/// Built by Gram-Schmidt from (x_u, x_v), so e1 is parallel to x_u.
struct AdaptedFrame {
  Eigen::Vector3d e1, e2, e3;
};

/// Coframe and connection in the chart basis (du, dv):
///   omega_1 = w1_u du + w1_v dv,  omega_2 = w2_u du + w2_v dv,
///   omega = omega_1 + i omega_2 = w_p du + w_q dv,
///   rho = omega_21 = e2 . de1 = r_p du + r_q dv.
struct CoframeChart {
  double w1_u = 0.0, w1_v = 0.0, w2_u = 0.0, w2_v = 0.0;
  cplx w_p, w_q;
  double r_p = 0.0, r_q = 0.0;

  /// Coefficient of omega_1 ^ omega_2 on du ^ dv; positive for an oriented chart.
  double area() const { return w1_u * w2_v - w1_v * w2_u; }
};

/// Second fundamental form in the frame, with omega_3i = h_ij omega_j and the
/// convention omega_ij = e_i . de_j. With this convention a round sphere of
/// radius r with outward normal has H = -1/r.
struct ShapeData {
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
  double H = 0.0;
  double K = 0.0;
  /// z = (h11 - h22)/2 - i h12, a spin-2 quantity; |z|^2 = H^2 - K (+R in S^3).
  cplx z;
  /// |h12 - h21| of the unsymmetrized solve.
  double symmetry_defect = 0.0;

  double zz() const { return std::norm(z); }
};

/// Everything computed at one chart node from the exact jet.
struct PointGeometry {
  double u = 0.0, v = 0.0;
  Eigen::Vector4d position = Eigen::Vector4d::Zero();
  ShapeData shape;
  CoframeChart coframe;
};

AdaptedFrame adapted_frame(const SurfaceJet& jet);

/// Coframe and connection at the jet; derivatives of e1 are taken exactly from
/// the second-order jet.
CoframeChart coframe_and_connection(const SurfaceJet& jet, const AdaptedFrame& frame);

/// Solves -e_i . d_a e3 = h_ij (e_j . x_a), then symmetrizes.
ShapeData shape_data(const SurfaceJet& jet, const AdaptedFrame& frame);

PointGeometry analyze_point(const SurfaceJet& jet);

/// Rotation of the frame by a constant angle theta (or with d(theta) given):
/// z* = e^{2i theta} z, omega* = e^{-i theta} omega, rho* = rho + d(theta), H* = H.
std::pair<ShapeData, CoframeChart> rotate_frame(const ShapeData& shape, const CoframeChart& coframe,
                                                double theta, double dtheta_u = 0.0,
                                                double dtheta_v = 0.0);

/// (kappa1, kappa2) = H +- |z| with kappa1 >= kappa2.
std::pair<double, double> principal_curvatures(const ShapeData& shape);

/// Chart partials of H and z at a node.
struct ShapePartials {
  double H_u = 0.0, H_v = 0.0;
  cplx z_u, z_v;
};

/// Coefficients of dH = u omega + conj(u) conj(omega) and
/// dz - 2iz rho = v omega + u conj(omega).
struct DerivCoeffs {
  cplx u;
  cplx v;
  /// Least-squares defect of the overdetermined equation for v (a Codazzi residual).
  double codazzi_residual = 0.0;
};

DerivCoeffs derivative_coefficients(const ShapeData& shape, const CoframeChart& coframe,
                                    const ShapePartials& partials);

}  // namespace qdiff::geom
