#pragma once

#include <complex>
#include <vector>

#include "qdiff/field.hpp"
#include "qdiff/weingarten.hpp"

namespace qdiff::conformal {

using geom::cplx;

/// sigma = F omega + G conj(z) conj(omega) = p du + q dv.
struct SigmaForm {
  cplx p, q;
  /// Im(conj(p) q), the (i/2) sigma ^ conj(sigma) coefficient.
  double area() const { return std::imag(std::conj(p) * q); }
};

SigmaForm sigma_chart(const geom::ShapeData& shape, const geom::CoframeChart& coframe,
                      const weingarten::FGPair& fg);

/// ds^2 = E du^2 + 2 F_m du dv + G_m dv^2.
struct MetricChart {
  double E = 0.0, F_m = 0.0, G_m = 0.0;
  double det() const { return E * G_m - F_m * F_m; }
};

/// Throws NonPositiveMetric unless E > 0 and det > 0.
MetricChart metric_from_sigma(const SigmaForm& s);

/// Q = z sigma^2 = c_uu du^2 + c_uv du dv + c_vv dv^2.
struct QForm {
  cplx c_uu, c_uv, c_vv;
};

QForm q_form(const geom::ShapeData& shape, const SigmaForm& s);

/// Residual of dz ^ sigma + 2z d sigma on du^dv per node:
///   Res = (z_u q - z_v p) + 2z (q_u - p_v),
/// normalized by the omega_1 ^ omega_2 coefficient.
struct HolomorphyField {
  GridSpec grid;
  std::vector<cplx> residual;
  std::vector<double> normalized;
  std::vector<SigmaForm> sigma;
  FieldStats stats;
};

HolomorphyField holomorphy_residual(const GeometryField& field, const weingarten::FGPair& fg,
                                    Exec exec);

/// Sup of the normalized residual over successive grid doublings.
struct HolomorphyStudy {
  ConvergenceStudy sup;
  ConvergenceStudy l2;
};

HolomorphyStudy holomorphy_study(const Chart& chart, const weingarten::FGPair& fg, double R,
                                 int n_u, int n_v, int refinements, Exec exec,
                                 double exact_floor = 1e-12);

}  // namespace qdiff::conformal
