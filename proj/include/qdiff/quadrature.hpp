#pragma once

#include <functional>

namespace qdiff {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive 7/15-point Gauss-Kronrod with bisection. Accepts once the summed
/// error estimate is within abs_tol + rel_tol * |value|; throws
/// QuadratureNonConvergence when `max_depth` bisection levels are not enough.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-12, double rel_tol = 1e-12,
                                    int max_depth = 60);

}  // namespace qdiff
