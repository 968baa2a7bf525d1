#include "qdiff/quadrature.hpp"

#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qdiff/error.hpp"

namespace qdiff {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
  double kronrod;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k = f0 * wk[0];
  double g = f0 * wg[0];
  ++evals;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double s = f(mid + half * x[i]) + f(mid - half * x[i]);
    evals += 2;
    k += s * wk[i];
    // Gauss nodes are the even-indexed Kronrod abscissae
    if (i % 2 == 0) g += s * wg[i / 2];
  }
  return {k * half, std::abs((k - g) * half)};
}

void refine(const std::function<double(double)>& f, double a, double b, double tol_density,
            int depth, int max_depth, QuadratureResult& acc, bool& capped) {
  const Panel p = gk15(f, a, b, acc.evaluations);
  const double local_tol = tol_density * (b - a);
  if (p.error <= local_tol || p.error == 0.0) {
    acc.value += p.kronrod;
    acc.error += p.error;
    return;
  }
  if (depth >= max_depth) {
    capped = true;
    acc.value += p.kronrod;
    acc.error += p.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  refine(f, a, mid, tol_density, depth + 1, max_depth, acc, capped);
  refine(f, mid, b, tol_density, depth + 1, max_depth, acc, capped);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);
  const Panel whole = gk15(f, a, b, out.evaluations);
  const double target = abs_tol + rel_tol * std::abs(whole.kronrod);
  bool capped = false;
  if (whole.error <= target) {
    out.value = whole.kronrod;
    out.error = whole.error;
  } else {
    const double mid = 0.5 * (a + b);
    const double density = target / (b - a);
    refine(f, a, mid, density, 1, max_depth, out, capped);
    refine(f, mid, b, density, 1, max_depth, out, capped);
  }
  if (capped && out.error > abs_tol + rel_tol * std::abs(out.value))
    throw QuadratureNonConvergence("quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                                   "] missed its error target after " + std::to_string(max_depth) +
                                   " bisection levels");
  out.value *= sign;
  return out;
}

}  // namespace qdiff
