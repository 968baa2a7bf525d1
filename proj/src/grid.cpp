#include "qdiff/grid.hpp"

#include <algorithm>
#include <cmath>

#include "qdiff/error.hpp"

namespace qdiff {

GridSpec::GridSpec(const ChartDomain& d, int nu, int nv) : d_(d), nu_(nu), nv_(nv) {
  if (nu < 3 || nv < 3) throw ConfigError("grid needs at least 3 nodes per direction");
  d_.n_u = nu;
  d_.n_v = nv;
  hu_ = (d.u_max - d.u_min) / (d.u_periodic ? nu : nu - 1);
  hv_ = (d.v_max - d.v_min) / (d.v_periodic ? nv : nv - 1);
}

FieldStats field_stats(const GridSpec& g, const std::vector<double>& values,
                       const std::vector<double>& area, bool interior_only) {
  FieldStats s;
  s.nu = g.nu();
  s.nv = g.nv();
  double num = 0.0, den = 0.0;
  for (int j = 0; j < g.nv(); ++j)
    for (int i = 0; i < g.nu(); ++i) {
      if (interior_only && !g.interior(i, j)) continue;
      const std::size_t k = g.index(i, j);
      const double x = values[k];
      if (std::isnan(x)) continue;
      ++s.count;
      if (x > s.sup || s.argmax_i < 0) {
        s.sup = std::max(s.sup, x);
        s.argmax_i = i;
        s.argmax_j = j;
      }
      const double w = area.empty() ? 1.0 : std::abs(area[k]);
      num += x * x * w;
      den += w;
    }
  s.l2 = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return s;
}

double ConvergenceStudy::min_order() const {
  if (orders.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::min_element(orders.begin(), orders.end());
}

ConvergenceStudy make_study(std::vector<int> sizes, std::vector<double> spacings,
                            std::vector<double> errors, double exact_floor) {
  ConvergenceStudy st;
  st.sizes = std::move(sizes);
  st.spacings = std::move(spacings);
  st.errors = std::move(errors);
  for (std::size_t k = 0; k + 1 < st.errors.size(); ++k) {
    const double a = st.errors[k], b = st.errors[k + 1];
    if (a <= exact_floor && b <= exact_floor)
      st.orders.push_back(std::numeric_limits<double>::infinity());
    else if (b <= 0.0)
      st.orders.push_back(std::numeric_limits<double>::infinity());
    else
      st.orders.push_back(std::log(a / b) / std::log(st.spacings[k] / st.spacings[k + 1]));
  }
  return st;
}

}  // namespace qdiff
