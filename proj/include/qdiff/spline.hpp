#pragma once

#include <vector>

namespace qdiff {

/// Shape-preserving cubic Hermite interpolant. Knot slopes come from the
/// three-point parabola through neighbouring knots, then are limited so the
/// interpolant stays monotone wherever the data is (zero at local extrema,
/// |slope| <= 3 * adjacent secant). Linear extrapolation outside the knots.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  /// xs strictly increasing, at least two knots.
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  struct Eval {
    double value, d1, d2;
  };
  Eval eval(double x) const;

  const std::vector<double>& knots() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }
  const std::vector<double>& slopes() const { return ds_; }
  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }

 private:
  std::vector<double> xs_, ys_, ds_;
};

}  // namespace qdiff
