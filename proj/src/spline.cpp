#include "qdiff/spline.hpp"

#include <algorithm>
#include <cmath>

#include "qdiff/error.hpp"

namespace qdiff {

namespace {

double sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) throw InvalidRange("spline needs at least two knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(xs_[i] > xs_[i - 1])) throw InvalidRange("spline knots must increase strictly");

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  ds_.assign(n, 0.0);
  if (n == 2) {
    ds_[0] = ds_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i)
    ds_[i] = (h[i - 1] * delta[i] + h[i] * delta[i - 1]) / (h[i - 1] + h[i]);
  ds_[0] = ((2.0 * h[0] + h[1]) * delta[0] - h[0] * delta[1]) / (h[0] + h[1]);
  ds_[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * delta[n - 2] - h[n - 2] * delta[n - 3]) /
               (h[n - 2] + h[n - 3]);

  // monotonicity limiter
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? delta[i - 1] : delta[0];
    const double right = i + 1 < n ? delta[i] : delta[n - 2];
    if (left * right <= 0.0) {
      if (i > 0 && i + 1 < n) ds_[i] = 0.0;
      else if (sign(ds_[i]) != sign(i == 0 ? right : left)) ds_[i] = 0.0;
      continue;
    }
    if (sign(ds_[i]) != sign(left)) {
      ds_[i] = 0.0;
      continue;
    }
    const double cap = 3.0 * std::min(std::abs(left), std::abs(right));
    if (std::abs(ds_[i]) > cap) ds_[i] = sign(ds_[i]) * cap;
  }
}

MonotoneCubic::Eval MonotoneCubic::eval(double x) const {
  if (x < xs_.front()) {
    const double t = x - xs_.front();
    return {ys_.front() + ds_.front() * t, ds_.front(), 0.0};
  }
  if (x > xs_.back()) {
    const double t = x - xs_.back();
    return {ys_.back() + ds_.back() * t, ds_.back(), 0.0};
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i =
      std::min(static_cast<std::size_t>(it - xs_.begin()) - 1, xs_.size() - 2);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double y0 = ys_[i], y1 = ys_[i + 1];
  const double m0 = ds_[i] * h, m1 = ds_[i + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  const double value = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
                       (t3 - t2) * m1;
  const double dt = (6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * y1 +
                    (3 * t2 - 2 * t) * m1;
  const double dtt = (12 * t - 6) * y0 + (6 * t - 4) * m0 + (-12 * t + 6) * y1 + (6 * t - 2) * m1;
  return {value, dt / h, dtt / (h * h)};
}

}  // namespace qdiff
