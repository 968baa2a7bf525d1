#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <utility>

namespace qdiff {

/// Truncated second-order Taylor expansion in up to kMaxVars variables:
/// value, gradient and Hessian. The Hessian is stored packed (upper triangle)
/// so symmetry holds by construction.
class Taylor2 {
 public:
  static constexpr int kMaxVars = 4;
  static constexpr int kPacked = kMaxVars * (kMaxVars + 1) / 2;

  Taylor2() = default;
  Taylor2(int num_vars, double value) : n_(num_vars), value_(value) {
    assert(num_vars >= 0 && num_vars <= kMaxVars);
  }

  static Taylor2 constant(int num_vars, double value) { return Taylor2(num_vars, value); }
  static Taylor2 variable(int num_vars, int index, double value) {
    Taylor2 t(num_vars, value);
    t.grad_[index] = 1.0;
    return t;
  }

  int num_vars() const { return n_; }
  double value() const { return value_; }
  double d(int i) const { return grad_[i]; }
  double d2(int i, int j) const { return hess_[packed(i, j)]; }

  double& value() { return value_; }
  double& d(int i) { return grad_[i]; }
  double& d2(int i, int j) { return hess_[packed(i, j)]; }

  /// Chain rule for a scalar function g with g(a), g'(a), g''(a) given.
  Taylor2 compose(double g0, double g1, double g2) const {
    Taylor2 r(n_, g0);
    for (int i = 0; i < n_; ++i) r.grad_[i] = g1 * grad_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j)
        r.hess_[packed(i, j)] = g1 * hess_[packed(i, j)] + g2 * grad_[i] * grad_[j];
    return r;
  }

  friend Taylor2 operator+(const Taylor2& a, const Taylor2& b) {
    Taylor2 r(a.n_, a.value_ + b.value_);
    for (int i = 0; i < a.n_; ++i) r.grad_[i] = a.grad_[i] + b.grad_[i];
    for (int k = 0; k < kPacked; ++k) r.hess_[k] = a.hess_[k] + b.hess_[k];
    return r;
  }
  friend Taylor2 operator-(const Taylor2& a, const Taylor2& b) {
    Taylor2 r(a.n_, a.value_ - b.value_);
    for (int i = 0; i < a.n_; ++i) r.grad_[i] = a.grad_[i] - b.grad_[i];
    for (int k = 0; k < kPacked; ++k) r.hess_[k] = a.hess_[k] - b.hess_[k];
    return r;
  }
  friend Taylor2 operator-(const Taylor2& a) { return a.compose(-a.value_, -1.0, 0.0); }
  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
    Taylor2 r(a.n_, a.value_ * b.value_);
    for (int i = 0; i < a.n_; ++i) r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
    for (int i = 0; i < a.n_; ++i)
      for (int j = i; j < a.n_; ++j) {
        const int k = packed(i, j);
        r.hess_[k] = a.value_ * b.hess_[k] + b.value_ * a.hess_[k] + a.grad_[i] * b.grad_[j] +
                     a.grad_[j] * b.grad_[i];
      }
    return r;
  }

 private:
  static int packed(int i, int j) {
    if (i > j) std::swap(i, j);
    // row-major upper triangle of a kMaxVars x kMaxVars matrix
    return i * kMaxVars - i * (i - 1) / 2 + (j - i);
  }

  int n_ = 0;
  double value_ = 0.0;
  std::array<double, kMaxVars> grad_{};
  std::array<double, kPacked> hess_{};
};

}  // namespace qdiff
