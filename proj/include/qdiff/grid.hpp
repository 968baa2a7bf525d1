#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

#include "qdiff/surface.hpp"

namespace qdiff {

/// Selects the serial reference sweep or the OpenMP one. Both run the same
/// per-node kernel and must produce bit-identical fields.
enum class Exec { Serial, Parallel };

/// Node layout of one chart. Index = j * nu + i (row-major, v outer).
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(const ChartDomain& d) : GridSpec(d, d.n_u, d.n_v) {}
  GridSpec(const ChartDomain& d, int nu, int nv);

  const ChartDomain& domain() const { return d_; }
  int nu() const { return nu_; }
  int nv() const { return nv_; }
  std::size_t size() const { return static_cast<std::size_t>(nu_) * nv_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nu_ + i; }

  double hu() const { return hu_; }
  double hv() const { return hv_; }
  double u(int i) const { return d_.u_min + i * hu_; }
  double v(int j) const { return d_.v_min + j * hv_; }

  /// False on the edges of non-periodic directions.
  bool interior(int i, int j) const {
    return (d_.u_periodic || (i > 0 && i < nu_ - 1)) && (d_.v_periodic || (j > 0 && j < nv_ - 1));
  }

  GridSpec scaled(int factor) const { return GridSpec(d_, nu_ * factor, nv_ * factor); }

 private:
  ChartDomain d_;
  int nu_ = 0, nv_ = 0;
  double hu_ = 0.0, hv_ = 0.0;
};

/// Second-order partial derivatives of a node field: centered in the interior
/// and across periodic seams, one-sided three-point stencils on open edges.
template <class Get>
auto diff_u(const GridSpec& g, Get&& get, int i, int j) {
  const int n = g.nu();
  const double h = g.hu();
  if (g.domain().u_periodic) return (get((i + 1) % n, j) - get((i - 1 + n) % n, j)) / (2.0 * h);
  if (i == 0) return (-3.0 * get(0, j) + 4.0 * get(1, j) - get(2, j)) / (2.0 * h);
  if (i == n - 1) return (3.0 * get(n - 1, j) - 4.0 * get(n - 2, j) + get(n - 3, j)) / (2.0 * h);
  return (get(i + 1, j) - get(i - 1, j)) / (2.0 * h);
}

template <class Get>
auto diff_v(const GridSpec& g, Get&& get, int i, int j) {
  const int n = g.nv();
  const double h = g.hv();
  if (g.domain().v_periodic) return (get(i, (j + 1) % n) - get(i, (j - 1 + n) % n)) / (2.0 * h);
  if (j == 0) return (-3.0 * get(i, 0) + 4.0 * get(i, 1) - get(i, 2)) / (2.0 * h);
  if (j == n - 1) return (3.0 * get(i, n - 1) - 4.0 * get(i, n - 2) + get(i, n - 3)) / (2.0 * h);
  return (get(i, j + 1) - get(i, j - 1)) / (2.0 * h);
}

/// Runs fn(k) for k in [0, n). Exceptions thrown by fn are collected and the
/// one from the lowest k is rethrown afterwards, so failures are reported
/// identically in both modes.
template <class Fn>
void for_each_index(std::size_t count, Exec exec, Fn&& fn) {
  const long n = static_cast<long>(count);
  long first_error = std::numeric_limits<long>::max();
  std::exception_ptr error;
  auto body = [&](long k) {
    try {
      fn(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(qdiff_node_error)
      if (k < first_error) {
        first_error = k;
        error = std::current_exception();
      }
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) body(k);
  } else {
    for (long k = 0; k < n; ++k) body(k);
  }
  if (error) std::rethrow_exception(error);
}

/// Runs fn(index, i, j) on every node of the grid.
template <class Fn>
void for_each_node(const GridSpec& g, Exec exec, Fn&& fn) {
  const int nu = g.nu();
  for_each_index(g.size(), exec, [&](std::size_t k) {
    fn(k, static_cast<int>(k % nu), static_cast<int>(k / nu));
  });
}

/// Sup and area-weighted L2 norm of a nonnegative node field, reduced serially
/// in node order so results do not depend on the thread count.
struct FieldStats {
  double sup = 0.0;
  double l2 = 0.0;
  int nu = 0, nv = 0;
  int argmax_i = -1, argmax_j = -1;
  std::size_t count = 0;
};

FieldStats field_stats(const GridSpec& g, const std::vector<double>& values,
                       const std::vector<double>& area, bool interior_only = true);

/// Observed orders log(e_k / e_{k+1}) / log(h_k / h_{k+1}) across successive
/// refinements. A pair of errors both below `exact_floor` counts as exact (order +inf).
struct ConvergenceStudy {
  std::vector<int> sizes;
  std::vector<double> spacings;
  std::vector<double> errors;
  std::vector<double> orders;
  double min_order() const;
};

ConvergenceStudy make_study(std::vector<int> sizes, std::vector<double> spacings,
                            std::vector<double> errors,
                            double exact_floor = 1e-12);

}  // namespace qdiff
