#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdiff/field.hpp"
#include "qdiff/surface.hpp"

namespace qdiff::umbilic {

using geom::cplx;

struct UmbilicPoint {
  int chart = 0;
  double u = 0.0, v = 0.0;
  Eigen::Vector4d position = Eigen::Vector4d::Zero();
  double g = 0.0;
  /// Filled in by umbilic_index.
  double loop_radius = 0.0;
  int degree = 0;
  /// -degree / 2.
  double index = 0.0;
  double min_abs_z = 0.0;
  int samples = 0;
};

struct RefineFailure {
  int chart = 0;
  double u = 0.0, v = 0.0;
  std::string message;
};

struct SearchOptions {
  /// Candidate threshold on g = zz; <= 0 selects 1e-2 * max g over all charts.
  double tol_g = 0.0;
  /// Ambient merge distance; <= 0 selects twice the ambient cell diameter.
  double dedup_radius = 0.0;
  int max_iterations = 100;
  /// Surfaces with max g below this are reported as totally umbilic.
  double totally_umbilic_g = 1e-10;
};

struct SearchResult {
  std::vector<UmbilicPoint> points;
  std::vector<RefineFailure> failures;
  /// Candidates whose refinement left a non-periodic chart edge.
  std::size_t left_chart = 0;
  double min_g = 0.0, max_g = 0.0, tol_g = 0.0;
  bool totally_umbilic = false;
};

/// Local minima of g below tol_g are refined by Gauss-Newton on z = 0
/// (finite-difference Jacobian, backtracking on g) and deduplicated across
/// charts. `fields[c]` must be the geometry of `model.charts[c]`. Failed
/// refinements are listed, not thrown. Points are sorted by (chart, u, v).
SearchResult find_umbilics(const SurfaceModel& model, const std::vector<GeometryField>& fields,
                           const SearchOptions& opt = {}, Exec exec = Exec::Serial);

/// Degree of z/|z| along a closed loop (first sample == last sample).
/// Throws LoopThroughZero if min |z| <= floor and UnresolvedWinding if an
/// argument step reaches pi/2 or the total is not within 0.1 of an integer.
int winding_degree(std::span<const cplx> samples, double floor = 0.0);

struct LoopWinding {
  int degree = 0;
  int samples = 0;
  double min_abs = 0.0;
};

/// Samples z(t), t in [0, 2 pi], starting with `initial` points and doubling
/// up to `cap` until every argument step is below pi/2.
LoopWinding loop_winding(const std::function<cplx(double)>& z_of_t, double floor, int initial = 64,
                         int cap = 4096);

struct IndexOptions {
  /// <= 0 selects 2 * max(hu, hv), shrunk to keep clear of neighbours and chart edges.
  double loop_radius = 0.0;
  int initial_samples = 64;
  int max_samples = 4096;
};

/// Winding of z around the chart circle of the given radius, counterclockwise in
/// (u, v); index = -degree / 2. `neighbours` are the other umbilics in the same
/// chart. Throws AmbiguousLoop when a neighbour lies within twice the radius,
/// LoopThroughZero when min |z| on the loop is within 10x the noise floor.
UmbilicPoint umbilic_index(const Chart& chart, double R, const GridSpec& grid, UmbilicPoint point,
                           const std::vector<UmbilicPoint>& neighbours, const IndexOptions& opt = {});

struct IndexSumReport {
  SearchResult search;
  std::vector<UmbilicPoint> umbilics;
  double index_sum = 0.0;
  std::optional<int> euler_characteristic;
  bool pass = false;
};

/// find_umbilics + umbilic_index on every point + comparison with the declared
/// Euler characteristic (pass is false when none is declared).
IndexSumReport index_sum_check(const SurfaceModel& model, const std::vector<GeometryField>& fields,
                               const SearchOptions& search = {}, const IndexOptions& index = {},
                               Exec exec = Exec::Serial);

/// A surface satisfying a smooth relation H = f(zz) (residual below tolerance,
/// f smooth through 0) can only have umbilics of negative index unless it is
/// totally umbilic. `applies` is false if the hypotheses are not met.
struct NegativeIndexCheck {
  bool applies = false;
  bool holds = true;
  std::string detail;
};

NegativeIndexCheck negative_index_check(const IndexSumReport& report, double weingarten_sup,
                                        bool f_smooth_through_zero, double residual_tol = 1e-9);

}  // namespace qdiff::umbilic
