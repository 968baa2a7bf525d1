#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdiff/grid.hpp"
#include "qdiff/surface.hpp"
#include "qdiff/weingarten.hpp"

namespace qdiff::config {

/// Relation H = f(x) as configured. from_spec accepts the CLI builtin names.
struct RelationSpec {
  std::string spec;
  /// <= 0 selects 0.05 * (max principal curvature magnitude)^2.
  double eps = 0.0;
  /// Extension point for relations not smooth through 0; unset = min sampled x.
  std::optional<double> x0;
  weingarten::Argument argument = weingarten::Argument::ZZ;
};

struct Tolerances {
  double zz_identity = 1e-10;
  double spaceform_identity = 1e-9;
  double structure_order = 1.8;
  double crucial_order = 1.5;
  double holomorphy_order = 1.8;
  double holomorphy_exact = 1e-10;
  double weingarten = 1e-9;
  double fg_identity1 = 1e-10;
  double fg_identity23 = 1e-6;
  double sigma_area = 1e-10;
  double revolution_im_z = 1e-9;
  double elliptic_band = 1e-6;
  double fit_relative = 1e-6;
  double fit_match = 1e-4;
  double slope_blowup = 10.0;
  double exact_floor = 1e-12;
};

struct Outputs {
  std::string report;
  std::string csv;
  /// Prefix for heatmaps: <prefix>_<field>.svg
  std::string svg;
};

struct AnalysisConfig {
  /// Builtin spec when the surface came from one, else empty.
  std::string surface_spec;
  SurfaceModel model;
  std::optional<int> n_u, n_v;
  int refine = 0;
  std::optional<RelationSpec> relation;
  Tolerances tol;
  Outputs outputs;
  /// Number of leading charts to use; 0 = all.
  int charts = 0;
  Exec exec = Exec::Parallel;
  bool timings = false;
  double fg_x_max = 10.0;
  int fit_bins = 64;
  /// Subcommands run by `all`; empty selects the default set.
  std::vector<std::string> analyses;
  /// Echo of the parsed document.
  nlohmann::ordered_json echo = nlohmann::ordered_json::object();

  GridSpec grid_for(const Chart& chart) const;
  std::vector<Chart> active_charts() const;
};

/// Parses "euclidean" or "sphere:R".
double parse_ambient(const std::string& spec);
/// "64x32", "64" (square).
std::pair<int, int> parse_grid(const std::string& spec);

/// Builds a configuration from the JSON document described in the README.
/// Throws ConfigError on any schema problem.
AnalysisConfig from_json(const nlohmann::ordered_json& doc);
AnalysisConfig load_file(const std::string& path);

/// Applies the CLI-level checks (grid >= 8, refine <= 5, surface present).
void validate(const AnalysisConfig& cfg);

}  // namespace qdiff::config
