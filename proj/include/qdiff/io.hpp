#pragma once

#include <string>
#include <vector>

#include "qdiff/field.hpp"

namespace qdiff::io {

/// Per-node values written to CSV, in node order (v outer, u inner).
struct NodeTable {
  std::vector<double> u, v, H, K, g, z_re, z_im, A, res_abs;
  std::size_t size() const { return u.size(); }
};

/// g = H^2 - K (+R). A and res_abs are NaN where not supplied.
NodeTable node_table(const GeometryField& field, const std::vector<double>& A = {},
                     const std::vector<double>& res_abs = {});

/// Header u,v,H,K,g,z_re,z_im,A,res_abs; 17 significant digits; LF endings.
std::string csv_string(const NodeTable& table);
void write_csv(const NodeTable& table, const std::string& path);

enum class Ramp {
  /// Symmetric about 0 when the field takes both signs, else [min, max].
  Auto,
  Linear,
  Symmetric
};

/// One rect per node on a blue-white-red ramp, v increasing upwards. NaN cells are grey.
std::string svg_heatmap(int nu, int nv, const std::vector<double>& values, const std::string& name,
                        Ramp ramp = Ramp::Auto, int cell = 8);
void write_svg_heatmap(int nu, int nv, const std::vector<double>& values, const std::string& name,
                       const std::string& path, Ramp ramp = Ramp::Auto);

/// Writes the whole string; throws IoError on failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace qdiff::io
