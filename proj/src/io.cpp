#include "qdiff/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qdiff/error.hpp"

namespace qdiff::io {

namespace {

void append_number(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

std::string hex_color(double t) {
  int r, g, b;
  if (std::isnan(t)) {
    r = g = b = 128;
  } else {
    t = std::clamp(t, 0.0, 1.0);
    if (t < 0.5) {
      const int w = static_cast<int>(std::lround(510.0 * t));
      r = g = w;
      b = 255;
    } else {
      const int w = static_cast<int>(std::lround(510.0 * (1.0 - t)));
      r = 255;
      g = b = w;
    }
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

NodeTable node_table(const GeometryField& field, const std::vector<double>& A,
                     const std::vector<double>& res_abs) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double R = field.ambient_curvature;
  NodeTable t;
  for (std::size_t k = 0; k < field.nodes.size(); ++k) {
    const auto& n = field.nodes[k];
    t.u.push_back(n.u);
    t.v.push_back(n.v);
    t.H.push_back(n.shape.H);
    t.K.push_back(n.shape.K);
    t.g.push_back(n.shape.H * n.shape.H - n.shape.K + R);
    t.z_re.push_back(n.shape.z.real());
    t.z_im.push_back(n.shape.z.imag());
    t.A.push_back(k < A.size() ? A[k] : nan);
    t.res_abs.push_back(k < res_abs.size() ? res_abs[k] : nan);
  }
  return t;
}

std::string csv_string(const NodeTable& t) {
  std::string out = "u,v,H,K,g,z_re,z_im,A,res_abs\n";
  out.reserve(out.size() + t.size() * 9 * 24);
  const std::vector<double>* cols[] = {&t.u, &t.v, &t.H, &t.K, &t.g, &t.z_re, &t.z_im, &t.A, &t.res_abs};
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (std::size_t c = 0; c < 9; ++c) {
      if (c) out += ',';
      append_number(out, (*cols[c])[k]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void write_csv(const NodeTable& table, const std::string& path) { write_text(path, csv_string(table)); }

std::string svg_heatmap(int nu, int nv, const std::vector<double>& values, const std::string& name,
                        Ramp ramp, int cell) {
  if (static_cast<std::size_t>(nu) * nv != values.size())
    throw InvalidRange("heatmap size does not match the grid");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : values)
    if (!std::isnan(x)) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  if (!(lo <= hi)) lo = hi = 0.0;
  const bool symmetric = ramp == Ramp::Symmetric || (ramp == Ramp::Auto && lo < 0.0 && hi > 0.0);
  double a = lo, b = hi;
  if (symmetric) {
    const double m = std::max(std::abs(lo), std::abs(hi));
    a = -m;
    b = m;
  }
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(nu * cell) +
         "\" height=\"" + std::to_string(nv * cell) + "\">\n";
  out += "<!-- field=" + name + " min=";
  append_number(out, lo);
  out += " max=";
  append_number(out, hi);
  out += " grid=" + std::to_string(nu) + "x" + std::to_string(nv) +
         (symmetric ? " ramp=symmetric" : " ramp=linear") + " -->\n";
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      const double x = values[static_cast<std::size_t>(j) * nu + i];
      const double t = std::isnan(x) ? x : (b > a ? (x - a) / (b - a) : 0.5);
      out += "<rect x=\"" + std::to_string(i * cell) + "\" y=\"" + std::to_string((nv - 1 - j) * cell) +
             "\" width=\"" + std::to_string(cell) + "\" height=\"" + std::to_string(cell) + "\" fill=\"" +
             hex_color(t) + "\"/>\n";
    }
  out += "</svg>\n";
  return out;
}

void write_svg_heatmap(int nu, int nv, const std::vector<double>& values, const std::string& name,
                       const std::string& path, Ramp ramp) {
  write_text(path, svg_heatmap(nu, nv, values, name, ramp));
}

}  // namespace qdiff::io
