#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "qdiff/builtins.hpp"
#include "qdiff/error.hpp"
#include "qdiff/io.hpp"

using namespace qdiff;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

GeometryField plane_field(int n) {
  ChartDomain d;
  d.n_u = d.n_v = 8;
  const Chart c{"p", ExpressionSurface({"u", "v", "0"}), d};
  return sweep_geometry(c, GridSpec(d, n, n), 0, Exec::Serial);
}

}  // namespace

TEST_CASE("csv of a small plane grid") {
  const auto csv = io::csv_string(io::node_table(plane_field(3)));
  CHECK(csv.rfind("u,v,H,K,g,z_re,z_im,A,res_abs\n", 0) == 0);
  CHECK(count(csv, "\n") == 10u);
  CHECK(count(csv, "\r") == 0u);
  CHECK(count(csv, "nan") == 18u);  // A and res_abs not supplied
}

TEST_CASE("torus csv: 4096 rows, H = -2/3 at the origin") {
  const auto m = builtins::torus(2, 1);
  const auto field = sweep_geometry(m.charts[0], GridSpec(m.charts[0].domain, 64, 64), 0, Exec::Serial);
  const auto csv = io::csv_string(io::node_table(field));
  CHECK(count(csv, "\n") == 4097u);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  double u, v, H;
  char c1, c2;
  std::istringstream(row) >> u >> c1 >> v >> c2 >> H;
  CHECK(u == 0.0);
  CHECK(v == 0.0);
  CHECK(std::abs(H + 2.0 / 3.0) <= 1e-9);
}

TEST_CASE("csv numbers round trip at 17 digits") {
  const auto t = io::node_table(plane_field(3), std::vector<double>(9, 0.1), std::vector<double>(9, 1.0 / 3));
  const auto csv = io::csv_string(t);
  CHECK(csv.find("0.10000000000000001") != std::string::npos);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("svg heatmap structure") {
  std::vector<double> vals(64);
  for (int k = 0; k < 64; ++k) vals[k] = k - 20.0;
  const auto svg = io::svg_heatmap(8, 8, vals, "H");
  CHECK(count(svg, "<rect") == 64u);
  CHECK(svg.find("field=H") != std::string::npos);
  CHECK(io::svg_heatmap(8, 8, vals, "H") == svg);
  const auto flat = io::svg_heatmap(8, 8, std::vector<double>(64, 2.0), "c");
  CHECK(count(flat, "#ffffff") == 64u);
  std::vector<double> with_nan(64, 1.0);
  with_nan[3] = NAN;
  CHECK(count(io::svg_heatmap(8, 8, with_nan, "n"), "#808080") == 1u);
  CHECK_THROWS_AS(io::svg_heatmap(8, 8, std::vector<double>(10), "x"), InvalidRange);
}

TEST_CASE("unwritable paths raise IoError") {
  CHECK_THROWS_AS(io::write_text("/nonexistent-dir/x.txt", "a"), IoError);
  CHECK_THROWS_AS(io::write_csv(io::node_table(plane_field(3)), "/nonexistent-dir/x.csv"), IoError);
}
