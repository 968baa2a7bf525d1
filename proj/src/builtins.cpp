#include "qdiff/builtins.hpp"

#include <cmath>
#include <numbers>

#include "qdiff/error.hpp"
#include "text_util.hpp"

namespace qdiff::builtins {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double x) { return "(" + detail::format_number(x) + ")"; }

ChartDomain box(double u0, double u1, double v0, double v1, bool pu, bool pv, int n = 64) {
  ChartDomain d;
  d.u_min = u0;
  d.u_max = u1;
  d.v_min = v0;
  d.v_max = v1;
  d.u_periodic = pu;
  d.v_periodic = pv;
  d.n_u = n;
  d.n_v = n;
  return d;
}

Chart chart(std::string label, const std::vector<std::string>& x, const ChartDomain& d) {
  return {std::move(label), ExpressionSurface(x), d};
}

void require_positive(const std::string& what, std::initializer_list<double> xs) {
  for (double x : xs)
    if (!(x > 0.0)) throw ConfigError(what + " parameters must be positive");
}

void require_count(const std::string& name, const std::vector<double>& p, std::size_t n) {
  if (p.size() != n)
    throw ConfigError("surface '" + name + "' takes " + std::to_string(n) + " parameter(s)");
}

}  // namespace

SurfaceModel sphere(double rho) {
  require_positive("sphere", {rho});
  const std::string r = num(rho);
  SurfaceModel m;
  m.name = "sphere:" + detail::format_number(rho);
  m.charts.push_back(chart("pinned", {r + "*cos(u)*cos(v)", r + "*sin(u)*cos(v)", r + "*sin(v)"},
                           box(0.0, kTwoPi, -1.2, 1.2, true, false)));
  return m;
}

SurfaceModel cylinder(double rad) {
  require_positive("cylinder", {rad});
  const std::string r = num(rad);
  SurfaceModel m;
  m.name = "cylinder:" + detail::format_number(rad);
  m.charts.push_back(
      chart("band", {r + "*cos(u)", r + "*sin(u)", "v"}, box(0.0, kTwoPi, -1.0, 1.0, true, false)));
  m.revolution_chart = true;
  return m;
}

SurfaceModel torus(double R, double r) {
  require_positive("torus", {R, r});
  if (!(R > r)) throw ConfigError("torus needs R > r");
  const std::string Rs = num(R), rs = num(r);
  const std::string rad = "(" + Rs + "+" + rs + "*cos(v))";
  SurfaceModel m;
  m.name = "torus:" + detail::format_number(R) + "," + detail::format_number(r);
  m.charts.push_back(chart("revolution", {rad + "*cos(u)", rad + "*sin(u)", rs + "*sin(v)"},
                           box(0.0, kTwoPi, 0.0, kTwoPi, true, true)));
  m.euler_characteristic = 0;
  m.revolution_chart = true;
  return m;
}

SurfaceModel prolate(double a, double c) {
  require_positive("prolate", {a, c});
  const std::string as = num(a), cs = num(c);
  SurfaceModel m;
  m.name = "prolate:" + detail::format_number(a) + "," + detail::format_number(c);
  m.charts.push_back(chart("north", {as + "*u", as + "*v", cs + "*sqrt(1-u^2-v^2)"},
                           box(-0.6, 0.6, -0.6, 0.6, false, false)));
  m.charts.push_back(chart("south", {as + "*u", "-" + as + "*v", "-" + cs + "*sqrt(1-u^2-v^2)"},
                           box(-0.6, 0.6, -0.6, 0.6, false, false)));
  m.charts.push_back(chart("band", {as + "*cos(v)*cos(u)", as + "*cos(v)*sin(u)", cs + "*sin(v)"},
                           box(0.0, kTwoPi, -1.2, 1.2, true, false)));
  m.euler_characteristic = 2;
  return m;
}

SurfaceModel triaxial(double a, double b, double c) {
  require_positive("triaxial", {a, b, c});
  const std::string as = num(a), bs = num(b), cs = num(c);
  const double cap = 0.35;
  SurfaceModel m;
  m.name = "triaxial:" + detail::format_number(a) + "," + detail::format_number(b) + "," +
           detail::format_number(c);
  m.charts.push_back(chart("b-poles", {as + "*sin(v)*cos(u)", bs + "*cos(v)", cs + "*sin(v)*sin(u)"},
                           box(0.0, kTwoPi, cap, std::numbers::pi - cap, true, false)));
  m.charts.push_back(chart("a-poles", {"-" + as + "*cos(v)", bs + "*sin(v)*cos(u)", cs + "*sin(v)*sin(u)"},
                           box(0.0, kTwoPi, cap, std::numbers::pi - cap, true, false)));
  m.euler_characteristic = 2;
  return m;
}

SurfaceModel graph(const std::string& height) {
  SurfaceModel m;
  m.name = "graph:" + height;
  m.charts.push_back(chart("graph", {"u", "v", height}, box(-1.0, 1.0, -1.0, 1.0, false, false)));
  return m;
}

SurfaceModel plane() {
  SurfaceModel m;
  m.name = "plane";
  m.charts.push_back(chart("plane", {"u", "v", "0"}, box(-1.0, 1.0, -1.0, 1.0, false, false)));
  return m;
}

SurfaceModel clifford() {
  SurfaceModel m;
  m.name = "clifford";
  m.charts.push_back(chart("flat", {"cos(u)/sqrt(2)", "sin(u)/sqrt(2)", "cos(v)/sqrt(2)", "sin(v)/sqrt(2)"},
                           box(0.0, kTwoPi, 0.0, kTwoPi, true, true)));
  m.ambient_curvature = 1.0;
  m.euler_characteristic = 0;
  return m;
}

SurfaceModel great_sphere() {
  SurfaceModel m;
  m.name = "great-sphere";
  m.charts.push_back(chart("pinned", {"cos(u)*cos(v)", "sin(u)*cos(v)", "sin(v)", "0"},
                           box(0.0, kTwoPi, -1.2, 1.2, true, false)));
  m.ambient_curvature = 1.0;
  return m;
}

SurfaceModel small_sphere(double alpha) {
  if (!(std::abs(alpha) < 0.5 * std::numbers::pi))
    throw ConfigError("small-sphere latitude must lie in (-pi/2, pi/2)");
  const std::string ca = num(std::cos(alpha)), sa = num(std::sin(alpha));
  SurfaceModel m;
  m.name = "small-sphere:" + detail::format_number(alpha);
  m.charts.push_back(chart("pinned", {ca + "*cos(u)*cos(v)", ca + "*sin(u)*cos(v)", ca + "*sin(v)", sa},
                           box(0.0, kTwoPi, -1.2, 1.2, true, false)));
  m.ambient_curvature = 1.0;
  return m;
}

std::vector<std::string> builtin_names() {
  return {"sphere:rho",   "cylinder:r",   "torus:R,r",    "prolate:a,c",     "triaxial:a,b,c",
          "graph:<expr>", "plane",        "clifford",     "great-sphere",    "small-sphere:alpha"};
}

SurfaceModel make_surface(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "graph") {
    if (args.empty()) throw ConfigError("graph needs a height expression");
    return graph(args);
  }
  const auto p = detail::parse_numbers(args, "surface '" + spec + "'");
  if (name == "sphere") return require_count(name, p, 1), sphere(p[0]);
  if (name == "cylinder") return require_count(name, p, 1), cylinder(p[0]);
  if (name == "torus") return require_count(name, p, 2), torus(p[0], p[1]);
  if (name == "prolate") return require_count(name, p, 2), prolate(p[0], p[1]);
  if (name == "triaxial") return require_count(name, p, 3), triaxial(p[0], p[1], p[2]);
  if (name == "plane") return require_count(name, p, 0), plane();
  if (name == "clifford") return require_count(name, p, 0), clifford();
  if (name == "great-sphere") return require_count(name, p, 0), great_sphere();
  if (name == "small-sphere") return require_count(name, p, 1), small_sphere(p[0]);
  throw ConfigError("unknown builtin surface '" + name + "'");
}

}  // namespace qdiff::builtins
