#include "qdiff/weingarten.hpp"

#include <algorithm>
#include <cmath>

#include "qdiff/error.hpp"
#include "qdiff/expr.hpp"
#include "qdiff/quadrature.hpp"
#include "text_util.hpp"

namespace qdiff::weingarten {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Constant: return "constant";
    case Provenance::Liebmann: return "liebmann";
    case Provenance::ShiftedSqrt: return "shifted-sqrt";
    case Provenance::Expression: return "expression";
    case Provenance::Fitted: return "fitted";
    case Provenance::Extended: return "extended";
  }
  return "unknown";
}

WeingartenFunction::WeingartenFunction(std::string name, Provenance provenance, Evaluator eval,
                                       double lower_bound, double eps)
    : name_(std::move(name)),
      provenance_(provenance),
      eval_(std::move(eval)),
      lower_(lower_bound),
      eps_(eps) {}

void WeingartenFunction::set_breakpoints(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  breaks_ = std::move(xs);
}

WeingartenFunction WeingartenFunction::constant(double c) {
  return {"const:" + detail::format_number(c), Provenance::Constant,
          [c](double) { return FJet{c, 0.0, 0.0}; },
          -std::numeric_limits<double>::infinity()};
}

WeingartenFunction WeingartenFunction::liebmann(double K0) {
  if (!(K0 > 0.0)) throw ConfigError("liebmann relation needs K0 > 0");
  return {"liebmann:" + detail::format_number(K0), Provenance::Liebmann,
          [K0](double x) {
            const double s = std::sqrt(K0 + x);
            return FJet{s, 0.5 / s, -0.25 / (s * s * s)};
          },
          -K0};
}

WeingartenFunction WeingartenFunction::shifted_sqrt() {
  return {"shifted-sqrt", Provenance::ShiftedSqrt,
          [](double x) {
            const double s = std::sqrt(x);
            return FJet{s - 1.0, 0.5 / s, -0.25 / (x * s)};
          },
          0.0};
}

WeingartenFunction WeingartenFunction::expression(const std::string& source) {
  auto ast = expr::parse_expression(source, {"x"});
  return {"expr:" + source, Provenance::Expression,
          [ast](double x) {
            const auto j = expr::eval_scalar_d2(ast, x);
            return FJet{j.value, j.d1, j.d2};
          },
          -std::numeric_limits<double>::infinity()};
}

WeingartenFunction WeingartenFunction::from_spec(const std::string& spec) {
  if (spec == "shifted-sqrt") return shifted_sqrt();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown relation '" + spec + "'");
  const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "const") return constant(detail::parse_number(arg, "const:c"));
  if (kind == "liebmann") return liebmann(detail::parse_number(arg, "liebmann:K0"));
  if (kind == "expr") return expression(arg);
  throw ConfigError("unknown relation kind '" + kind + "'");
}

FJet WeingartenFunction::jet(double x) const {
  if (!eval_) throw ConfigError("empty Weingarten function");
  if (!(x > lower_)) throw DomainError(name_, x);
  return eval_(x);
}

WeingartenFunction smooth_extension(const WeingartenFunction& f, double x0, double eps) {
  if (!(x0 > 0.0)) throw InvalidRange("smooth extension needs x0 > 0");
  if (!(eps > 0.0)) throw InvalidRange("smooth extension needs eps > 0");
  const FJet b = f.jet(x0);
  const double te = -0.5 * eps - x0;
  const double c = -(b.d1 + b.d2 * te) / (3.0 * te * te);
  auto cubic = [b, c](double t) {
    return FJet{b.value + t * (b.d1 + t * (0.5 * b.d2 + c * t)), b.d1 + t * (b.d2 + 3.0 * c * t),
                b.d2 + 6.0 * c * t};
  };
  const FJet floor = cubic(te);
  auto eval = [f, x0, te, cubic, floor](double x) {
    if (x >= x0) return f.jet(x);
    const double t = x - x0;
    if (t >= te) return cubic(t);
    return FJet{floor.value, 0.0, 0.0};
  };
  WeingartenFunction g(f.name() + "@ext(" + detail::format_number(x0) + ")", Provenance::Extended, eval,
                       -std::numeric_limits<double>::infinity(), eps);
  std::vector<double> br{te + x0, x0};
  for (double x : f.breakpoints())
    if (x > x0) br.push_back(x);
  g.set_breakpoints(std::move(br));
  return g;
}

FGPair::FGPair(WeingartenFunction f, double quad_tol, double series_radius)
    : f_(std::move(f)), tol_(quad_tol), rs_(series_radius) {}

double FGPair::phi(double r) const {
  if (r == 0.0) return 0.0;
  if (r < 0.0) return -phi(-r);
  auto integrand = [this](double s) { return f_.jet(s * s).d1; };
  double acc = 0.0, a = 0.0;
  for (double x : f_.breakpoints()) {
    if (!(x > 0.0)) continue;
    const double s = std::sqrt(x);
    if (s >= r) break;
    acc += integrate_adaptive(integrand, a, s, tol_, tol_).value;
    a = s;
  }
  return acc + integrate_adaptive(integrand, a, r, tol_, tol_).value;
}

FGPair::Value FGPair::eval(double x) const {
  if (!(x >= 0.0)) throw DomainError("F,G", x);
  const double r = std::sqrt(x);
  Value out;
  if (r < rs_) {
    const FJet j0 = f_.jet(0.0);
    const double a = j0.d1, b = j0.d2 / 3.0;
    out.phi = r * (a + b * x);
    out.F = std::cosh(out.phi);
    out.G = a + (b + a * a * a / 6.0) * x;
    return out;
  }
  out.phi = phi(r);
  out.F = std::cosh(out.phi);
  out.G = std::sinh(out.phi) / r;
  return out;
}

IdentityCheck fg_identity_check(const FGPair& fg, const std::vector<double>& xs, double h_fixed) {
  IdentityCheck c;
  for (const double x : xs) {
    const double h = h_fixed > 0.0 ? h_fixed : 1e-4 * std::max(1.0, x);
    const auto v = fg.eval(x);
    const FJet fj = fg.f().jet(x);
    double dF, dG;
    if (x < h) {
      const auto a = fg.eval(x + h), b = fg.eval(x + 2.0 * h);
      dF = (-3.0 * v.F + 4.0 * a.F - b.F) / (2.0 * h);
      dG = (-3.0 * v.G + 4.0 * a.G - b.G) / (2.0 * h);
    } else {
      const auto a = fg.eval(x + h), b = fg.eval(x - h);
      dF = (a.F - b.F) / (2.0 * h);
      dG = (a.G - b.G) / (2.0 * h);
    }
    c.identity1 = std::max(c.identity1, std::abs(v.F * v.F - x * v.G * v.G - 1.0));
    c.identity2 = std::max(c.identity2, std::abs(2.0 * dF - fj.d1 * v.G));
    c.identity3 = std::max(c.identity3, std::abs(2.0 * x * dG - (fj.d1 * v.F - v.G)));
  }
  return c;
}

double relation_argument(const geom::ShapeData& s, double R, Argument arg) {
  return arg == Argument::ZZ ? s.zz() : s.zz() - R;
}

ResidualStats weingarten_residual(const GeometryField& field, const WeingartenFunction& f,
                                  Argument arg) {
  ResidualStats out;
  out.field.assign(field.nodes.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < field.nodes.size(); ++k) {
    const auto& s = field.nodes[k].shape;
    const double x = relation_argument(s, field.ambient_curvature, arg);
    if (x < -f.eps()) throw DomainError(f.name(), x);
    if (x < -0.5 * f.eps()) {
      ++out.flagged;
      continue;
    }
    out.field[k] = std::abs(s.H - f(x));
  }
  out.stats = field_stats(field.grid, out.field, field.area());
  return out;
}

ResidualStats crucial_relation_defect(const GeometryField& field, const DerivativeField& coeffs,
                                      const WeingartenFunction& f) {
  ResidualStats out;
  out.field.resize(field.nodes.size());
  for (std::size_t k = 0; k < field.nodes.size(); ++k) {
    const auto& s = field.nodes[k].shape;
    const auto& c = coeffs.coeffs[k];
    out.field[k] = std::abs(c.u - f.derivative(s.zz()) * (std::conj(s.z) * c.v + s.z * std::conj(c.u)));
  }
  out.stats = field_stats(field.grid, out.field, field.area());
  return out;
}

const char* class_name(EllipticClass c) {
  switch (c) {
    case EllipticClass::Elliptic: return "elliptic";
    case EllipticClass::Parabolic: return "parabolic";
    case EllipticClass::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

Ellipticity ellipticity(const WeingartenFunction& f, double x, double tol) {
  if (!(x >= 0.0)) throw DomainError("ellipticity", x);
  const double d = f.derivative(x);
  Ellipticity e;
  e.A = 4.0 * x * d * d;
  if (e.A < 1.0 - tol) e.cls = EllipticClass::Elliptic;
  else if (e.A > 1.0 + tol) e.cls = EllipticClass::Hyperbolic;
  else e.cls = EllipticClass::Parabolic;
  return e;
}

EllipticityReport ellipticity_field(const GeometryField& field, const WeingartenFunction& f,
                                    double tol, Argument arg) {
  EllipticityReport r;
  const GridSpec& g = field.grid;
  r.A.assign(field.nodes.size(), std::numeric_limits<double>::quiet_NaN());
  std::size_t n_e = 0, n_p = 0, n_h = 0;
  for (int j = 0; j < g.nv(); ++j)
    for (int i = 0; i < g.nu(); ++i) {
      const std::size_t k = g.index(i, j);
      const double x = std::max(0.0, relation_argument(field.nodes[k].shape, field.ambient_curvature, arg));
      const auto e = ellipticity(f, x, tol);
      r.A[k] = e.A;
      if (!g.interior(i, j)) continue;
      ++r.count;
      if (e.cls == EllipticClass::Elliptic) ++n_e;
      else if (e.cls == EllipticClass::Parabolic) ++n_p;
      else ++n_h;
    }
  if (r.count > 0) {
    const double n = static_cast<double>(r.count);
    r.elliptic = n_e / n;
    r.parabolic = n_p / n;
    r.hyperbolic = n_h / n;
  }
  return r;
}

std::vector<RelationSample> relation_samples(const GeometryField& field) {
  std::vector<RelationSample> out;
  out.reserve(field.nodes.size());
  for (const auto& n : field.nodes) out.push_back({n.shape.H * n.shape.H - n.shape.K, n.shape.H});
  return out;
}

FittedRelation fit_weingarten(const std::vector<RelationSample>& input, const FitOptions& opt) {
  if (input.size() < 4) throw InvalidRange("fit needs at least four samples");
  if (opt.bins < 2) throw ConfigError("fit needs at least two bins");
  std::vector<RelationSample> s = input;
  std::sort(s.begin(), s.end(), [](const RelationSample& a, const RelationSample& b) {
    return a.x < b.x || (a.x == b.x && a.H < b.H);
  });
  FittedRelation fit;
  fit.x_lo = s.front().x;
  fit.x_hi = s.back().x;
  double hmax = 0.0;
  for (const auto& p : s) hmax = std::max(hmax, std::abs(p.H));
  fit.tolerance = opt.relative_tol * std::max(hmax, 1e-300);
  if (!(fit.x_hi > fit.x_lo)) throw InvalidRange("fit needs a nondegenerate range of H^2 - K");

  const double w = (fit.x_hi - fit.x_lo) / opt.bins;
  std::vector<double> kx{s.front().x}, ky{s.front().H};
  std::vector<int> kbin{0};
  const double min_gap = 1e-12 * (fit.x_hi - fit.x_lo);
  auto push_knot = [&](const RelationSample& p, int bin) {
    if (p.x > kx.back() + min_gap) {
      kx.push_back(p.x);
      ky.push_back(p.H);
      kbin.push_back(bin);
    }
  };

  std::size_t begin = 0;
  for (int b = 0; b < opt.bins; ++b) {
    const double hi = b + 1 == opt.bins ? std::numeric_limits<double>::infinity() : fit.x_lo + (b + 1) * w;
    std::size_t end = begin;
    while (end < s.size() && s[end].x < hi) ++end;
    if (end > begin) {
      ++fit.bins_used;
      double up = 0.0, down = 0.0;
      for (std::size_t k = begin + 1; k < end; ++k) {
        const double d = s[k].H - s[k - 1].H;
        if (d > 0) up += d;
        else down -= d;
      }
      fit.score = std::max(fit.score, std::min(up, down));
      push_knot(s[begin + (end - begin) / 2], b);
    }
    begin = end;
  }
  push_knot(s.back(), opt.bins - 1);

  if (fit.score > fit.tolerance)
    throw NotAFunction("H is not a function of H^2 - K on these samples (score " +
                       detail::format_number(fit.score) + " > " + detail::format_number(fit.tolerance) + ")");
  if (kx.size() < 2) throw InvalidRange("fit produced fewer than two knots");

  fit.spline = MonotoneCubic(kx, ky);
  std::vector<double> slopes;
  double low = 0.0;
  for (std::size_t k = 0; k < kx.size(); ++k) {
    const double d = std::abs(fit.spline.slopes()[k]);
    slopes.push_back(d);
    if (kbin[k] < 2) low = std::max(low, d);
  }
  std::nth_element(slopes.begin(), slopes.begin() + slopes.size() / 2, slopes.end());
  const double median = slopes[slopes.size() / 2];
  fit.slope_blowup = median > 0.0 ? low / median : std::numeric_limits<double>::infinity();
  return fit;
}

WeingartenFunction FittedRelation::to_function(double eps) const {
  const MonotoneCubic sp = spline;
  WeingartenFunction raw("fitted", Provenance::Fitted,
                         [sp](double x) {
                           const auto e = sp.eval(x);
                           return FJet{e.value, e.d1, e.d2};
                         },
                         -std::numeric_limits<double>::infinity(), eps);
  raw.set_breakpoints(spline.knots());
  if (x_lo > 0.0) {
    auto ext = smooth_extension(raw, x_lo, eps);
    WeingartenFunction g("fitted", Provenance::Fitted, [ext](double x) { return ext.jet(x); },
                         -std::numeric_limits<double>::infinity(), eps);
    g.set_breakpoints(ext.breakpoints());
    return g;
  }
  return raw;
}

}  // namespace qdiff::weingarten
