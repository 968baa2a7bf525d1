#include "qdiff/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "qdiff/builtins.hpp"
#include "qdiff/conformal.hpp"
#include "qdiff/error.hpp"
#include "qdiff/field.hpp"
#include "qdiff/io.hpp"
#include "qdiff/spaceform.hpp"
#include "qdiff/umbilic.hpp"
#include "qdiff/weingarten.hpp"

namespace qdiff::cli {

namespace {

using json = nlohmann::ordered_json;
using weingarten::FGPair;
using weingarten::WeingartenFunction;

std::string error_kind(const std::exception& e) {
#define QDIFF_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T;
  QDIFF_KIND(SyntaxError)
  QDIFF_KIND(UnknownIdentifier)
  QDIFF_KIND(DomainError)
  QDIFF_KIND(DegenerateImmersion)
  QDIFF_KIND(SingularCoframe)
  QDIFF_KIND(QuadratureNonConvergence)
  QDIFF_KIND(InvalidRange)
  QDIFF_KIND(NotAFunction)
  QDIFF_KIND(NonPositiveMetric)
  QDIFF_KIND(LoopThroughZero)
  QDIFF_KIND(UnresolvedWinding)
  QDIFF_KIND(AmbiguousLoop)
  QDIFF_KIND(NoConvergence)
  QDIFF_KIND(NotOnSphere)
  QDIFF_KIND(NotTangent)
  QDIFF_KIND(ConfigError)
  QDIFF_KIND(IoError)
#undef QDIFF_KIND
  return "Error";
}

bool is_config_error(const std::exception& e) {
  return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
         dynamic_cast<const IoError*>(&e);
}

json range_of(const std::vector<double>& xs) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : xs)
    if (!std::isnan(x)) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  return {{"min", lo}, {"max", hi}};
}

// Orders of +inf (exact to the floor) are reported as the string "exact".
json orders_json(const std::vector<double>& orders) {
  json a = json::array();
  for (double o : orders) {
    if (std::isinf(o)) a.push_back("exact");
    else a.push_back(o);
  }
  return a;
}

class Session {
 public:
  explicit Session(const config::AnalysisConfig& cfg) : cfg_(cfg), charts_(cfg.active_charts()) {}

  const config::AnalysisConfig& cfg() const { return cfg_; }
  const std::vector<Chart>& charts() const { return charts_; }
  double R() const { return cfg_.model.ambient_curvature; }
  Exec exec() const { return cfg_.exec; }

  const GeometryField& base(std::size_t c) {
    if (fields_.empty()) {
      fields_.reserve(charts_.size());
      for (const auto& ch : charts_) fields_.push_back(sweep_geometry(ch, cfg_.grid_for(ch), R(), exec()));
    }
    return fields_[c];
  }

  const std::vector<GeometryField>& fields() {
    base(0);
    return fields_;
  }

  bool has_relation() const { return cfg_.relation.has_value(); }

  const WeingartenFunction& relation(const std::string& who) {
    if (!cfg_.relation) throw ConfigError("'" + who + "' needs a relation (--f)");
    if (!f_) {
      f_ = WeingartenFunction::from_spec(cfg_.relation->spec);
      double eps = cfg_.relation->eps;
      if (!(eps > 0.0)) {
        double s = 0.0;
        for (const auto& fld : fields())
          for (const auto& n : fld.nodes) s = std::max(s, std::abs(n.shape.H) + std::abs(n.shape.z));
        eps = s > 0.0 ? 0.05 * s * s : 0.05;
      }
      f_->set_eps(eps);
    }
    return *f_;
  }

  // f itself when smooth through 0, else its smooth extension below x0.
  const WeingartenFunction& smooth_relation(const std::string& who) {
    const auto& f = relation(who);
    if (!smooth_) {
      if (f.smooth_through_zero()) {
        smooth_ = f;
      } else {
        double x0 = std::numeric_limits<double>::infinity();
        if (cfg_.relation->x0) {
          x0 = *cfg_.relation->x0;
        } else {
          for (const auto& fld : fields())
            for (const auto& n : fld.nodes) x0 = std::min(x0, n.shape.zz());
        }
        x0_ = x0;
        smooth_ = weingarten::smooth_extension(f, x0, f.eps());
      }
    }
    return *smooth_;
  }

  const FGPair& fg(const std::string& who) {
    if (!fg_) fg_ = std::make_unique<FGPair>(smooth_relation(who));
    return *fg_;
  }

  json relation_block(const std::string& who) {
    const auto& f = relation(who);
    json b = {{"spec", cfg_.relation->spec},
              {"provenance", weingarten::provenance_name(f.provenance())},
              {"eps", f.eps()},
              {"argument", cfg_.relation->argument == weingarten::Argument::ZZ ? "zz" : "shifted"}};
    smooth_relation(who);
    b["extended"] = x0_.has_value();
    if (x0_) b["x0"] = *x0_;
    return b;
  }

  void check(const std::string& name, double value, double tol, bool upper = true,
             const std::string& detail = "") {
    const bool pass = upper ? value <= tol : value >= tol;
    json c = {{"name", name}, {"value", value}, {"tolerance", tol}, {"op", upper ? "<=" : ">="},
              {"pass", pass}};
    if (!detail.empty()) c["detail"] = detail;
    checks_.push_back(c);
    if (!pass) failures_.push_back(name);
  }

  // Orders of a convergence study: pass when every order clears `min_order`,
  // with +inf standing for errors already at the exact floor.
  void order_check(const std::string& name, const ConvergenceStudy& s, double min_order) {
    check(name, s.orders.empty() ? std::numeric_limits<double>::quiet_NaN() : s.min_order(), min_order,
          false);
  }

  json& checks() { return checks_; }
  json& failures() { return failures_; }

 private:
  const config::AnalysisConfig& cfg_;
  std::vector<Chart> charts_;
  std::vector<GeometryField> fields_;
  std::optional<WeingartenFunction> f_, smooth_;
  std::optional<double> x0_;
  std::unique_ptr<FGPair> fg_;
  json checks_ = json::array();
  json failures_ = json::array();
};

std::string tag(const std::string& analysis, const Chart& c) { return analysis + "." + c.label; }

int refinements(const config::AnalysisConfig& cfg, int fallback) { return cfg.refine > 0 ? cfg.refine : fallback; }

json run_frames(Session& s) {
  json out = json::array();
  for (std::size_t c = 0; c < s.charts().size(); ++c) {
    const auto& ch = s.charts()[c];
    const auto& f = s.base(c);
    std::vector<double> H, K, g, sym, area;
    double zz_def = 0.0, im_z = 0.0;
    for (const auto& n : f.nodes) {
      H.push_back(n.shape.H);
      K.push_back(n.shape.K);
      g.push_back(n.shape.H * n.shape.H - n.shape.K + s.R());
      sym.push_back(n.shape.symmetry_defect);
      area.push_back(n.coframe.area());
      zz_def = std::max(zz_def, std::abs(n.shape.zz() - g.back()));
      im_z = std::max(im_z, std::abs(n.shape.z.imag()));
    }
    json b = {{"chart", ch.label},           {"grid", {f.grid.nu(), f.grid.nv()}},
              {"H", range_of(H)},            {"K", range_of(K)},
              {"g", range_of(g)},            {"zz_identity", zz_def},
              {"symmetry_defect", range_of(sym)["max"]}, {"area", range_of(area)},
              {"periodicity_defect", periodicity_defect(ch)}};
    const double tol = s.R() > 0.0 ? s.cfg().tol.spaceform_identity : s.cfg().tol.zz_identity;
    s.check(tag("frames", ch) + ".zz_identity", zz_def, tol);
    if (c == 0 && s.cfg().model.revolution_chart) {
      b["revolution_im_z"] = im_z;
      s.check(tag("frames", ch) + ".revolution_im_z", im_z, s.cfg().tol.revolution_im_z);
    }
    out.push_back(b);
  }
  return out;
}

json run_structure(Session& s) {
  json out = json::array();
  const int levels = refinements(s.cfg(), 2);
  for (const auto& ch : s.charts()) {
    const GridSpec g0 = s.cfg().grid_for(ch);
    std::vector<int> sizes;
    std::vector<double> h, e1, e2, e3, ec;
    for (int l = 0; l <= levels; ++l) {
      const GridSpec g(ch.domain, g0.nu() << l, g0.nv() << l);
      const auto f = sweep_geometry(ch, g, s.R(), s.exec());
      const auto d = structure_defects(f, s.exec());
      const auto cod = derivative_field(f, s.exec());
      sizes.push_back(g.nu());
      h.push_back(std::max(g.hu(), g.hv()));
      e1.push_back(d.s1.sup);
      e2.push_back(d.s2.sup);
      e3.push_back(d.s3.sup);
      ec.push_back(cod.codazzi_stats.sup);
    }
    const double floor = s.cfg().tol.exact_floor;
    const auto s1 = make_study(sizes, h, e1, floor), s2 = make_study(sizes, h, e2, floor),
               s3 = make_study(sizes, h, e3, floor), sc = make_study(sizes, h, ec, floor);
    json b = {{"chart", ch.label}, {"sizes", sizes}, {"spacings", h}};
    const std::pair<const char*, const ConvergenceStudy*> parts[] = {
        {"d_omega", &s1}, {"d_pi", &s2}, {"d_rho", &s3}, {"codazzi", &sc}};
    for (const auto& [name, st] : parts) {
      b[name] = {{"errors", st->errors}, {"orders", orders_json(st->orders)}};
      s.order_check(tag("structure", ch) + "." + name + ".order", *st, s.cfg().tol.structure_order);
    }
    out.push_back(b);
  }
  return out;
}

json run_weingarten(Session& s) {
  const auto& f = s.relation("weingarten");
  json out = {{"relation", s.relation_block("weingarten")}, {"charts", json::array()}};
  for (std::size_t c = 0; c < s.charts().size(); ++c) {
    const auto& ch = s.charts()[c];
    const auto r = weingarten::weingarten_residual(s.base(c), f, s.cfg().relation->argument);
    json b = {{"chart", ch.label}, {"sup", r.stats.sup}, {"l2", r.stats.l2}, {"flagged", r.flagged}};
    s.check(tag("weingarten", ch) + ".residual_sup", r.stats.sup, s.cfg().tol.weingarten);
    if (r.stats.sup <= s.cfg().tol.weingarten) {
      const auto& fs = s.smooth_relation("weingarten");
      const GridSpec g0 = s.cfg().grid_for(ch);
      std::vector<int> sizes;
      std::vector<double> h, err;
      for (int l = 0; l <= refinements(s.cfg(), 2); ++l) {
        const GridSpec g(ch.domain, g0.nu() << l, g0.nv() << l);
        const auto fld = sweep_geometry(ch, g, s.R(), s.exec());
        const auto cr = weingarten::crucial_relation_defect(fld, derivative_field(fld, s.exec()), fs);
        sizes.push_back(g.nu());
        h.push_back(std::max(g.hu(), g.hv()));
        err.push_back(cr.stats.sup);
      }
      const auto st = make_study(sizes, h, err, s.cfg().tol.exact_floor);
      b["crucial_relation"] = {{"sizes", sizes}, {"errors", err}, {"orders", orders_json(st.orders)}};
      s.order_check(tag("weingarten", ch) + ".crucial_relation.order", st, s.cfg().tol.crucial_order);
    }
    out["charts"].push_back(b);
  }
  return out;
}

json run_fit(Session& s) {
  std::vector<weingarten::RelationSample> samples;
  for (std::size_t c = 0; c < s.charts().size(); ++c) {
    const auto part = weingarten::relation_samples(s.base(c));
    samples.insert(samples.end(), part.begin(), part.end());
  }
  weingarten::FitOptions opt;
  opt.bins = s.cfg().fit_bins;
  opt.relative_tol = s.cfg().tol.fit_relative;
  json out = {{"samples", samples.size()}, {"bins", opt.bins}};
  weingarten::FittedRelation fit;
  try {
    fit = weingarten::fit_weingarten(samples, opt);
  } catch (const NotAFunction& e) {
    out["single_valued"] = false;
    out["message"] = e.what();
    s.check("fit.single_valued", 1.0, 0.0, true, e.what());
    return out;
  }
  out["single_valued"] = true;
  out["x_range"] = {fit.x_lo, fit.x_hi};
  out["score"] = fit.score;
  out["tolerance"] = fit.tolerance;
  out["bins_used"] = fit.bins_used;
  out["knots"] = fit.spline.knots().size();
  out["slope_blowup"] = fit.slope_blowup;
  out["slope_blowup_flag"] = fit.slope_blowup > s.cfg().tol.slope_blowup;
  s.check("fit.single_valued", fit.score, fit.tolerance);
  const auto fitted = fit.to_function();
  json table = json::array();
  for (int k = 0; k <= 10; ++k) {
    const double x = fit.x_lo + (fit.x_hi - fit.x_lo) * k / 10.0;
    const auto j = fitted.jet(x);
    table.push_back({{"x", x}, {"f", j.value}, {"df", j.d1}});
  }
  out["table"] = table;
  if (s.has_relation()) {
    const auto& f = s.relation("fit");
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double x = fit.x_lo + (fit.x_hi - fit.x_lo) * k / 1000.0;
      worst = std::max(worst, std::abs(fitted(x) - f(x)));
    }
    out["max_deviation_from_f"] = worst;
    s.check("fit.match_f", worst, s.cfg().tol.fit_match);
  }
  return out;
}

json run_fg(Session& s) {
  const auto& fg = s.fg("fg");
  json out = {{"relation", s.relation_block("fg")}, {"x_max", s.cfg().fg_x_max}};
  std::vector<double> xs;
  for (int k = 0; k <= 100; ++k) xs.push_back(s.cfg().fg_x_max * k / 100.0);
  const auto id = weingarten::fg_identity_check(fg, xs);
  json table = json::array();
  for (int k = 0; k <= 100; k += 10) {
    const auto v = fg.eval(xs[k]);
    table.push_back({{"x", xs[k]}, {"F", v.F}, {"G", v.G}, {"phi", v.phi}});
  }
  out["table"] = table;
  out["identity1"] = id.identity1;
  out["identity2"] = id.identity2;
  out["identity3"] = id.identity3;
  s.check("fg.identity1", id.identity1, s.cfg().tol.fg_identity1);
  s.check("fg.identity2", id.identity2, s.cfg().tol.fg_identity23);
  s.check("fg.identity3", id.identity3, s.cfg().tol.fg_identity23);
  return out;
}

json run_holomorphy(Session& s) {
  const auto& fg = s.fg("holomorphy");
  json out = {{"relation", s.relation_block("holomorphy")}, {"charts", json::array()}};
  for (std::size_t c = 0; c < s.charts().size(); ++c) {
    const auto& ch = s.charts()[c];
    const auto& base = s.base(c);
    const auto h = conformal::holomorphy_residual(base, fg, s.exec());
    double area_err = 0.0;
    std::size_t bad_metric = 0;
    for (std::size_t k = 0; k < base.nodes.size(); ++k) {
      const double a = base.nodes[k].coframe.area();
      area_err = std::max(area_err, std::abs(h.sigma[k].area() - a) / std::abs(a));
      try {
        conformal::metric_from_sigma(h.sigma[k]);
      } catch (const NonPositiveMetric&) {
        ++bad_metric;
      }
    }
    json b = {{"chart", ch.label},
              {"grid", {base.grid.nu(), base.grid.nv()}},
              {"normalized_sup", h.stats.sup},
              {"normalized_l2", h.stats.l2},
              {"sigma_area_defect", area_err},
              {"non_positive_metric_nodes", bad_metric}};
    s.check(tag("holomorphy", ch) + ".sigma_area", area_err, s.cfg().tol.sigma_area);
    s.check(tag("holomorphy", ch) + ".metric_positive", static_cast<double>(bad_metric), 0.0);
    const GridSpec g0 = s.cfg().grid_for(ch);
    const auto st = conformal::holomorphy_study(ch, fg, s.R(), g0.nu(), g0.nv(), refinements(s.cfg(), 2), s.exec(),
                                                s.cfg().tol.exact_floor);
    b["sup"] = {{"sizes", st.sup.sizes}, {"errors", st.sup.errors}, {"orders", orders_json(st.sup.orders)}};
    b["l2"] = {{"errors", st.l2.errors}, {"orders", orders_json(st.l2.orders)}};
    s.order_check(tag("holomorphy", ch) + ".order", st.sup, s.cfg().tol.holomorphy_order);
    out["charts"].push_back(b);
  }
  return out;
}

json point_json(const umbilic::UmbilicPoint& p, const std::vector<Chart>& charts, int dim) {
  std::vector<double> pos(p.position.data(), p.position.data() + dim);
  return {{"chart", charts[p.chart].label}, {"u", p.u}, {"v", p.v}, {"position", pos},
          {"g", p.g}, {"degree", p.degree}, {"index", p.index}, {"loop_radius", p.loop_radius},
          {"min_abs_z", p.min_abs_z}, {"samples", p.samples}};
}

json run_umbilics(Session& s) {
  SurfaceModel model = s.cfg().model;
  model.charts = s.charts();
  const bool full_cover = model.charts.size() == s.cfg().model.charts.size();
  const auto rep = umbilic::index_sum_check(model, s.fields(), {}, {}, s.exec());
  const int dim = s.R() > 0.0 ? 4 : 3;
  json pts = json::array();
  for (const auto& p : rep.umbilics) pts.push_back(point_json(p, model.charts, dim));
  json fails = json::array();
  for (const auto& f : rep.search.failures)
    fails.push_back({{"chart", model.charts[f.chart].label}, {"u", f.u}, {"v", f.v}, {"message", f.message}});
  json out = {{"charts", model.charts.size()},
              {"totally_umbilic", rep.search.totally_umbilic},
              {"min_g", rep.search.min_g},
              {"max_g", rep.search.max_g},
              {"tol_g", rep.search.tol_g},
              {"count", rep.umbilics.size()},
              {"umbilics", pts},
              {"refine_failures", fails},
              {"left_chart", rep.search.left_chart},
              {"index_sum", rep.index_sum}};
  if (rep.euler_characteristic) out["euler_characteristic"] = *rep.euler_characteristic;
  s.check("umbilics.refine_failures", static_cast<double>(fails.size()), 0.0);
  if (rep.euler_characteristic && full_cover && !rep.search.totally_umbilic)
    s.check("umbilics.index_sum_minus_chi", std::abs(rep.index_sum - *rep.euler_characteristic), 0.0);
  if (s.has_relation()) {
    double sup = 0.0;
    for (const auto& f : s.fields())
      sup = std::max(sup, weingarten::weingarten_residual(f, s.relation("umbilics"),
                                                          s.cfg().relation->argument).stats.sup);
    const auto neg = umbilic::negative_index_check(rep, sup, s.relation("umbilics").smooth_through_zero(),
                                                   s.cfg().tol.weingarten);
    out["negative_index"] = {{"applies", neg.applies}, {"holds", neg.holds}, {"detail", neg.detail}};
    if (neg.applies) s.check("umbilics.negative_index", neg.holds ? 0.0 : 1.0, 0.0, true, neg.detail);
  }
  return out;
}

json run_classify(Session& s) {
  const auto& f = s.relation("classify");
  json out = {{"relation", s.relation_block("classify")}, {"charts", json::array()}};
  for (std::size_t c = 0; c < s.charts().size(); ++c) {
    const auto r = weingarten::ellipticity_field(s.base(c), f, s.cfg().tol.elliptic_band,
                                                 s.cfg().relation->argument);
    out["charts"].push_back({{"chart", s.charts()[c].label},
                             {"A", range_of(r.A)},
                             {"elliptic", r.elliptic},
                             {"parabolic", r.parabolic},
                             {"hyperbolic", r.hyperbolic},
                             {"nodes", r.count}});
  }
  return out;
}

json run_spaceform(Session& s) {
  json out = {{"ambient_curvature", s.R()}, {"charts", json::array()}};
  const double tol = s.R() > 0.0 ? s.cfg().tol.spaceform_identity : s.cfg().tol.zz_identity;
  for (std::size_t c = 0; c < s.charts().size(); ++c) {
    const auto& f = s.base(c);
    const auto inv = spaceform::spaceform_invariant_check(f);
    std::vector<double> H, K, zz;
    for (const auto& n : f.nodes) {
      H.push_back(n.shape.H);
      K.push_back(n.shape.K);
      zz.push_back(n.shape.zz());
    }
    out["charts"].push_back({{"chart", s.charts()[c].label},
                             {"H", range_of(H)},
                             {"K", range_of(K)},
                             {"zz", range_of(zz)},
                             {"invariant_defect", inv.sup}});
    s.check(tag("spaceform", s.charts()[c]) + ".invariant", inv.sup, tol);
  }
  return out;
}

std::vector<std::string> default_all(const config::AnalysisConfig& cfg) {
  std::vector<std::string> a{"frames", "structure-check"};
  if (cfg.relation) {
    a.insert(a.end(), {"weingarten", "fg", "holomorphy", "classify"});
  }
  if (cfg.model.euler_characteristic) a.push_back("umbilics");
  if (cfg.model.ambient_curvature > 0.0) a.push_back("spaceform");
  return a;
}

using Runner = json (*)(Session&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m{
      {"frames", run_frames},         {"structure-check", run_structure}, {"weingarten", run_weingarten},
      {"fit", run_fit},               {"fg", run_fg},                     {"holomorphy", run_holomorphy},
      {"umbilics", run_umbilics},     {"classify", run_classify},         {"spaceform", run_spaceform}};
  return m;
}

std::string with_label(const std::string& path, const std::string& label, bool multi) {
  if (!multi) return path;
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + label;
  return path.substr(0, dot) + "." + label + path.substr(dot);
}

// CSV and heatmaps at the base grid of every active chart.
json write_artifacts(Session& s) {
  const auto& out = s.cfg().outputs;
  json written = json::array();
  if (out.csv.empty() && out.svg.empty()) return written;
  const bool multi = s.charts().size() > 1;
  for (std::size_t c = 0; c < s.charts().size(); ++c) {
    const auto& ch = s.charts()[c];
    const auto& f = s.base(c);
    std::vector<double> A, res;
    if (s.has_relation()) {
      try {
        A = weingarten::ellipticity_field(f, s.relation("outputs"), s.cfg().tol.elliptic_band,
                                          s.cfg().relation->argument).A;
        res = conformal::holomorphy_residual(f, s.fg("outputs"), s.exec()).normalized;
      } catch (const Error&) {
        // columns stay NaN when the relation cannot be applied on this chart
      }
    }
    const auto table = io::node_table(f, A, res);
    if (!out.csv.empty()) {
      const std::string p = with_label(out.csv, ch.label, multi);
      io::write_csv(table, p);
      written.push_back(p);
    }
    if (!out.svg.empty()) {
      const std::string prefix = multi ? out.svg + "_" + ch.label : out.svg;
      const std::pair<std::string, const std::vector<double>*> maps[] = {
          {"g", &table.g}, {"H", &table.H}, {"res_abs", &table.res_abs}};
      for (const auto& [name, values] : maps) {
        if (name == "res_abs" && res.empty()) continue;
        const std::string p = prefix + "_" + name + ".svg";
        io::write_svg_heatmap(f.grid.nu(), f.grid.nv(), *values, name, p);
        written.push_back(p);
      }
    }
  }
  return written;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"frames", "structure-check", "weingarten", "fit",
                                          "fg",     "holomorphy",      "umbilics",   "classify",
                                          "spaceform", "all"};
  return s;
}

Outcome analyze(const std::string& subcommand, const config::AnalysisConfig& cfg) {
  Session s(cfg);
  Outcome o;
  json& r = o.report;
  r["tool"] = "qdiff";
  r["version"] = kVersion;
  r["subcommand"] = subcommand;
  r["surface"] = cfg.model.name;
  r["ambient_curvature"] = cfg.model.ambient_curvature;
  r["config"] = cfg.echo;
  r["analyses"] = json::object();
  json errors = json::array();
  json timings = json::object();

  std::vector<std::string> todo;
  if (subcommand == "all") todo = cfg.analyses.empty() ? default_all(cfg) : cfg.analyses;
  else todo = {subcommand};
  bool config_failure = false;
  for (const auto& name : todo) {
    const auto it = runners().find(name);
    if (it == runners().end()) {
      errors.push_back({{"analysis", name}, {"type", "ConfigError"}, {"message", "unknown analysis"}});
      config_failure = true;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r["analyses"][name] = it->second(s);
    } catch (const Error& e) {
      errors.push_back({{"analysis", name}, {"type", error_kind(e)}, {"message", e.what()}});
      if (is_config_error(e)) config_failure = true;
    }
    timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  try {
    const auto written = write_artifacts(s);
    if (!written.empty()) r["artifacts"] = written;
  } catch (const Error& e) {
    errors.push_back({{"analysis", "outputs"}, {"type", error_kind(e)}, {"message", e.what()}});
    config_failure = config_failure || is_config_error(e);
  }

  r["checks"] = s.checks();
  r["failures"] = s.failures();
  if (!errors.empty()) r["errors"] = errors;
  if (cfg.timings) r["timings_ms"] = timings;
  if (config_failure) o.exit_code = kConfigError;
  else if (!errors.empty()) o.exit_code = kRuntimeError;
  else if (!s.failures().empty()) o.exit_code = kCheckFailed;
  r["pass"] = o.exit_code == kPass;
  r["exit_code"] = o.exit_code;
  return o;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, Weingarten-relation and umbilic analysis of parametric surfaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  struct Flags {
    std::string config, surface, f, grid, ambient, out, csv, svg, exec, argument;
    std::optional<int> refine, charts, bins;
    std::optional<double> eps, x0, fg_x_max;
    bool timings = false;
  } fl;

  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name, "run the '" + name + "' analysis");
    sub->add_option("--config", fl.config, "JSON config file");
    sub->add_option("--surface", fl.surface, "builtin surface, e.g. torus:2,1");
    sub->add_option("--f", fl.f, "relation: const:c | liebmann:K0 | shifted-sqrt | expr:<x>");
    sub->add_option("--grid", fl.grid, "grid size NxM");
    sub->add_option("--refine", fl.refine, "number of grid doublings");
    sub->add_option("--charts", fl.charts, "use only the first N charts");
    sub->add_option("--ambient", fl.ambient, "euclidean | sphere:R");
    sub->add_option("--eps", fl.eps, "relation extension width");
    sub->add_option("--x0", fl.x0, "relation extension point");
    sub->add_option("--argument", fl.argument, "relation argument: zz | shifted");
    sub->add_option("--bins", fl.bins, "fit bins");
    sub->add_option("--fg-xmax", fl.fg_x_max, "upper end of the F/G check range");
    sub->add_option("--out", fl.out, "report path (default stdout)");
    sub->add_option("--csv", fl.csv, "node table path");
    sub->add_option("--svg", fl.svg, "heatmap path prefix");
    sub->add_option("--exec", fl.exec, "serial | parallel");
    sub->add_flag("--timings", fl.timings, "include timings in the report");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "qdiff: " << e.what() << "\n";
    return kConfigError;
  }
  const std::string subcommand = app.get_subcommands().front()->get_name();

  config::AnalysisConfig cfg;
  try {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    if (!fl.config.empty()) {
      std::ifstream f(fl.config);
      if (!f) throw ConfigError("cannot read config '" + fl.config + "'");
      try {
        doc = nlohmann::ordered_json::parse(f);
      } catch (const nlohmann::ordered_json::parse_error& e) {
        throw ConfigError("config '" + fl.config + "' is not valid JSON: " + e.what());
      }
      if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    }
    if (!fl.surface.empty()) {
      doc.erase("x");
      doc.erase("domain");
      doc["surface"] = fl.surface;
    }
    if (!fl.f.empty()) doc["f"] = fl.f;
    if (fl.eps || fl.x0 || !fl.argument.empty()) {
      if (!doc.contains("f")) throw ConfigError("--eps, --x0 and --argument need a relation");
      if (doc["f"].is_string()) {
        const std::string spec = doc["f"].get<std::string>();
        const auto colon = spec.find(':');
        nlohmann::ordered_json f = {{"kind", spec.substr(0, colon)}};
        if (colon != std::string::npos) f["value"] = spec.substr(colon + 1);
        doc["f"] = f;
      }
      if (fl.eps) doc["f"]["eps"] = *fl.eps;
      if (fl.x0) doc["f"]["x0"] = *fl.x0;
      if (!fl.argument.empty()) doc["f"]["argument"] = fl.argument;
    }
    if (!fl.grid.empty()) doc["grid"] = fl.grid;
    if (fl.refine) doc["refine"] = *fl.refine;
    if (fl.charts) doc["charts"] = *fl.charts;
    if (!fl.ambient.empty()) doc["ambient"] = fl.ambient;
    if (fl.bins) doc["fit_bins"] = *fl.bins;
    if (fl.fg_x_max) doc["fg_x_max"] = *fl.fg_x_max;
    if (!fl.exec.empty()) doc["exec"] = fl.exec;
    if (fl.timings) doc["timings"] = true;
    for (const auto& [key, value] : {std::pair{"report", &fl.out}, {"csv", &fl.csv}, {"svg", &fl.svg}})
      if (!value->empty()) doc["outputs"][key] = *value;
    cfg = config::from_json(doc);
    config::validate(cfg);
  } catch (const Error& e) {
    err << "qdiff: " << error_kind(e) << ": " << e.what() << "\n";
    nlohmann::ordered_json r = {{"tool", "qdiff"},           {"version", kVersion},
                                {"subcommand", subcommand}, {"pass", false},
                                {"exit_code", kConfigError},
                                {"errors", {{{"analysis", "config"}, {"type", error_kind(e)}, {"message", e.what()}}}}};
    out << r.dump(2) << "\n";
    return kConfigError;
  }

  Outcome o = analyze(subcommand, cfg);
  const std::string text = o.report.dump(2) + "\n";
  if (cfg.outputs.report.empty()) {
    out << text;
  } else {
    try {
      io::write_text(cfg.outputs.report, text);
    } catch (const Error& e) {
      err << "qdiff: " << e.what() << "\n";
      return kConfigError;
    }
  }
  for (const auto& f : o.report["failures"]) err << "qdiff: check failed: " << f.get<std::string>() << "\n";
  if (o.report.contains("errors"))
    for (const auto& e : o.report["errors"])
      err << "qdiff: " << e["analysis"].get<std::string>() << ": " << e["type"].get<std::string>() << ": "
          << e["message"].get<std::string>() << "\n";
  return o.exit_code;
}

}  // namespace qdiff::cli
