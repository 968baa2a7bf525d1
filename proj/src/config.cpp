#include "qdiff/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "qdiff/builtins.hpp"
#include "qdiff/error.hpp"
#include "text_util.hpp"

namespace qdiff::config {

using json = nlohmann::ordered_json;

namespace {

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError("'" + key + "' must be a string");
  return j.get<std::string>();
}

std::pair<double, double> range(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("'" + key + "' must be [min, max]");
  return {number(j[0], key), number(j[1], key)};
}

RelationSpec relation_from(const json& j) {
  RelationSpec r;
  if (j.is_string()) {
    r.spec = j.get<std::string>();
    return r;
  }
  if (!j.is_object()) throw ConfigError("'f' must be a string or an object");
  static const std::set<std::string> keys{"kind", "value", "eps", "x0", "argument"};
  for (const auto& [k, _] : j.items())
    if (!keys.count(k)) throw ConfigError("unknown key 'f." + k + "'");
  if (!j.contains("kind")) throw ConfigError("'f.kind' is required");
  const std::string kind = text(j["kind"], "f.kind");
  auto value = [&]() -> std::string {
    if (!j.contains("value")) throw ConfigError("'f.value' is required for kind '" + kind + "'");
    const auto& v = j["value"];
    return v.is_string() ? v.get<std::string>() : detail::format_number(number(v, "f.value"));
  };
  if (kind == "shifted-sqrt") r.spec = kind;
  else if (kind == "const" || kind == "liebmann" || kind == "expr") r.spec = kind + ":" + value();
  else throw ConfigError("unknown relation kind '" + kind + "'");
  if (j.contains("eps")) r.eps = number(j["eps"], "f.eps");
  if (j.contains("x0")) r.x0 = number(j["x0"], "f.x0");
  if (j.contains("argument")) {
    const std::string a = text(j["argument"], "f.argument");
    if (a == "zz") r.argument = weingarten::Argument::ZZ;
    else if (a == "shifted") r.argument = weingarten::Argument::Shifted;
    else throw ConfigError("'f.argument' must be \"zz\" or \"shifted\"");
  }
  return r;
}

void tolerances_from(const json& j, Tolerances& t) {
  if (!j.is_object()) throw ConfigError("'tolerances' must be an object");
  const std::pair<const char*, double*> fields[] = {
      {"zz_identity", &t.zz_identity},       {"spaceform_identity", &t.spaceform_identity},
      {"structure_order", &t.structure_order}, {"crucial_order", &t.crucial_order},
      {"holomorphy_order", &t.holomorphy_order}, {"holomorphy_exact", &t.holomorphy_exact},
      {"weingarten", &t.weingarten},          {"fg_identity1", &t.fg_identity1},
      {"fg_identity23", &t.fg_identity23},    {"sigma_area", &t.sigma_area},
      {"revolution_im_z", &t.revolution_im_z}, {"elliptic_band", &t.elliptic_band},
      {"fit_relative", &t.fit_relative},      {"fit_match", &t.fit_match},
      {"slope_blowup", &t.slope_blowup},      {"exact_floor", &t.exact_floor}};
  for (const auto& [k, v] : j.items()) {
    bool found = false;
    for (const auto& [name, ptr] : fields)
      if (k == name) {
        *ptr = number(v, "tolerances." + k);
        found = true;
      }
    if (!found) throw ConfigError("unknown tolerance '" + k + "'");
  }
}

}  // namespace

GridSpec AnalysisConfig::grid_for(const Chart& chart) const {
  return GridSpec(chart.domain, n_u.value_or(chart.domain.n_u), n_v.value_or(chart.domain.n_v));
}

std::vector<Chart> AnalysisConfig::active_charts() const {
  const auto& all = model.charts;
  const std::size_t n = charts > 0 ? std::min<std::size_t>(charts, all.size()) : all.size();
  return {all.begin(), all.begin() + static_cast<long>(n)};
}

double parse_ambient(const std::string& spec) {
  if (spec == "euclidean") return 0.0;
  if (spec.rfind("sphere:", 0) == 0) {
    const double R = detail::parse_number(spec.substr(7), "ambient");
    if (!(R > 0.0)) throw ConfigError("sphere ambient needs R > 0");
    return R;
  }
  throw ConfigError("ambient must be \"euclidean\" or \"sphere:R\"");
}

std::pair<int, int> parse_grid(const std::string& spec) {
  const auto x = spec.find('x');
  auto to_int = [&](const std::string& s) {
    const double d = detail::parse_number(s, "grid");
    if (d != std::floor(d) || d < 1 || d > 1e6) throw ConfigError("grid counts must be positive integers");
    return static_cast<int>(d);
  };
  if (x == std::string::npos) {
    const int n = to_int(spec);
    return {n, n};
  }
  return {to_int(spec.substr(0, x)), to_int(spec.substr(x + 1))};
}

AnalysisConfig from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> keys{"name",  "surface",  "x",         "domain",   "ambient",
                                          "chi",   "f",        "grid",      "refine",   "charts",
                                          "exec",  "timings",  "tolerances", "outputs", "analyses",
                                          "fg_x_max", "fit_bins"};
  for (const auto& [k, _] : doc.items())
    if (!keys.count(k)) throw ConfigError("unknown config key '" + k + "'");

  AnalysisConfig cfg;
  cfg.echo = doc;
  if (doc.contains("surface")) {
    if (doc.contains("x")) throw ConfigError("give either 'surface' or 'x', not both");
    cfg.surface_spec = text(doc["surface"], "surface");
    cfg.model = builtins::make_surface(cfg.surface_spec);
  } else if (doc.contains("x")) {
    const auto& xs = doc["x"];
    if (!xs.is_array()) throw ConfigError("'x' must be an array of expressions");
    std::vector<std::string> comps;
    for (const auto& c : xs) comps.push_back(text(c, "x[]"));
    if (!doc.contains("domain")) throw ConfigError("'domain' is required with 'x'");
    const auto& d = doc["domain"];
    if (!d.is_object() || !d.contains("u") || !d.contains("v"))
      throw ConfigError("'domain' needs 'u' and 'v' ranges");
    ChartDomain dom;
    std::tie(dom.u_min, dom.u_max) = range(d["u"], "domain.u");
    std::tie(dom.v_min, dom.v_max) = range(d["v"], "domain.v");
    if (d.contains("periodic")) {
      const auto& p = d["periodic"];
      if (!p.is_array() || p.size() != 2 || !p[0].is_boolean() || !p[1].is_boolean())
        throw ConfigError("'domain.periodic' must be [bool, bool]");
      dom.u_periodic = p[0].get<bool>();
      dom.v_periodic = p[1].get<bool>();
    }
    dom.n_u = dom.n_v = 64;
    dom.validate();
    cfg.model.name = doc.contains("name") ? text(doc["name"], "name") : "expression";
    cfg.model.charts.push_back({"chart", ExpressionSurface(comps), dom});
    cfg.model.ambient_curvature = comps.size() == 4 ? 1.0 : 0.0;
  } else {
    throw ConfigError("config needs 'surface' or 'x'");
  }
  if (doc.contains("name")) cfg.model.name = text(doc["name"], "name");
  if (doc.contains("ambient")) cfg.model.ambient_curvature = parse_ambient(text(doc["ambient"], "ambient"));
  if (doc.contains("chi")) cfg.model.euler_characteristic = integer(doc["chi"], "chi");
  if (doc.contains("f")) cfg.relation = relation_from(doc["f"]);
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    std::pair<int, int> n;
    if (g.is_string()) n = parse_grid(g.get<std::string>());
    else if (g.is_number_integer()) n = {g.get<int>(), g.get<int>()};
    else if (g.is_array() && g.size() == 2) n = {integer(g[0], "grid"), integer(g[1], "grid")};
    else throw ConfigError("'grid' must be N, \"NxM\" or [N, M]");
    cfg.n_u = n.first;
    cfg.n_v = n.second;
  }
  if (doc.contains("refine")) cfg.refine = integer(doc["refine"], "refine");
  if (doc.contains("charts")) cfg.charts = integer(doc["charts"], "charts");
  if (doc.contains("exec")) {
    const std::string e = text(doc["exec"], "exec");
    if (e == "serial") cfg.exec = Exec::Serial;
    else if (e == "parallel") cfg.exec = Exec::Parallel;
    else throw ConfigError("'exec' must be \"serial\" or \"parallel\"");
  }
  if (doc.contains("timings")) {
    if (!doc["timings"].is_boolean()) throw ConfigError("'timings' must be a boolean");
    cfg.timings = doc["timings"].get<bool>();
  }
  if (doc.contains("tolerances")) tolerances_from(doc["tolerances"], cfg.tol);
  if (doc.contains("outputs")) {
    const auto& o = doc["outputs"];
    if (!o.is_object()) throw ConfigError("'outputs' must be an object");
    for (const auto& [k, v] : o.items()) {
      if (k == "report") cfg.outputs.report = text(v, "outputs.report");
      else if (k == "csv") cfg.outputs.csv = text(v, "outputs.csv");
      else if (k == "svg") cfg.outputs.svg = text(v, "outputs.svg");
      else throw ConfigError("unknown output '" + k + "'");
    }
  }
  if (doc.contains("analyses")) {
    if (!doc["analyses"].is_array()) throw ConfigError("'analyses' must be an array of names");
    for (const auto& a : doc["analyses"]) cfg.analyses.push_back(text(a, "analyses[]"));
  }
  if (doc.contains("fg_x_max")) cfg.fg_x_max = number(doc["fg_x_max"], "fg_x_max");
  if (doc.contains("fit_bins")) cfg.fit_bins = integer(doc["fit_bins"], "fit_bins");
  return cfg;
}

AnalysisConfig load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(doc);
}

void validate(const AnalysisConfig& cfg) {
  if (cfg.model.charts.empty()) throw ConfigError("no surface configured");
  if (cfg.refine < 0 || cfg.refine > 5) throw ConfigError("refine must lie in [0, 5]");
  if (cfg.charts < 0) throw ConfigError("charts must be nonnegative");
  if (cfg.fit_bins < 2) throw ConfigError("fit_bins must be at least 2");
  if (!(cfg.fg_x_max > 0.0)) throw ConfigError("fg_x_max must be positive");
  for (const auto& c : cfg.active_charts()) {
    const GridSpec g = cfg.grid_for(c);
    if (g.nu() < 8 || g.nv() < 8) throw ConfigError("grid must be at least 8x8");
    const int dim = c.surface.dimension();
    if ((cfg.model.ambient_curvature > 0.0) != (dim == 4))
      throw ConfigError("chart '" + c.label + "' has " + std::to_string(dim) +
                        " components, which does not match the ambient space");
  }
  if (cfg.relation) weingarten::WeingartenFunction::from_spec(cfg.relation->spec);
}

}  // namespace qdiff::config
