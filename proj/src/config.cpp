#include "concnls/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace concnls {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + "." + key + " is required");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
  return d;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::size_t count_or(const json& obj, const std::string& key, std::size_t fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

bool flag_or(const json& obj, const std::string& key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError(where + "." + key + " must be true or false");
  return obj.at(key).get<bool>();
}

std::string kind_of(const json& obj, const std::string& where) {
  if (!obj.contains("kind") || !obj.at("kind").is_string()) throw ConfigError(where + ".kind must be a string");
  return obj.at("kind").get<std::string>();
}

const json& params_of(const json& obj) {
  static const json empty = json::object();
  return obj.contains("params") ? obj.at("params") : empty;
}

PotentialProfile parse_potential(const json& obj, const std::string& where) {
  check_keys(obj, {"kind", "params"}, where);
  const std::string kind = kind_of(obj, where);
  const json& p = params_of(obj);
  const std::string pw = where + ".params";
  if (kind == "gaussian") {
    check_keys(p, {"amplitude", "alpha", "width"}, pw);
    const double width = number_or(p, "width", 1.0, pw);
    if (p.contains("amplitude") && p.contains("alpha")) throw ConfigError(pw + ": give amplitude or alpha, not both");
    double amplitude = number_or(p, "amplitude", 1.0, pw);
    if (p.contains("alpha")) amplitude = number(p, "alpha", pw) / (width * std::sqrt(std::numbers::pi));
    return GaussianProfile{amplitude, width};
  }
  if (kind == "box") {
    check_keys(p, {"height", "half_width"}, pw);
    return BoxProfile{number_or(p, "height", 1.0, pw), number_or(p, "half_width", 0.5, pw)};
  }
  if (kind == "double_well") {
    check_keys(p, {"amplitude", "width", "separation"}, pw);
    return DoubleWellProfile{number_or(p, "amplitude", 1.0, pw), number_or(p, "width", 1.0, pw),
                             number_or(p, "separation", 2.0, pw)};
  }
  if (kind == "sampled") {
    check_keys(p, {"origin", "spacing", "values"}, pw);
    SampledProfile s{number(p, "origin", pw), number(p, "spacing", pw), {}};
    if (!p.contains("values") || !p.at("values").is_array()) throw ConfigError(pw + ".values must be an array");
    for (const json& v : p.at("values")) {
      if (!v.is_number()) throw ConfigError(pw + ".values must contain numbers");
      s.values.push_back(v.get<double>());
    }
    return s;
  }
  if (kind == "zero") return ZeroProfile{};
  throw ConfigError("unknown potential kind '" + kind + "' in " + where);
}

json potential_to_json(const PotentialProfile& profile) {
  struct Visitor {
    json operator()(const ZeroProfile&) const { return {{"kind", "zero"}}; }
    json operator()(const GaussianProfile& g) const {
      return {{"kind", "gaussian"}, {"params", {{"amplitude", g.amplitude}, {"width", g.width}}}};
    }
    json operator()(const BoxProfile& b) const {
      return {{"kind", "box"}, {"params", {{"height", b.height}, {"half_width", b.half_width}}}};
    }
    json operator()(const DoubleWellProfile& d) const {
      return {{"kind", "double_well"},
              {"params", {{"amplitude", d.amplitude}, {"width", d.width}, {"separation", d.separation}}}};
    }
    json operator()(const SampledProfile& s) const {
      return {{"kind", "sampled"}, {"params", {{"origin", s.origin}, {"spacing", s.spacing}, {"values", s.values}}}};
    }
  };
  return std::visit(Visitor{}, profile.shape());
}

InitialData parse_initial(const json& obj) {
  const std::string where = "psi0";
  check_keys(obj, {"kind", "params"}, where);
  InitialData d;
  d.kind = kind_of(obj, where);
  const json& p = params_of(obj);
  const std::string pw = where + ".params";
  if (d.kind == "gaussian") {
    check_keys(p, {"amplitude", "width", "center", "wavenumber"}, pw);
    d.wavenumber = number_or(p, "wavenumber", 0.0, pw);
  } else if (d.kind == "sech") {
    check_keys(p, {"amplitude", "width", "center"}, pw);
  } else if (d.kind == "plane_wave") {
    check_keys(p, {"amplitude", "mode"}, pw);
    if (p.contains("mode")) {
      if (!p.at("mode").is_number_integer()) throw ConfigError(pw + ".mode must be an integer");
      d.mode = p.at("mode").get<long>();
    }
  } else if (d.kind == "zero") {
    check_keys(p, {}, pw);
  } else {
    throw ConfigError("unknown psi0 kind '" + d.kind + "'");
  }
  d.amplitude = number_or(p, "amplitude", 1.0, pw);
  d.width = number_or(p, "width", 1.0, pw);
  d.center = number_or(p, "center", 0.0, pw);
  if (!(d.width > 0.0)) throw ConfigError(pw + ".width must be positive");
  return d;
}

json initial_to_json(const InitialData& d) {
  json p = json::object();
  if (d.kind == "gaussian") {
    p = {{"amplitude", d.amplitude}, {"width", d.width}, {"center", d.center}, {"wavenumber", d.wavenumber}};
  } else if (d.kind == "sech") {
    p = {{"amplitude", d.amplitude}, {"width", d.width}, {"center", d.center}};
  } else if (d.kind == "plane_wave") {
    p = {{"amplitude", d.amplitude}, {"mode", d.mode}};
  }
  return {{"kind", d.kind}, {"params", p}};
}

}  // namespace

std::vector<cplx> InitialData::sample(const Grid1D& grid) const {
  std::vector<cplx> v(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double x = grid.x(m);
    if (kind == "gaussian") {
      const double u = (x - center) / width;
      v[m] = amplitude * std::exp(-u * u) * std::polar(1.0, wavenumber * x);
    } else if (kind == "sech") {
      v[m] = amplitude / std::cosh((x - center) / width);
    } else if (kind == "plane_wave") {
      v[m] = amplitude * std::polar(1.0, std::numbers::pi * static_cast<double>(mode) * x / grid.half_width());
    } else if (kind == "zero") {
      v[m] = 0.0;
    } else {
      throw ConfigError("unknown psi0 kind '" + kind + "'");
    }
  }
  return v;
}

ScaledProblem Config::scaled_problem(double epsilon) const {
  ScaledProblem p;
  p.grid = grid;
  p.defects = defects;
  p.epsilon = epsilon;
  p.psi0 = psi0.sample(grid);
  p.horizon = horizon;
  p.dt = dt;
  p.allow_inadmissible = allow_inadmissible;
  p.blowup_factor = blowup_factor;
  return p;
}

PointProblem Config::point_problem() const {
  PointProblem p;
  p.grid = grid;
  for (const DefectSpec& d : defects) p.defects.push_back({d.site, potential_moments(d.profile).alpha, d.power});
  p.psi0 = psi0.sample(grid);
  p.horizon = horizon;
  p.dt = dt;
  p.allow_inadmissible = allow_inadmissible;
  p.options = point;
  return p;
}

std::string Config::to_json() const {
  json j;
  j["grid"] = {{"L", grid.half_width()}, {"M", grid.size()}};
  j["defects"] = json::array();
  for (const DefectSpec& d : defects) {
    j["defects"].push_back({{"y", d.site}, {"mu", d.power}, {"potential", potential_to_json(d.profile)}});
  }
  j["epsilons"] = epsilons;
  j["T"] = horizon;
  j["dt"] = dt;
  j["psi0"] = initial_to_json(psi0);
  j["solver"] = {{"damping", point.damping},          {"tolerance", point.tolerance},
                 {"max_iterations", point.max_iterations}, {"images", point.images},
                 {"blowup_factor", blowup_factor},     {"allow_inadmissible", allow_inadmissible}};
  j["output"] = {{"count", output_count}, {"exclude_largest_epsilon", exclude_largest_epsilon}, {"threads", threads}};
  return j.dump(2) + "\n";
}

Config parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, {"grid", "defects", "epsilon", "epsilons", "T", "dt", "psi0", "solver", "output"}, "config");

  Config c;
  if (!root.contains("grid")) throw ConfigError("config.grid is required");
  const json& g = root.at("grid");
  check_keys(g, {"L", "M"}, "grid");
  c.grid = make_grid(number(g, "L", "grid"), count_or(g, "M", 0, "grid"));

  if (root.contains("defects")) {
    if (!root.at("defects").is_array()) throw ConfigError("config.defects must be an array");
    std::size_t i = 0;
    for (const json& d : root.at("defects")) {
      const std::string where = "defects[" + std::to_string(i++) + "]";
      check_keys(d, {"y", "mu", "potential"}, where);
      DefectSpec spec;
      spec.site = number(d, "y", where);
      spec.power = number(d, "mu", where);
      if (!d.contains("potential")) throw ConfigError(where + ".potential is required");
      spec.profile = parse_potential(d.at("potential"), where + ".potential");
      c.defects.push_back(std::move(spec));
    }
  }

  if (root.contains("epsilon") && root.contains("epsilons")) {
    throw ConfigError("give either epsilon or epsilons, not both");
  }
  if (root.contains("epsilon")) c.epsilons = {number(root, "epsilon", "config")};
  if (root.contains("epsilons")) {
    if (!root.at("epsilons").is_array()) throw ConfigError("config.epsilons must be an array");
    for (const json& e : root.at("epsilons")) {
      if (!e.is_number()) throw ConfigError("config.epsilons must contain numbers");
      c.epsilons.push_back(e.get<double>());
    }
  }
  for (double e : c.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("epsilon values must be positive");
  }

  c.horizon = number(root, "T", "config");
  c.dt = number(root, "dt", "config");
  if (root.contains("psi0")) c.psi0 = parse_initial(root.at("psi0"));

  if (root.contains("solver")) {
    const json& s = root.at("solver");
    const std::string w = "solver";
    check_keys(s, {"damping", "tolerance", "max_iterations", "images", "blowup_factor", "allow_inadmissible"}, w);
    c.point.damping = number_or(s, "damping", c.point.damping, w);
    c.point.tolerance = number_or(s, "tolerance", c.point.tolerance, w);
    c.point.max_iterations = count_or(s, "max_iterations", c.point.max_iterations, w);
    c.point.images = count_or(s, "images", c.point.images, w);
    c.blowup_factor = number_or(s, "blowup_factor", c.blowup_factor, w);
    c.allow_inadmissible = flag_or(s, "allow_inadmissible", c.allow_inadmissible, w);
  }
  if (root.contains("output")) {
    const json& o = root.at("output");
    check_keys(o, {"count", "exclude_largest_epsilon", "threads"}, "output");
    c.output_count = count_or(o, "count", c.output_count, "output");
    c.exclude_largest_epsilon = flag_or(o, "exclude_largest_epsilon", c.exclude_largest_epsilon, "output");
    c.threads = count_or(o, "threads", c.threads, "output");
    if (c.output_count == 0) throw ConfigError("output.count must be positive");
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace concnls
