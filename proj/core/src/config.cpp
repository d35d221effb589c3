#include "qwave/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qwave/errors.hpp"

namespace qwave {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, source + ": field '" + field + "': " + what);
}

void reject_unknown(const json& j, const std::string& source, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) field_error(source, where.empty() ? key : where + "." + key, "unknown field");
  }
}

struct Reader {
  const std::string& source;

  double number(const json& j, const std::string& field) const {
    if (!j.is_number()) field_error(source, field, "expected a number");
    return j.get<double>();
  }
  double positive(const json& j, const std::string& field) const {
    const double v = number(j, field);
    if (!(v > 0.0)) field_error(source, field, "must be positive");
    return v;
  }
  std::size_t count(const json& j, const std::string& field, std::size_t min) const {
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min)) {
      field_error(source, field, "expected an integer >= " + std::to_string(min));
    }
    return j.get<std::size_t>();
  }
  std::string text(const json& j, const std::string& field) const {
    if (!j.is_string()) field_error(source, field, "expected a string");
    return j.get<std::string>();
  }
  ParamMap params(const json& j, const std::string& field) const {
    if (!j.is_object()) field_error(source, field, "expected an object of numbers");
    ParamMap out;
    for (const auto& [key, value] : j.items()) out[key] = number(value, field + "." + key);
    return out;
  }
  std::vector<double> alphas(const json& j, const std::string& field) const {
    if (!j.is_array() || j.empty()) field_error(source, field, "expected a nonempty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(positive(j[i], field + "[" + std::to_string(i) + "]"));
      if (i > 0 && !(out[i] > out[i - 1])) field_error(source, field, "must be strictly ascending");
    }
    return out;
  }

  PotentialSpec potential(const json& j, const std::string& field) const {
    if (!j.is_object()) field_error(source, field, "expected an object");
    reject_unknown(j, source, field, {"family", "params", "alpha"});
    PotentialSpec p;
    if (!j.contains("family")) field_error(source, field + ".family", "missing");
    p.family = text(j["family"], field + ".family");
    if (!is_known_potential_family(p.family)) {
      throw Error(ErrorKind::UnknownFamily, source + ": potential family '" + p.family + "'");
    }
    if (j.contains("params")) p.params = params(j["params"], field + ".params");
    if (j.contains("alpha")) p.alpha = alphas(j["alpha"], field + ".alpha");
    return p;
  }
};

const std::set<std::string> kCurvatureFamilies{"zero", "constant", "sech_bump", "gaussian_bump", "file"};

json params_json(const ParamMap& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

json potential_json(const PotentialSpec& p) {
  return {{"family", p.family}, {"params", params_json(p.params)}, {"alpha", p.alpha}};
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["geometry"] = {{"d", c.d},
                   {"curvature",
                    {{"family", c.curvature.family},
                     {"params", params_json(c.curvature.params)},
                     {"path", c.curvature.path},
                     {"step", c.curvature.step}}}};
  j["potential"] = potential_json(c.potential);
  j["grid"] = {{"S", c.grid.S}, {"nx", c.grid.nx}, {"ny", c.grid.ny}, {"refinements", c.grid.refinements}};
  if (c.constants) {
    const auto& k = *c.constants;
    j["constants"] = {{"C4", k.C4},   {"C5", k.C5},   {"C6", k.C6}, {"C11", k.C11},
                      {"C12", k.C12}, {"C13", k.C13}, {"C16", k.C16}};
  } else {
    j["constants"] = "calibrate";
  }
  json family = json::array();
  for (const auto& p : c.calibration_family) family.push_back(potential_json(p));
  j["calibration"] = {{"family", family}};
  j["solver"] = {{"count_cap", c.count_cap}, {"tolerance", c.tolerance}};
  j["convergence_gate"] = c.convergence_gate;
  j["truncation_check"] = c.truncation_check;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["output"] = c.output;
  return j;
}

ExperimentConfig from_json(const json& j, const std::string& source) {
  Reader r{source};
  if (!j.is_object()) throw Error(ErrorKind::ParseError, source + ": top level must be an object");
  reject_unknown(j, source, "",
                 {"geometry", "potential", "grid", "constants", "calibration", "solver", "convergence_gate",
                  "truncation_check", "seed", "threads", "output"});
  ExperimentConfig c;

  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    reject_unknown(g, source, "geometry", {"d", "curvature"});
    if (g.contains("d")) c.d = r.positive(g["d"], "geometry.d");
    if (g.contains("curvature")) {
      const json& k = g["curvature"];
      reject_unknown(k, source, "geometry.curvature", {"family", "params", "path", "step"});
      if (k.contains("family")) c.curvature.family = r.text(k["family"], "geometry.curvature.family");
      if (!kCurvatureFamilies.count(c.curvature.family)) {
        throw Error(ErrorKind::UnknownFamily, source + ": curvature family '" + c.curvature.family + "'");
      }
      if (k.contains("params")) c.curvature.params = r.params(k["params"], "geometry.curvature.params");
      if (k.contains("path")) c.curvature.path = r.text(k["path"], "geometry.curvature.path");
      if (k.contains("step")) c.curvature.step = r.positive(k["step"], "geometry.curvature.step");
      if (c.curvature.family == "file" && c.curvature.path.empty()) {
        field_error(source, "geometry.curvature.path", "required for family 'file'");
      }
    }
  }
  if (!j.contains("potential")) field_error(source, "potential", "missing");
  c.potential = r.potential(j["potential"], "potential");

  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, source, "grid", {"S", "nx", "ny", "refinements"});
    if (g.contains("S")) c.grid.S = r.positive(g["S"], "grid.S");
    if (g.contains("nx")) c.grid.nx = r.count(g["nx"], "grid.nx", 4);
    if (g.contains("ny")) c.grid.ny = r.count(g["ny"], "grid.ny", 2);
    if (g.contains("refinements")) c.grid.refinements = r.count(g["refinements"], "grid.refinements", 1);
  }
  if (j.contains("constants")) {
    const json& k = j["constants"];
    if (k.is_string()) {
      if (k.get<std::string>() != "calibrate") field_error(source, "constants", "expected an object or \"calibrate\"");
    } else {
      reject_unknown(k, source, "constants", {"C4", "C5", "C6", "C11", "C12", "C13", "C16"});
      BoundConstants b;
      auto take = [&](const char* name, double& slot) {
        if (k.contains(name)) slot = r.positive(k[name], std::string("constants.") + name);
      };
      take("C4", b.C4), take("C5", b.C5), take("C6", b.C6);
      take("C11", b.C11), take("C12", b.C12), take("C13", b.C13), take("C16", b.C16);
      c.constants = b;
    }
  } else {
    c.constants = BoundConstants{};
  }
  if (j.contains("calibration")) {
    const json& k = j["calibration"];
    reject_unknown(k, source, "calibration", {"family"});
    if (k.contains("family")) {
      if (!k["family"].is_array()) field_error(source, "calibration.family", "expected an array");
      for (std::size_t i = 0; i < k["family"].size(); ++i) {
        c.calibration_family.push_back(
            r.potential(k["family"][i], "calibration.family[" + std::to_string(i) + "]"));
      }
    }
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown(s, source, "solver", {"count_cap", "tolerance"});
    if (s.contains("count_cap")) c.count_cap = r.count(s["count_cap"], "solver.count_cap", 1);
    if (s.contains("tolerance")) c.tolerance = r.positive(s["tolerance"], "solver.tolerance");
  }
  if (j.contains("convergence_gate")) c.convergence_gate = r.positive(j["convergence_gate"], "convergence_gate");
  if (j.contains("truncation_check")) {
    if (!j["truncation_check"].is_boolean()) field_error(source, "truncation_check", "expected true or false");
    c.truncation_check = j["truncation_check"].get<bool>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) field_error(source, "seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("threads")) c.threads = r.count(j["threads"], "threads", 1);
  if (j.contains("output")) c.output = r.text(j["output"], "output");
  return c;
}

}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  auto same_constants = [](const std::optional<BoundConstants>& a, const std::optional<BoundConstants>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->C4 == b->C4 && a->C5 == b->C5 && a->C6 == b->C6 && a->C11 == b->C11 && a->C12 == b->C12 &&
           a->C13 == b->C13 && a->C16 == b->C16;
  };
  return d == o.d && curvature == o.curvature && potential == o.potential && grid == o.grid &&
         same_constants(constants, o.constants) && calibration_family == o.calibration_family &&
         convergence_gate == o.convergence_gate && truncation_check == o.truncation_check &&
         count_cap == o.count_cap && tolerance == o.tolerance && seed == o.seed && threads == o.threads &&
         output == o.output;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ": " + e.what());
  }
  return from_json(j, source);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

std::string serialize_config(const ExperimentConfig& config) { return to_json(config).dump(2) + "\n"; }

std::string config_hash(const ExperimentConfig& config) {
  // Output location and thread count do not change the numbers.
  json j = to_json(config);
  j.erase("output");
  j.erase("threads");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CurvatureFunction build_curvature(const CurvatureSpec& spec) {
  auto get = [&](const char* key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
  };
  auto check_keys = [&](std::set<std::string> allowed) {
    for (const auto& [key, _] : spec.params) {
      if (!allowed.count(key)) throw Error(ErrorKind::InvalidParams, "curvature " + spec.family + ": unknown parameter '" + key + "'");
    }
  };
  if (spec.family == "zero") {
    check_keys({});
    return CurvatureFunction::zero();
  }
  if (spec.family == "constant") {
    check_keys({"k", "s_min", "s_max"});
    return CurvatureFunction::constant(get("k", 0.0), get("s_min", -1.0), get("s_max", 1.0), spec.step);
  }
  if (spec.family == "sech_bump") {
    check_keys({"amplitude", "width", "half_window"});
    return CurvatureFunction::sech_bump(get("amplitude", 0.5), get("width", 1.0), get("half_window", 4.0), spec.step);
  }
  if (spec.family == "gaussian_bump") {
    check_keys({"amplitude", "width", "half_window"});
    return CurvatureFunction::gaussian_bump(get("amplitude", 0.5), get("width", 1.0), get("half_window", 4.0),
                                            spec.step);
  }
  if (spec.family == "file") return CurvatureFunction::load(spec.path);
  throw Error(ErrorKind::UnknownFamily, "curvature family '" + spec.family + "'");
}

StripGeometry build_geometry(const ExperimentConfig& config) {
  return ellipticity_constants(config.d, build_curvature(config.curvature));
}

Potential build_potential(const PotentialSpec& spec, double d, double alpha) {
  return potential_library(spec.family, spec.params, d).scaled(alpha);
}

}  // namespace qwave
