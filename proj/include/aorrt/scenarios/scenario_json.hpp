#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "aorrt/scenarios/builtin.hpp"
#include "aorrt/scenarios/scenario.hpp"

namespace aorrt {

inline constexpr int kScenarioSchema = 1;

namespace detail {

using nlohmann::json;

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + (path.empty() ? "" : ".") + key + ": missing");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path + ": expected a number");
  return v.get<double>();
}

inline std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::size_t> indices(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path + ": expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) throw ValidationError(path + "[" + std::to_string(i) + "]: expected an index");
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

template <class V>
V coords(const json& v, const std::string& path) {
  const auto xs = numbers(v, path);
  if (xs.size() > V::kCapacity) throw ValidationError(path + ": too many coordinates");
  return V::from(xs);
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline double optional_number(const json& obj, const std::string& key, double fallback, const std::string& path) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "." + key);
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace detail

/// Builds a scenario from its JSON form; throws ValidationError naming the field.
inline Scenario scenario_from_json(const nlohmann::json& j) {
  using detail::member;
  if (!j.is_object()) throw ValidationError("scenario: expected a JSON object");
  const auto& schema = member(j, "schema", "");
  if (!schema.is_number_integer() || schema.get<int>() != kScenarioSchema) {
    throw ValidationError("schema: unsupported version (expected " + std::to_string(kScenarioSchema) + ")");
  }
  try {
    const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "custom";

    const auto& sys = member(j, "system", "");
    const auto& sys_name = member(sys, "name", "system");
    if (!sys_name.is_string()) throw ValidationError("system.name: expected a string");
    std::map<std::string, double> sys_params;
    if (sys.contains("params")) {
      const auto& params = sys["params"];
      if (!params.is_object()) throw ValidationError("system.params: expected an object");
      for (const auto& [k, v] : params.items()) sys_params[k] = detail::number(v, "system.params." + k);
    }

    const auto& b = member(j, "bounds", "");
    const StateBox xb{detail::coords<State>(member(b, "state_min", "bounds"), "bounds.state_min"),
                      detail::coords<State>(member(b, "state_max", "bounds"), "bounds.state_max")};
    const ControlBox ub{detail::coords<Control>(member(b, "control_min", "bounds"), "bounds.control_min"),
                        detail::coords<Control>(member(b, "control_max", "bounds"), "bounds.control_max")};
    if (xb.lo.size() != xb.hi.size() || !xb.valid()) throw ValidationError("bounds.state_min/state_max: invalid box");
    if (ub.lo.size() != ub.hi.size() || !ub.valid()) throw ValidationError("bounds.control_min/control_max: invalid box");
    Scenario sc{name, sys_name.get<std::string>(), sys_params, make_system(sys_name.get<std::string>(), sys_params, xb, ub),
                {}, {}, {}, {}, OracleKind::none};

    std::vector<Obstacle> obstacles;
    if (j.contains("obstacles")) {
      const auto& arr = j["obstacles"];
      if (!arr.is_array()) throw ValidationError("obstacles: expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "obstacles[" + std::to_string(i) + "]";
        const auto& o = arr[i];
        const auto& type = member(o, "type", path);
        if (!type.is_string()) throw ValidationError(path + ".type: expected a string");
        Obstacle ob;
        std::size_t k = 0;
        if (type == "box") {
          BoxShape s{detail::numbers(member(o, "min", path), path + ".min"),
                     detail::numbers(member(o, "max", path), path + ".max")};
          k = s.min.size();
          ob.shape = std::move(s);
        } else if (type == "ball") {
          BallShape s{detail::numbers(member(o, "center", path), path + ".center"),
                      detail::number(member(o, "radius", path), path + ".radius")};
          k = s.center.size();
          ob.shape = std::move(s);
        } else {
          throw ValidationError(path + ".type: expected \"box\" or \"ball\"");
        }
        ob.projection = o.contains("projection") ? detail::indices(o["projection"], path + ".projection")
                                                 : detail::iota(k);
        try {
          ob.validate(xb.dim());
        } catch (const InvalidScenarioError& e) {
          throw ValidationError(path + ": " + e.what());
        }
        obstacles.push_back(std::move(ob));
      }
    }
    sc.obstacles = ObstacleSet(std::move(obstacles), xb);

    sc.x_init = detail::coords<State>(member(j, "x_init", ""), "x_init");

    const auto& g = member(j, "goal", "");
    sc.goal.center = detail::numbers(member(g, "center", "goal"), "goal.center");
    sc.goal.radius = detail::number(member(g, "radius", "goal"), "goal.radius");
    sc.goal.projection =
        g.contains("projection") ? detail::indices(g["projection"], "goal.projection") : detail::iota(sc.goal.center.size());

    if (j.contains("defaults")) {
      const auto& d = j["defaults"];
      if (!d.is_object()) throw ValidationError("defaults: expected an object");
      sc.defaults.t_prop = detail::optional_number(d, "t_prop", sc.defaults.t_prop, "defaults");
      sc.defaults.c_max = detail::optional_number(d, "c_max", sc.defaults.c_max, "defaults");
      sc.defaults.w_x = detail::optional_number(d, "w_x", sc.defaults.w_x, "defaults");
      sc.defaults.w_c = detail::optional_number(d, "w_c", sc.defaults.w_c, "defaults");
      sc.defaults.resolution = detail::optional_number(d, "resolution", sc.defaults.resolution, "defaults");
      sc.defaults.integrator_step = detail::optional_number(d, "integrator_step", sc.defaults.integrator_step, "defaults");
    }
    if (j.contains("oracle")) {
      if (!j["oracle"].is_string()) throw ValidationError("oracle: expected a string");
      sc.oracle = parse_oracle(j["oracle"].get<std::string>());
    }
    sc.validate();
    return sc;
  } catch (const InvalidScenarioError& e) {
    throw ValidationError(e.what());
  }
}

inline nlohmann::json scenario_to_json(const Scenario& sc) {
  using nlohmann::json;
  auto vec = [](const auto& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
  };
  json j;
  j["schema"] = kScenarioSchema;
  j["name"] = sc.name;
  j["system"] = {{"name", sc.system_name}, {"params", json::object()}};
  for (const auto& [k, v] : sc.system_params) j["system"]["params"][k] = v;
  const StateBox& xb = sc.state_bounds();
  const ControlBox& ub = sc.control_bounds();
  j["bounds"] = {{"state_min", vec(xb.lo)}, {"state_max", vec(xb.hi)}, {"control_min", vec(ub.lo)},
                 {"control_max", vec(ub.hi)}};
  j["obstacles"] = json::array();
  for (const auto& o : sc.obstacles.obstacles()) {
    json jo;
    if (const auto* b = std::get_if<BoxShape>(&o.shape)) {
      jo = {{"type", "box"}, {"min", vec(b->min)}, {"max", vec(b->max)}};
    } else {
      const auto& s = std::get<BallShape>(o.shape);
      jo = {{"type", "ball"}, {"center", vec(s.center)}, {"radius", s.radius}};
    }
    jo["projection"] = o.projection;
    j["obstacles"].push_back(jo);
  }
  j["x_init"] = vec(sc.x_init);
  j["goal"] = {{"center", vec(sc.goal.center)}, {"radius", sc.goal.radius}, {"projection", sc.goal.projection}};
  j["defaults"] = {{"t_prop", sc.defaults.t_prop},     {"c_max", sc.defaults.c_max},
                   {"w_x", sc.defaults.w_x},           {"w_c", sc.defaults.w_c},
                   {"resolution", sc.defaults.resolution}, {"integrator_step", sc.defaults.integrator_step}};
  j["oracle"] = oracle_name(sc.oracle);
  return j;
}

/// Parses JSON text; syntax errors report `source:line`.
inline Scenario parse_scenario_text(const std::string& text, const std::string& source = "<string>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ":" + std::to_string(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " +
                     e.what());
  }
  return scenario_from_json(j);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Scenario parse_scenario(const std::string& path) { return parse_scenario_text(read_text_file(path), path); }

/// A built-in name or a path to a scenario file.
inline Scenario load_scenario(const std::string& name_or_path) {
  if (is_builtin(name_or_path)) return find_builtin(name_or_path);
  return parse_scenario(name_or_path);
}

/// Field-by-field comparison of two scenarios.
inline bool same_scenario(const Scenario& a, const Scenario& b) { return scenario_to_json(a) == scenario_to_json(b); }

}  // namespace aorrt
