#include "sinrcg/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sinrcg {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

template <typename T>
T required(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw std::runtime_error(std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string(what) + ": bad field '" + key + "': " + e.what());
  }
}

template <typename T>
T optional_field(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return obj.at(key).get<T>();
}

UtilitySpec parse_utility(const json& j, int link_id) {
  UtilitySpec spec;
  spec.link_id = link_id;
  if (j.contains("levels")) {
    for (const json& lv : j.at("levels")) {
      spec.levels.push_back(UtilityLevel{required<double>(lv, "beta", "utility level"),
                                         required<double>(lv, "u", "utility level")});
    }
  } else if (j.contains("monotone")) {
    const json& m = j.at("monotone");
    const auto kind = required<std::string>(m, "kind", "monotone utility");
    const double u_min = required<double>(m, "u_min", "monotone utility");
    const double u_max = required<double>(m, "u_max", "monotone utility");
    if (kind == "log2_shannon") {
      spec.monotone = log2_shannon_utility(optional_field(m, "scale", 1.0), u_min, u_max);
    } else if (kind == "linear") {
      spec.monotone = linear_utility(optional_field(m, "scale", 1.0), u_min, u_max);
    } else if (kind == "table") {
      spec.monotone = table_utility(required<std::vector<std::pair<double, double>>>(m, "points", "table utility"),
                                    u_min, u_max);
    } else {
      throw std::runtime_error("unknown utility kind '" + kind + "'");
    }
  } else {
    throw std::runtime_error("utility spec needs 'levels' or 'monotone'");
  }
  validate(spec);
  return spec;
}

NodeCaps parse_node_caps(const json& j) {
  NodeCaps caps;
  caps.antennas = required<int>(j, "antennas", "node caps");
  caps.channels = required<std::vector<int>>(j, "channels", "node caps");
  std::sort(caps.channels.begin(), caps.channels.end());
  caps.channels.erase(std::unique(caps.channels.begin(), caps.channels.end()), caps.channels.end());
  validate(caps);
  return caps;
}

Point parse_node_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw std::runtime_error("node key '" + key + "' is not 'x,y'");
  const std::string xs = key.substr(0, comma);
  const std::string ys = key.substr(comma + 1);
  char* end = nullptr;
  const double x = std::strtod(xs.c_str(), &end);
  if (end == xs.c_str() || *end != '\0') throw std::runtime_error("bad node key '" + key + "'");
  const double y = std::strtod(ys.c_str(), &end);
  if (end == ys.c_str() || *end != '\0') throw std::runtime_error("bad node key '" + key + "'");
  return Point{x, y};
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json j = parse_json(text, "instance");
  Instance inst;
  inst.alpha = required<double>(j, "alpha", "instance");
  inst.m = optional_field(j, "m", 2);
  if (inst.m != 2) throw std::runtime_error("only planar instances (m = 2) are supported");
  for (const json& l : required<json>(j, "links", "instance")) {
    Link link;
    link.id = required<int>(l, "id", "link");
    link.sender = Point{required<double>(l, "sx", "link"), required<double>(l, "sy", "link")};
    link.receiver = Point{required<double>(l, "rx", "link"), required<double>(l, "ry", "link")};
    link.beta = optional_field(l, "beta", 1.0);
    link.weight = optional_field(l, "weight", 1.0);
    link.origin_id = optional_field(l, "origin_id", link.id);
    inst.links.push_back(link);
  }
  validate(inst);
  return inst;
}

std::string format_instance(const Instance& instance) {
  json links = json::array();
  for (const Link& l : instance.links) {
    json o = {{"id", l.id},         {"sx", l.sender.x}, {"sy", l.sender.y},
              {"rx", l.receiver.x}, {"ry", l.receiver.y}, {"beta", l.beta},
              {"weight", l.weight}};
    if (l.origin_id != l.id) o["origin_id"] = l.origin_id;
    links.push_back(std::move(o));
  }
  json j = {{"alpha", instance.alpha}, {"m", instance.m}, {"links", std::move(links)}};
  return j.dump(2) + "\n";
}

std::string format_graph(const ConflictGraph& g, double alpha) {
  std::vector<int> vertices = g.ids();
  std::sort(vertices.begin(), vertices.end());
  json edges = json::array();
  for (const auto& [a, b] : g.edge_list()) edges.push_back({a, b});
  json j = {{"alpha", alpha},
            {"gamma", g.fn().gamma},
            {"delta", g.fn().delta},
            {"vertices", vertices},
            {"order", g.order_ids()},
            {"edges", std::move(edges)}};
  return j.dump(2) + "\n";
}

std::vector<UtilitySpec> parse_utilities(const std::string& text, const Instance& instance) {
  const json j = parse_json(text, "utilities");
  if (!j.is_object()) throw std::runtime_error("utilities file must be a JSON object");
  std::vector<UtilitySpec> specs;
  for (const Link& l : instance.links) {
    const std::string key = std::to_string(l.id);
    if (j.contains(key)) {
      specs.push_back(parse_utility(j.at(key), l.id));
    } else if (j.contains("default")) {
      specs.push_back(parse_utility(j.at("default"), l.id));
    } else {
      throw std::runtime_error("no utility for link " + key);
    }
  }
  return specs;
}

std::string node_key(const Point& p) { return json(p.x).dump() + "," + json(p.y).dump(); }

CapsMap parse_caps(const std::string& text, const Instance& instance) {
  const json j = parse_json(text, "caps");
  if (!j.is_object()) throw std::runtime_error("caps file must be a JSON object");
  CapsMap caps;
  for (const auto& [key, value] : j.items()) {
    if (key == "default") continue;
    caps[parse_node_key(key)] = parse_node_caps(value);
  }
  if (j.contains("default")) {
    const NodeCaps fallback = parse_node_caps(j.at("default"));
    for (const Link& l : instance.links) {
      caps.try_emplace(l.sender, fallback);
      caps.try_emplace(l.receiver, fallback);
    }
  }
  return caps;
}

ExperimentConfig parse_config(const std::string& text) {
  const json j = parse_json(text, "config");
  ExperimentConfig cfg;
  try {
    cfg.n = optional_field(j, "n", cfg.n);
    cfg.l_max = optional_field(j, "l_max", cfg.l_max);
    cfg.side = optional_field(j, "side", cfg.side);
    cfg.alpha = optional_field(j, "alpha", cfg.alpha);
    cfg.beta = optional_field(j, "beta", cfg.beta);
    if (j.contains("beta_max")) cfg.beta_max = j.at("beta_max").get<double>();
    cfg.trials = optional_field(j, "trials", cfg.trials);
    cfg.seed = optional_field(j, "seed", cfg.seed);
    if (j.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const auto& name : j.at("algorithms").get<std::vector<std::string>>()) {
        cfg.algorithms.push_back(algorithm_from_string(name));
      }
    }
    cfg.epsilon = optional_field(j, "epsilon", cfg.epsilon);
    if (j.contains("baseline_epsilon")) cfg.baseline_epsilon = j.at("baseline_epsilon").get<double>();
    cfg.gamma_lo = optional_field(j, "gamma_lo", cfg.gamma_lo);
    cfg.gamma_hi = optional_field(j, "gamma_hi", cfg.gamma_hi);
    cfg.gamma_steps = optional_field(j, "gamma_steps", cfg.gamma_steps);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("bad config field: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace sinrcg
