#pragma once

// JSON file formats.
//
//   instance:  {"alpha": a, "m": 2, "links": [{"id", "sx", "sy", "rx", "ry", "beta", "weight"}, ...]}
//   graph:     {"alpha", "gamma", "delta", "vertices": [ids], "order": [ids], "edges": [[a, b], ...]}
//   utilities: {"<link id>" | "default": {"levels": [{"beta", "u"}, ...]}
//                                      | {"monotone": {"kind": "log2_shannon" | "linear" | "table",
//                                                      "scale", "points", "u_min", "u_max"}}}
//   caps:      {"<x>,<y>" | "default": {"antennas": k, "channels": [ids]}}
//   config:    mirror of ExperimentConfig field names
//
// Doubles are written in shortest round-trip form, so reading back reproduces
// every value exactly. Parse failures and schema violations throw
// std::runtime_error (or std::invalid_argument from validation).

#include <string>
#include <vector>

#include "sinrcg/conflict_graph.hpp"
#include "sinrcg/experiment.hpp"
#include "sinrcg/mcma.hpp"
#include "sinrcg/physical_model.hpp"
#include "sinrcg/rate_control.hpp"

namespace sinrcg {

Instance parse_instance(const std::string& text);
std::string format_instance(const Instance& instance);

std::string format_graph(const ConflictGraph& g, double alpha);

std::vector<UtilitySpec> parse_utilities(const std::string& text, const Instance& instance);

CapsMap parse_caps(const std::string& text, const Instance& instance);
/// "x,y" with shortest round-trip decimals.
std::string node_key(const Point& p);

ExperimentConfig parse_config(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sinrcg
