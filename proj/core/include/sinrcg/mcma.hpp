#pragma once

// Multi-channel multi-antenna (MC-MA) scheduling via virtual links.
//
// A node is identified by its exact coordinates. A virtual link (i, a_s, a_r, c)
// uses antenna a_s of i's sender node, antenna a_r of i's receiver node and
// channel c available at both.

#include <map>
#include <span>
#include <vector>

#include "sinrcg/conflict_graph.hpp"
#include "sinrcg/physical_model.hpp"

namespace sinrcg {

struct NodeCaps {
  int antennas = 1;
  std::vector<int> channels;  // sorted, distinct
};

using CapsMap = std::map<Point, NodeCaps>;

// antennas >= 1, non-empty channel list.
void validate(const NodeCaps& caps);

struct VirtualLink {
  int id = 0;           // vertex id in the MC-MA graph; position in the expansion
  int original_id = 0;  // link id in the base instance
  int sender_antenna = 1;
  int receiver_antenna = 1;
  int channel = 0;

  friend bool operator==(const VirtualLink&, const VirtualLink&) = default;
};

/// Every (link, a_s, a_r, c) combination, enumerated by link order, then a_s,
/// a_r, c. Throws std::invalid_argument when an endpoint has no caps entry.
std::vector<VirtualLink> expand_virtual(const Instance& instance, const CapsMap& caps);

/// Two virtual links share an antenna when some endpoint node of one is an
/// endpoint node of the other with the same antenna index.
bool share_antenna(const VirtualLink& a, const VirtualLink& b, const Instance& instance);

struct McmaGraph {
  std::vector<VirtualLink> vlinks;  // vertex k has id vlinks[k].id
  ConflictGraph graph;
};

/// Adjacent iff the virtual links share an antenna, or they use the same
/// channel and their originals are adjacent in `base` or identical.
/// Ordered by the original's effective length, original id, then (a_s, a_r, c).
McmaGraph build_mcma_graph(std::span<const VirtualLink> vlinks, const ConflictGraph& base,
                           const Instance& instance);

/// Antenna-disjoint, at most one use of a link per channel, and every
/// channel's originals feasible under `power`.
bool mcma_feasible_check(std::span<const VirtualLink> set, const PowerAssignment& power,
                         const Instance& instance, double tol = kDefaultFeasibilityTolerance);

/// Virtual links of `graph` with the given vertex ids.
std::vector<VirtualLink> select_vlinks(const McmaGraph& graph, std::span<const int> ids);

}  // namespace sinrcg
