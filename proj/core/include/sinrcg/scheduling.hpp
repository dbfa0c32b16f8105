#pragma once

// Graph algorithms driven by the inductive (non-decreasing effective length)
// order of a conflict graph: first-fit coloring, local-ratio weighted
// independent set, greedy channel packing, and the feasible-set partition.

#include <span>
#include <vector>

#include "sinrcg/conflict_graph.hpp"

namespace sinrcg {

struct Coloring {
  std::vector<std::vector<int>> classes;  // ids, each class sorted
  std::vector<int> color;                 // per vertex index; -1 when not colored

  std::size_t class_count() const { return classes.size(); }
};

struct WeightedSolution {
  std::vector<int> selected;  // sorted ids
  double total_weight = 0.0;
};

struct ChannelAssignment {
  std::vector<std::vector<int>> channels;  // sorted ids per channel
  std::vector<int> unassigned;             // sorted ids

  std::size_t assigned_count() const;
};

struct PartitionReport {
  Coloring coloring;
  double diversity = 1.0;  // effective length diversity of the partitioned set
  int f_star = 1;          // f*(diversity) for the graph's conflict function
};

struct InductiveIndependence {
  int k = 0;
  bool truncated = false;  // some later neighbourhood exceeded the cap and was sampled
};

inline constexpr int kDefaultIndependenceCap = 25;

/// Ids in non-decreasing effective length, ties by id.
std::vector<int> inductive_order(const ConflictGraph& g);

/// Each vertex in `order` (ids) takes the smallest color unused by its
/// already-colored neighbours. Vertices absent from `order` remain uncolored.
Coloring first_fit_coloring(const ConflictGraph& g, std::span<const int> order);

/// First-fit over the subgraph induced by `ids`, visiting links by
/// non-increasing effective length. Physical feasibility of `ids` is the
/// caller's concern.
PartitionReport partition_feasible(const ConflictGraph& g, std::span<const int> ids);

/// Local-ratio weighted independent set along the inductive order.
/// `weights` is indexed by vertex index. Throws std::invalid_argument on a
/// negative weight or a size mismatch.
WeightedSolution local_ratio_mwis(const ConflictGraph& g, std::span<const double> weights);

/// Scans the inductive order and places every link in the lowest channel
/// where it has no neighbour, leaving it unassigned when none exists.
ChannelAssignment greedy_multichannel(const ConflictGraph& g, int channels);

/// max over vertices v of the independence number of v's later neighbourhood.
/// Neighbourhoods larger than `cap` (<= 64) are reduced to a deterministic
/// sample of `cap` vertices and flagged.
InductiveIndependence measure_inductive_independence(const ConflictGraph& g,
                                                     int cap = kDefaultIndependenceCap);

/// Independence number of the subgraph induced by `vertices` (<= 64 of them).
int independence_number(const ConflictGraph& g, std::span<const std::size_t> vertices);

}  // namespace sinrcg
