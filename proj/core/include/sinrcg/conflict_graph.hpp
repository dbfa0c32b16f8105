#pragma once

// Conflict graphs G_gamma^delta over a link set.
//
// Two links are f-independent when d_ij * d_ji > efflen_i * efflen_j * f(efflen_max / efflen_min)
// with f(x) = gamma * x^delta, and f-adjacent otherwise. For delta above the
// threshold delta0(alpha, m) and gamma large enough, every independent set of
// the graph is feasible under the oblivious power assignment P_tau for any tau
// inside tau_interval(delta, alpha, m).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sinrcg/physical_model.hpp"

namespace sinrcg {

/// f(x) = gamma * x^delta. delta == 0 is plain rho-independence with rho = gamma.
struct ConflictFn {
  double gamma = 1.0;
  double delta = 0.0;

  double operator()(double x) const;
};

// gamma >= 1 and 0 <= delta < 1, else std::invalid_argument.
void validate(const ConflictFn& fn);

/// Dense symmetric adjacency stored as one bit row per vertex.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  bool test(std::size_t a, std::size_t b) const {
    return (bits_[a * words_ + (b >> 6)] >> (b & 63)) & 1u;
  }
  void set(std::size_t a, std::size_t b);  // sets both directions
  std::size_t degree(std::size_t a) const;
  std::size_t edge_count() const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Immutable vertex-indexed conflict graph. Vertex k carries an id (a link id,
/// or a virtual-link id for multi-channel graphs) and the effective length
/// used for the inductive order.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  ConflictGraph(std::vector<int> ids, std::vector<double> effective_lengths, ConflictFn fn,
                AdjacencyMatrix adjacency);
  // Custom order (a permutation of vertex indices).
  ConflictGraph(std::vector<int> ids, std::vector<double> effective_lengths, ConflictFn fn,
                AdjacencyMatrix adjacency, std::vector<std::size_t> order);

  std::size_t size() const { return ids_.size(); }
  const ConflictFn& fn() const { return fn_; }
  int id(std::size_t v) const { return ids_[v]; }
  const std::vector<int>& ids() const { return ids_; }
  double effective_length(std::size_t v) const { return efflen_[v]; }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }

  bool adjacent(std::size_t a, std::size_t b) const { return adjacency_.test(a, b); }
  bool adjacent_ids(int a, int b) const { return adjacent(index_of(a), index_of(b)); }

  /// Vertex index of an id; throws std::out_of_range when unknown.
  std::size_t index_of(int id) const;

  /// Inductive order as vertex indices, and each vertex's rank in it.
  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t rank(std::size_t v) const { return rank_[v]; }
  std::vector<int> order_ids() const;

  /// Edges as (id, id) pairs with first < second, sorted lexicographically.
  std::vector<std::pair<int, int>> edge_list() const;

 private:
  void index_ids();

  std::vector<int> ids_;
  std::vector<double> efflen_;
  ConflictFn fn_;
  AdjacencyMatrix adjacency_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
  std::vector<std::pair<int, std::size_t>> sorted_ids_;
};

/// Non-decreasing effective length, ties by ascending id.
std::vector<std::size_t> effective_length_order(std::span<const int> ids,
                                                std::span<const double> effective_lengths);

bool f_adjacent(const Link& i, const Link& j, const ConflictFn& fn, double alpha);

/// Pairwise quantities of an instance for a fixed delta. Rebuilding graphs
/// for many gamma values reuses them; the adjacency produced is bit-identical
/// to evaluating f_adjacent pairwise.
class PairwiseGeometry {
 public:
  PairwiseGeometry(const Instance& instance, double delta);

  std::size_t size() const { return ids_.size(); }
  double delta() const { return delta_; }
  ConflictGraph build(double gamma) const;

 private:
  std::size_t slot(std::size_t a, std::size_t b) const;  // a < b

  std::vector<int> ids_;
  std::vector<double> efflen_;
  std::vector<double> distance_product_;  // d_ab * d_ba
  std::vector<double> length_product_;    // efflen_a * efflen_b
  std::vector<double> diversity_pow_;     // (efflen_max / efflen_min)^delta
  double delta_ = 0.0;
};

ConflictGraph build_conflict_graph(const Instance& instance, const ConflictFn& fn);

struct TauInterval {
  double lo = 0.0;  // b
  double hi = 0.0;  // e
};

struct GraphParams {
  double delta0 = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  double tau = 0.0;
};

/// (alpha - m + 1) / (2 (alpha - m) + 1). Throws std::domain_error when alpha <= m.
double delta0(double alpha, int m);

/// b = 1 - (1+delta)/2 * (alpha-m)/alpha,  e = 1 - (1-delta)/2 * (alpha-m+1)/alpha.
/// Throws std::domain_error when delta <= delta0(alpha, m), delta >= 1, or b >= e.
TauInterval tau_interval(double delta, double alpha, int m);

/// Midpoint of tau_interval.
double choose_tau(double delta, double alpha, int m);

GraphParams graph_params(double delta, double alpha, int m);

/// delta0 + epsilon * (1 - delta0)
double delta_from_epsilon(double epsilon, double alpha, int m);

/// Fixed-point threshold x0 = gamma^(1/(1-delta)) + 1 of f(x) = gamma x^delta.
double f_star_threshold(const ConflictFn& fn);

/// Number of applications of f needed to bring x down to x0 (1 for x <= x0).
int f_star(const ConflictFn& fn, double x);

inline constexpr int kFStarIterationCap = 1 << 16;

/// True iff no two members are adjacent; throws std::out_of_range on unknown ids.
bool is_independent_set(const ConflictGraph& g, std::span<const int> ids);

}  // namespace sinrcg
