#include "sinrcg/conflict_graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sinrcg {

double ConflictFn::operator()(double x) const { return gamma * std::pow(x, delta); }

void validate(const ConflictFn& fn) {
  if (!(fn.gamma >= 1.0) || !std::isfinite(fn.gamma)) {
    throw std::invalid_argument("gamma must be a finite value >= 1");
  }
  if (!(fn.delta >= 0.0 && fn.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
}

AdjacencyMatrix::AdjacencyMatrix(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

void AdjacencyMatrix::set(std::size_t a, std::size_t b) {
  bits_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  bits_[b * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
}

std::size_t AdjacencyMatrix::degree(std::size_t a) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(bits_[a * words_ + w]);
  return d;
}

std::size_t AdjacencyMatrix::edge_count() const {
  std::size_t total = 0;
  for (std::size_t a = 0; a < n_; ++a) total += degree(a);
  return total / 2;
}

ConflictGraph::ConflictGraph(std::vector<int> ids, std::vector<double> effective_lengths,
                             ConflictFn fn, AdjacencyMatrix adjacency)
    : ids_(std::move(ids)),
      efflen_(std::move(effective_lengths)),
      fn_(fn),
      adjacency_(std::move(adjacency)) {
  order_ = effective_length_order(ids_, efflen_);
  index_ids();
}

ConflictGraph::ConflictGraph(std::vector<int> ids, std::vector<double> effective_lengths,
                             ConflictFn fn, AdjacencyMatrix adjacency,
                             std::vector<std::size_t> order)
    : ids_(std::move(ids)),
      efflen_(std::move(effective_lengths)),
      fn_(fn),
      adjacency_(std::move(adjacency)),
      order_(std::move(order)) {
  index_ids();
}

void ConflictGraph::index_ids() {
  const std::size_t n = ids_.size();
  if (efflen_.size() != n || adjacency_.size() != n || order_.size() != n) {
    throw std::invalid_argument("conflict graph components disagree in size");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (adjacency_.test(v, v)) throw std::invalid_argument("self-loop in conflict graph");
  }
  rank_.assign(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (order_[r] >= n || rank_[order_[r]] != n) {
      throw std::invalid_argument("order is not a permutation of the vertices");
    }
    rank_[order_[r]] = r;
  }
  sorted_ids_.clear();
  sorted_ids_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) sorted_ids_.emplace_back(ids_[v], v);
  std::sort(sorted_ids_.begin(), sorted_ids_.end());
  for (std::size_t k = 1; k < n; ++k) {
    if (sorted_ids_[k].first == sorted_ids_[k - 1].first) {
      throw std::invalid_argument("duplicate vertex id " + std::to_string(sorted_ids_[k].first));
    }
  }
}

std::size_t ConflictGraph::index_of(int id) const {
  auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), std::pair<int, std::size_t>{id, 0});
  if (it == sorted_ids_.end() || it->first != id) {
    throw std::out_of_range("unknown vertex id " + std::to_string(id));
  }
  return it->second;
}

std::vector<int> ConflictGraph::order_ids() const {
  std::vector<int> out;
  out.reserve(order_.size());
  for (std::size_t v : order_) out.push_back(ids_[v]);
  return out;
}

std::vector<std::pair<int, int>> ConflictGraph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) {
      if (adjacent(a, b)) edges.emplace_back(std::min(ids_[a], ids_[b]), std::max(ids_[a], ids_[b]));
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<std::size_t> effective_length_order(std::span<const int> ids,
                                                std::span<const double> effective_lengths) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (effective_lengths[a] != effective_lengths[b]) return effective_lengths[a] < effective_lengths[b];
    return ids[a] < ids[b];
  });
  return order;
}

bool f_adjacent(const Link& i, const Link& j, const ConflictFn& fn, double alpha) {
  const double ei = effective_length(i, alpha);
  const double ej = effective_length(j, alpha);
  const double lhs = directed_distance(i, j) * directed_distance(j, i);
  const double diversity = std::max(ei, ej) / std::min(ei, ej);
  return lhs <= (ei * ej) * (fn.gamma * std::pow(diversity, fn.delta));
}

PairwiseGeometry::PairwiseGeometry(const Instance& instance, double delta) : delta_(delta) {
  validate(ConflictFn{1.0, delta});
  const std::size_t n = instance.links.size();
  ids_.reserve(n);
  efflen_.reserve(n);
  for (const Link& l : instance.links) {
    ids_.push_back(l.id);
    efflen_.push_back(sinrcg::effective_length(l, instance.alpha));
  }
  const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  distance_product_.resize(pairs);
  length_product_.resize(pairs);
  diversity_pow_.resize(pairs);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Link& i = instance.links[a];
      const Link& j = instance.links[b];
      const std::size_t s = slot(a, b);
      distance_product_[s] = directed_distance(i, j) * directed_distance(j, i);
      length_product_[s] = efflen_[a] * efflen_[b];
      const double diversity = std::max(efflen_[a], efflen_[b]) / std::min(efflen_[a], efflen_[b]);
      diversity_pow_[s] = std::pow(diversity, delta);
    }
  }
}

std::size_t PairwiseGeometry::slot(std::size_t a, std::size_t b) const {
  const std::size_t n = ids_.size();
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

ConflictGraph PairwiseGeometry::build(double gamma) const {
  const ConflictFn fn{gamma, delta_};
  validate(fn);
  const std::size_t n = ids_.size();
  AdjacencyMatrix adjacency(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t s = slot(a, b);
      if (distance_product_[s] <= length_product_[s] * (fn.gamma * diversity_pow_[s])) {
        adjacency.set(a, b);
      }
    }
  }
  return ConflictGraph(ids_, efflen_, fn, std::move(adjacency));
}

ConflictGraph build_conflict_graph(const Instance& instance, const ConflictFn& fn) {
  return PairwiseGeometry(instance, fn.delta).build(fn.gamma);
}

double delta0(double alpha, int m) {
  if (!(alpha > m)) throw std::domain_error("delta0 requires alpha > m");
  const double excess = alpha - m;
  return (excess + 1.0) / (2.0 * excess + 1.0);
}

TauInterval tau_interval(double delta, double alpha, int m) {
  const double threshold = delta0(alpha, m);
  if (!(delta > threshold) || !(delta < 1.0)) {
    throw std::domain_error("delta must lie in (delta0, 1) = (" + std::to_string(threshold) +
                            ", 1)");
  }
  const double excess = alpha - m;
  TauInterval iv;
  iv.lo = 1.0 - (1.0 + delta) / 2.0 * excess / alpha;
  iv.hi = 1.0 - (1.0 - delta) / 2.0 * (excess + 1.0) / alpha;
  if (!(iv.lo < iv.hi)) throw std::domain_error("empty tau interval");
  return iv;
}

double choose_tau(double delta, double alpha, int m) {
  const TauInterval iv = tau_interval(delta, alpha, m);
  return 0.5 * (iv.lo + iv.hi);
}

GraphParams graph_params(double delta, double alpha, int m) {
  const TauInterval iv = tau_interval(delta, alpha, m);
  return GraphParams{delta0(alpha, m), iv.lo, iv.hi, 0.5 * (iv.lo + iv.hi)};
}

double delta_from_epsilon(double epsilon, double alpha, int m) {
  const double d0 = delta0(alpha, m);
  return d0 + epsilon * (1.0 - d0);
}

double f_star_threshold(const ConflictFn& fn) {
  if (!(fn.delta < 1.0)) throw std::domain_error("f* needs delta < 1");
  return std::pow(fn.gamma, 1.0 / (1.0 - fn.delta)) + 1.0;
}

int f_star(const ConflictFn& fn, double x) {
  const double x0 = f_star_threshold(fn);
  if (x <= x0) return 1;
  double value = x;
  for (int c = 1; c <= kFStarIterationCap; ++c) {
    value = fn(value);
    if (value <= x0) return c;
  }
  throw std::runtime_error("f* iteration cap exceeded");
}

bool is_independent_set(const ConflictGraph& g, std::span<const int> ids) {
  std::vector<std::size_t> vertices;
  vertices.reserve(ids.size());
  for (int id : ids) vertices.push_back(g.index_of(id));
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (g.adjacent(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

}  // namespace sinrcg
