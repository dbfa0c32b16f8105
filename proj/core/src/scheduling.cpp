#include "sinrcg/scheduling.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace sinrcg {

namespace {

std::vector<std::size_t> vertices_of(const ConflictGraph& g, std::span<const int> ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(g.index_of(id));
  return out;
}

Coloring first_fit_vertices(const ConflictGraph& g, std::span<const std::size_t> sequence) {
  Coloring coloring;
  coloring.color.assign(g.size(), -1);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t v : sequence) {
    if (coloring.color[v] >= 0) continue;
    std::size_t c = 0;
    for (; c < members.size(); ++c) {
      bool clash = false;
      for (std::size_t u : members[c]) {
        if (g.adjacent(u, v)) {
          clash = true;
          break;
        }
      }
      if (!clash) break;
    }
    if (c == members.size()) members.emplace_back();
    members[c].push_back(v);
    coloring.color[v] = static_cast<int>(c);
  }
  for (const auto& cls : members) {
    std::vector<int> ids;
    ids.reserve(cls.size());
    for (std::size_t v : cls) ids.push_back(g.id(v));
    std::sort(ids.begin(), ids.end());
    coloring.classes.push_back(std::move(ids));
  }
  return coloring;
}

class IndependenceSearch {
 public:
  explicit IndependenceSearch(std::vector<std::uint64_t> adjacency)
      : adjacency_(std::move(adjacency)) {}

  int run() {
    const std::size_t n = adjacency_.size();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    best_ = 0;
    branch(all, 0);
    return best_;
  }

 private:
  void branch(std::uint64_t candidates, int taken) {
    while (candidates) {
      if (taken + std::popcount(candidates) <= best_) return;
      // Pick the candidate with the most candidate neighbours; isolated ones are free.
      int pick = -1;
      int pick_degree = -1;
      for (std::uint64_t rest = candidates; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        const int d = std::popcount(adjacency_[v] & candidates);
        if (d == 0) {
          candidates &= ~(std::uint64_t{1} << v);
          ++taken;
          continue;
        }
        if (d > pick_degree) {
          pick = v;
          pick_degree = d;
        }
      }
      if (pick < 0) break;
      const std::uint64_t bit = std::uint64_t{1} << pick;
      branch(candidates & ~bit & ~adjacency_[pick], taken + 1);
      candidates &= ~bit;
    }
    best_ = std::max(best_, taken);
  }

  std::vector<std::uint64_t> adjacency_;
  int best_ = 0;
};

}  // namespace

std::size_t ChannelAssignment::assigned_count() const {
  std::size_t total = 0;
  for (const auto& ch : channels) total += ch.size();
  return total;
}

std::vector<int> inductive_order(const ConflictGraph& g) { return g.order_ids(); }

Coloring first_fit_coloring(const ConflictGraph& g, std::span<const int> order) {
  return first_fit_vertices(g, vertices_of(g, order));
}

PartitionReport partition_feasible(const ConflictGraph& g, std::span<const int> ids) {
  std::vector<std::size_t> sequence = vertices_of(g, ids);
  std::sort(sequence.begin(), sequence.end());
  sequence.erase(std::unique(sequence.begin(), sequence.end()), sequence.end());
  std::sort(sequence.begin(), sequence.end(), [&](std::size_t a, std::size_t b) {
    if (g.effective_length(a) != g.effective_length(b)) {
      return g.effective_length(a) > g.effective_length(b);
    }
    return g.id(a) < g.id(b);
  });
  PartitionReport report;
  report.coloring = first_fit_vertices(g, sequence);
  if (sequence.size() >= 2) {
    report.diversity = g.effective_length(sequence.front()) / g.effective_length(sequence.back());
  }
  report.f_star = f_star(g.fn(), report.diversity);
  return report;
}

WeightedSolution local_ratio_mwis(const ConflictGraph& g, std::span<const double> weights) {
  const std::size_t n = g.size();
  if (weights.size() != n) throw std::invalid_argument("one weight per vertex is required");
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be non-negative");
  }
  std::vector<double> residual(weights.begin(), weights.end());
  std::vector<std::size_t> stack;
  const auto& order = g.order();
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t v = order[r];
    const double w = residual[v];
    if (!(w > 0.0)) continue;
    stack.push_back(v);
    residual[v] = 0.0;
    for (std::size_t q = r + 1; q < n; ++q) {
      const std::size_t u = order[q];
      if (g.adjacent(u, v)) residual[u] -= w;
    }
  }
  std::vector<std::size_t> chosen;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    const bool clash = std::any_of(chosen.begin(), chosen.end(),
                                   [&](std::size_t u) { return g.adjacent(u, v); });
    if (!clash) chosen.push_back(v);
  }
  WeightedSolution solution;
  for (std::size_t v : chosen) {
    solution.selected.push_back(g.id(v));
    solution.total_weight += weights[v];
  }
  std::sort(solution.selected.begin(), solution.selected.end());
  return solution;
}

ChannelAssignment greedy_multichannel(const ConflictGraph& g, int channels) {
  if (channels < 1) throw std::invalid_argument("at least one channel is required");
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(channels));
  ChannelAssignment result;
  for (std::size_t v : g.order()) {
    bool placed = false;
    for (auto& ch : members) {
      const bool clash =
          std::any_of(ch.begin(), ch.end(), [&](std::size_t u) { return g.adjacent(u, v); });
      if (!clash) {
        ch.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) result.unassigned.push_back(g.id(v));
  }
  for (const auto& ch : members) {
    std::vector<int> ids;
    for (std::size_t v : ch) ids.push_back(g.id(v));
    std::sort(ids.begin(), ids.end());
    result.channels.push_back(std::move(ids));
  }
  std::sort(result.unassigned.begin(), result.unassigned.end());
  return result;
}

int independence_number(const ConflictGraph& g, std::span<const std::size_t> vertices) {
  if (vertices.size() > 64) throw std::invalid_argument("at most 64 vertices per search");
  std::vector<std::uint64_t> local(vertices.size(), 0);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (g.adjacent(vertices[a], vertices[b])) {
        local[a] |= std::uint64_t{1} << b;
        local[b] |= std::uint64_t{1} << a;
      }
    }
  }
  return IndependenceSearch(std::move(local)).run();
}

InductiveIndependence measure_inductive_independence(const ConflictGraph& g, int cap) {
  if (cap < 1 || cap > 64) throw std::invalid_argument("cap must lie in [1, 64]");
  InductiveIndependence result;
  const auto& order = g.order();
  const std::size_t n = g.size();
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t v = order[r];
    std::vector<std::size_t> later;
    for (std::size_t q = r + 1; q < n; ++q) {
      if (g.adjacent(v, order[q])) later.push_back(order[q]);
    }
    if (later.size() > static_cast<std::size_t>(cap)) {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ v);
      std::shuffle(later.begin(), later.end(), rng);
      later.resize(static_cast<std::size_t>(cap));
      result.truncated = true;
    }
    result.k = std::max(result.k, independence_number(g, later));
  }
  return result;
}

}  // namespace sinrcg
