#pragma once

// Weighted selection with rate control, reduced to fixed-weight selection.
//
// Every link is replaced by co-located copies, one per utility level, each
// carrying the level's utility as weight and the smallest SIR reaching it as
// threshold. Copies of one link are pairwise adjacent in any conflict graph
// with gamma >= 1, so an independent set of the expanded instance picks at
// most one level per link.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sinrcg/physical_model.hpp"
#include "sinrcg/scheduling.hpp"

namespace sinrcg {

struct UtilityLevel {
  double beta = 1.0;  // SIR needed for this level
  double utility = 1.0;
};

/// Continuous non-decreasing utility of SIR. `eval` is only consulted for
/// x >= 1; below that the utility is 0.
struct MonotoneUtility {
  double u_min = 1.0;
  double u_max = 1.0;
  std::function<double(double)> eval;
};

struct UtilitySpec {
  int link_id = 0;
  std::vector<UtilityLevel> levels;         // discrete form
  std::optional<MonotoneUtility> monotone;  // continuous form

  double u_min() const;
  double u_max() const;
};

// Discrete: non-empty, strictly increasing utilities, thresholds >= 0.
// Monotone: 0 < u_min <= u_max, eval set.
void validate(const UtilitySpec& spec);

/// scale * log2(1 + x), clamped above at u_max.
MonotoneUtility log2_shannon_utility(double scale, double u_min, double u_max);
/// scale * x, clamped above at u_max.
MonotoneUtility linear_utility(double scale, double u_min, double u_max);
/// Piecewise-linear through (x, u) points sorted by x, constant past the ends.
MonotoneUtility table_utility(std::vector<std::pair<double, double>> points, double u_min,
                              double u_max);

struct CopyInfo {
  int copy_id = 0;
  int origin_id = 0;
  int level = 0;  // 0-based level index within its origin
  double weight = 0.0;
  double beta = 1.0;
};

struct ExpandedInstance {
  Instance instance;           // copies; Link::origin_id names the original
  std::vector<CopyInfo> copies;  // parallel to instance.links

  const CopyInfo& info(int copy_id) const;
};

inline constexpr double kThresholdTolerance = 1e-9;
inline constexpr double kThresholdBracketHi = 1152921504606846976.0;  // 2^60

/// One copy per (link, level), keeping the link's geometry. Thresholds below 1
/// are raised to 1, since utilities vanish under SIR 1 anyway.
ExpandedInstance expand_discrete(const Instance& instance, std::span<const UtilitySpec> specs);

/// Levels of weight 2^(k-1) covering [u_min, u_max]; each threshold is
/// min{x >= 1 : u(x) >= 2^(k-1)} found by bisection. Levels unreachable below
/// 2^60 are dropped, and only the top ceil(2 log2 n) + 1 levels per link are kept.
ExpandedInstance expand_geometric(const Instance& instance, std::span<const UtilitySpec> specs,
                                  int n);

/// Number of levels kept per link by expand_geometric.
int geometric_level_cap(int n);

/// min{x in [1, 2^60] : u(x) >= target}, or nullopt when unreachable.
/// Throws std::runtime_error on a detected monotonicity violation.
std::optional<double> invert_utility(const MonotoneUtility& u, double target);

/// max over ordered pairs of u_max^i l_i / (u_min^j l_j).
double delta_prime(const Instance& instance, std::span<const UtilitySpec> specs);

struct RateChoice {
  int origin_id = 0;
  int copy_id = 0;
  double beta = 1.0;
  double weight = 0.0;
};

struct CollapsedSolution {
  WeightedSolution solution;  // original ids
  std::vector<RateChoice> choices;  // sorted by origin id
};

/// Maps a solution over copies back to originals. Throws std::logic_error when
/// two chosen copies share an origin.
CollapsedSolution collapse_solution(const ExpandedInstance& expanded, const WeightedSolution& sol);

/// The chosen copies as a link set, for physical verification at the chosen rates.
std::vector<Link> chosen_links(const ExpandedInstance& expanded, const CollapsedSolution& collapsed);

}  // namespace sinrcg
