#include "sinrcg/rate_control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace sinrcg {

namespace {

double evaluate(const MonotoneUtility& u, double x) { return x < 1.0 ? 0.0 : u.eval(x); }

std::map<int, const UtilitySpec*> index_specs(const Instance& instance,
                                              std::span<const UtilitySpec> specs) {
  std::map<int, const UtilitySpec*> by_id;
  for (const UtilitySpec& s : specs) {
    validate(s);
    if (!by_id.emplace(s.link_id, &s).second) {
      throw std::invalid_argument("duplicate utility spec for link " + std::to_string(s.link_id));
    }
  }
  for (const Link& l : instance.links) {
    if (!by_id.contains(l.id)) {
      throw std::invalid_argument("no utility spec for link " + std::to_string(l.id));
    }
  }
  return by_id;
}

void append_copy(ExpandedInstance& out, const Link& original, int level, double beta,
                 double weight) {
  Link copy = original;
  copy.id = static_cast<int>(out.instance.links.size());
  copy.origin_id = original.id;
  copy.beta = beta;
  copy.weight = weight;
  out.instance.links.push_back(copy);
  out.copies.push_back(CopyInfo{copy.id, original.id, level, weight, beta});
}

}  // namespace

double UtilitySpec::u_min() const {
  if (monotone) return monotone->u_min;
  return levels.front().utility;
}

double UtilitySpec::u_max() const {
  if (monotone) return monotone->u_max;
  return levels.back().utility;
}

void validate(const UtilitySpec& spec) {
  const std::string tag = "utility spec for link " + std::to_string(spec.link_id) + ": ";
  if (spec.monotone) {
    const MonotoneUtility& u = *spec.monotone;
    if (!u.eval) throw std::invalid_argument(tag + "missing utility function");
    if (!(u.u_min > 0.0) || !(u.u_min <= u.u_max) || !std::isfinite(u.u_max)) {
      throw std::invalid_argument(tag + "need 0 < u_min <= u_max < inf");
    }
    return;
  }
  if (spec.levels.empty()) throw std::invalid_argument(tag + "empty level list");
  for (std::size_t k = 0; k < spec.levels.size(); ++k) {
    const UtilityLevel& lv = spec.levels[k];
    if (!(lv.utility > 0.0) || !std::isfinite(lv.utility)) {
      throw std::invalid_argument(tag + "utilities must be positive");
    }
    if (!(lv.beta >= 0.0) || !std::isfinite(lv.beta)) {
      throw std::invalid_argument(tag + "thresholds must be finite and non-negative");
    }
    if (k > 0 && !(lv.utility > spec.levels[k - 1].utility)) {
      throw std::invalid_argument(tag + "utilities must be strictly increasing");
    }
  }
}

MonotoneUtility log2_shannon_utility(double scale, double u_min, double u_max) {
  return MonotoneUtility{u_min, u_max,
                         [scale, u_max](double x) { return std::min(u_max, scale * std::log2(1.0 + x)); }};
}

MonotoneUtility linear_utility(double scale, double u_min, double u_max) {
  return MonotoneUtility{u_min, u_max, [scale, u_max](double x) { return std::min(u_max, scale * x); }};
}

MonotoneUtility table_utility(std::vector<std::pair<double, double>> points, double u_min,
                              double u_max) {
  if (points.empty()) throw std::invalid_argument("utility table needs at least one point");
  std::sort(points.begin(), points.end());
  return MonotoneUtility{u_min, u_max, [points = std::move(points)](double x) {
                           if (x <= points.front().first) return points.front().second;
                           if (x >= points.back().first) return points.back().second;
                           auto hi = std::upper_bound(points.begin(), points.end(), x,
                                                      [](double v, const auto& p) { return v < p.first; });
                           auto lo = hi - 1;
                           const double t = (x - lo->first) / (hi->first - lo->first);
                           return lo->second + t * (hi->second - lo->second);
                         }};
}

const CopyInfo& ExpandedInstance::info(int copy_id) const {
  if (copy_id < 0 || static_cast<std::size_t>(copy_id) >= copies.size() ||
      copies[static_cast<std::size_t>(copy_id)].copy_id != copy_id) {
    throw std::out_of_range("unknown copy id " + std::to_string(copy_id));
  }
  return copies[static_cast<std::size_t>(copy_id)];
}

ExpandedInstance expand_discrete(const Instance& instance, std::span<const UtilitySpec> specs) {
  const auto by_id = index_specs(instance, specs);
  ExpandedInstance out;
  out.instance.alpha = instance.alpha;
  out.instance.m = instance.m;
  for (const Link& l : instance.links) {
    const UtilitySpec& spec = *by_id.at(l.id);
    if (spec.monotone) {
      throw std::invalid_argument("expand_discrete needs a level list for link " + std::to_string(l.id));
    }
    for (std::size_t k = 0; k < spec.levels.size(); ++k) {
      const UtilityLevel& lv = spec.levels[k];
      append_copy(out, l, static_cast<int>(k), std::max(1.0, lv.beta), lv.utility);
    }
  }
  return out;
}

std::optional<double> invert_utility(const MonotoneUtility& u, double target) {
  double lo = 1.0;
  double u_lo = evaluate(u, lo);
  if (u_lo >= target) return lo;
  double hi = kThresholdBracketHi;
  double u_hi = evaluate(u, hi);
  if (u_hi < u_lo) throw std::runtime_error("utility is not monotone");
  if (u_hi < target) return std::nullopt;
  while (hi - lo > kThresholdTolerance * std::max(1.0, lo)) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double u_mid = evaluate(u, mid);
    if (u_mid < u_lo || u_mid > u_hi) throw std::runtime_error("utility is not monotone");
    if (u_mid >= target) {
      hi = mid;
      u_hi = u_mid;
    } else {
      lo = mid;
      u_lo = u_mid;
    }
  }
  return hi;
}

int geometric_level_cap(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(n)))) + 1;
}

ExpandedInstance expand_geometric(const Instance& instance, std::span<const UtilitySpec> specs,
                                  int n) {
  const auto by_id = index_specs(instance, specs);
  const int cap = geometric_level_cap(n);
  ExpandedInstance out;
  out.instance.alpha = instance.alpha;
  out.instance.m = instance.m;
  for (const Link& l : instance.links) {
    const UtilitySpec& spec = *by_id.at(l.id);
    if (!spec.monotone) {
      throw std::invalid_argument("expand_geometric needs a monotone utility for link " +
                                  std::to_string(l.id));
    }
    const MonotoneUtility& u = *spec.monotone;
    const int first = static_cast<int>(std::floor(std::log2(u.u_min)));
    const int last = static_cast<int>(std::floor(std::log2(u.u_max)));
    struct Level {
      int exponent;
      double beta;
    };
    std::vector<Level> levels;
    for (int e = first; e <= last; ++e) {
      const double weight = std::ldexp(1.0, e);
      if (auto beta = invert_utility(u, weight)) levels.push_back({e, *beta});
    }
    if (levels.size() > static_cast<std::size_t>(cap)) {
      levels.erase(levels.begin(), levels.end() - cap);
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
      append_copy(out, l, levels[k].exponent - first, levels[k].beta,
                  std::ldexp(1.0, levels[k].exponent));
    }
  }
  return out;
}

double delta_prime(const Instance& instance, std::span<const UtilitySpec> specs) {
  const auto by_id = index_specs(instance, specs);
  double best_hi = 0.0;
  double best_lo = std::numeric_limits<double>::infinity();
  for (const Link& l : instance.links) {
    const UtilitySpec& spec = *by_id.at(l.id);
    best_hi = std::max(best_hi, spec.u_max() * l.length());
    best_lo = std::min(best_lo, spec.u_min() * l.length());
  }
  if (instance.links.empty()) return 1.0;
  return best_hi / best_lo;
}

CollapsedSolution collapse_solution(const ExpandedInstance& expanded, const WeightedSolution& sol) {
  std::map<int, RateChoice> by_origin;
  double total = 0.0;
  for (int copy_id : sol.selected) {
    const CopyInfo& c = expanded.info(copy_id);
    if (!by_origin.emplace(c.origin_id, RateChoice{c.origin_id, c.copy_id, c.beta, c.weight}).second) {
      throw std::logic_error("two selected copies share origin " + std::to_string(c.origin_id));
    }
    total += c.weight;
  }
  CollapsedSolution out;
  for (const auto& [origin, choice] : by_origin) {
    out.solution.selected.push_back(origin);
    out.choices.push_back(choice);
  }
  out.solution.total_weight = total;
  return out;
}

std::vector<Link> chosen_links(const ExpandedInstance& expanded, const CollapsedSolution& collapsed) {
  std::vector<Link> out;
  out.reserve(collapsed.choices.size());
  for (const RateChoice& c : collapsed.choices) {
    out.push_back(expanded.instance.links[static_cast<std::size_t>(expanded.info(c.copy_id).copy_id)]);
  }
  return out;
}

}  // namespace sinrcg
