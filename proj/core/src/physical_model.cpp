#include "sinrcg/physical_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace sinrcg {

namespace {

bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

const Link* find_member(std::span<const Link> set, int id) {
  for (const Link& l : set) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

// Numerator and interference of `target` when evaluated against `set`.
struct SirParts {
  double signal = 0.0;
  double interference = 0.0;
  bool blocked = false;  // an interferer sender coincides with the receiver
};

SirParts sir_parts(std::span<const Link> set, const Link& target, const PowerAssignment& power,
                   double alpha) {
  SirParts parts;
  parts.signal = power.power(target, alpha) / std::pow(target.length(), alpha);
  for (const Link& j : set) {
    if (j.id == target.id) continue;
    const double d = directed_distance(j, target);
    if (d == 0.0) {
      parts.blocked = true;
      continue;
    }
    parts.interference += power.power(j, alpha) / std::pow(d, alpha);
  }
  return parts;
}

double sir_from_parts(const SirParts& parts) {
  if (parts.blocked) return 0.0;
  if (parts.interference == 0.0) return kSingletonSir;
  return parts.signal / parts.interference;
}

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void validate(const Link& link) {
  const std::string tag = "link " + std::to_string(link.id) + ": ";
  if (!finite(link.sender) || !finite(link.receiver)) {
    throw std::invalid_argument(tag + "non-finite coordinate");
  }
  if (!(link.beta >= 1.0) || !std::isfinite(link.beta)) {
    throw std::invalid_argument(tag + "beta must be a finite value >= 1");
  }
  if (!(link.weight >= 0.0) || !std::isfinite(link.weight)) {
    throw std::invalid_argument(tag + "weight must be a finite value >= 0");
  }
  if (!(link.length() > 0.0)) {
    throw std::invalid_argument(tag + "sender and receiver coincide");
  }
}

Link make_link(int id, Point sender, Point receiver, double beta, double weight) {
  Link link{id, sender, receiver, beta, weight, id};
  validate(link);
  return link;
}

void validate(const Instance& instance) {
  if (!(instance.alpha > instance.m)) {
    throw std::invalid_argument("path-loss exponent must exceed the doubling dimension");
  }
  std::unordered_set<int> seen;
  for (const Link& l : instance.links) {
    validate(l);
    if (!seen.insert(l.id).second) {
      throw std::invalid_argument("duplicate link id " + std::to_string(l.id));
    }
  }
}

std::optional<std::size_t> find_link(const Instance& instance, int id) {
  for (std::size_t k = 0; k < instance.links.size(); ++k) {
    if (instance.links[k].id == id) return k;
  }
  return std::nullopt;
}

std::vector<Link> select_links(const Instance& instance, std::span<const int> ids) {
  std::unordered_map<int, std::size_t> index;
  index.reserve(instance.links.size());
  for (std::size_t k = 0; k < instance.links.size(); ++k) index.emplace(instance.links[k].id, k);
  std::vector<Link> out;
  out.reserve(ids.size());
  for (int id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw std::out_of_range("unknown link id " + std::to_string(id));
    out.push_back(instance.links[it->second]);
  }
  return out;
}

PowerAssignment PowerAssignment::tau(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("tau must lie in (0, 1)");
  return PowerAssignment(Kind::Tau, t);
}

double PowerAssignment::power(const Link& link, double alpha) const {
  if (kind_ == Kind::Uniform) return 1.0;
  return std::pow(effective_length(link, alpha), tau_ * alpha);
}

double effective_length(const Link& link, double alpha) {
  return std::pow(link.beta, 1.0 / alpha) * link.length();
}

double directed_distance(const Link& i, const Link& j) { return distance(i.sender, j.receiver); }

double link_distance(const Link& i, const Link& j) {
  return std::min({distance(i.sender, j.sender), distance(i.sender, j.receiver),
                   distance(i.receiver, j.sender), distance(i.receiver, j.receiver)});
}

double sir(std::span<const Link> set, const Link& target, const PowerAssignment& power,
           double alpha) {
  if (find_member(set, target.id) == nullptr) {
    throw std::invalid_argument("link " + std::to_string(target.id) + " is not in the set");
  }
  return sir_from_parts(sir_parts(set, target, power, alpha));
}

FeasibilityReport is_feasible(std::span<const Link> set, const PowerAssignment& power,
                              double alpha, double tol) {
  FeasibilityReport report;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (const Link& i : set) {
    const double value = sir_from_parts(sir_parts(set, i, power, alpha));
    report.per_link_sir[i.id] = value;
    const double ratio = value / i.beta;
    if (!(value >= i.beta * (1.0 - tol))) report.feasible = false;
    if (ratio < worst_ratio || !report.worst_link) {
      worst_ratio = ratio;
      report.worst_link = i.id;
    }
  }
  return report;
}

bool feasible(std::span<const Link> set, const PowerAssignment& power, double alpha, double tol) {
  for (const Link& i : set) {
    const double value = sir_from_parts(sir_parts(set, i, power, alpha));
    if (!(value >= i.beta * (1.0 - tol))) return false;
  }
  return true;
}

bool is_pair_feasible_oracle(const Link& i, const Link& j, double alpha) {
  return directed_distance(i, j) * directed_distance(j, i) >=
         effective_length(i, alpha) * effective_length(j, alpha);
}

double i_tau(std::span<const Link> set, const Link& target, double tau, double alpha) {
  const double own = std::pow(effective_length(target, alpha), (1.0 - tau) * alpha);
  double total = 0.0;
  for (const Link& j : set) {
    if (j.id == target.id) continue;
    const double d = directed_distance(j, target);
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    total += std::pow(effective_length(j, alpha), tau * alpha) * own / std::pow(d, alpha);
  }
  return total;
}

double length_diversity(std::span<const Link> set, double alpha) {
  if (set.size() < 2) return 1.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const Link& l : set) {
    const double e = effective_length(l, alpha);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  return hi / lo;
}

}  // namespace sinrcg
