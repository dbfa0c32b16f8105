#include "sinrcg/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace sinrcg {

namespace {

class UnitStream {
 public:
  UnitStream(std::uint64_t seed, double l_max, int trial) {
    const std::uint64_t lbits = std::bit_cast<std::uint64_t>(l_max);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(lbits), static_cast<std::uint32_t>(lbits >> 32),
                      static_cast<std::uint32_t>(trial)};
    rng_.seed(seq);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

 private:
  std::mt19937_64 rng_;
};

template <typename Key>
WeightedSolution greedy_in_order(const Instance& instance, std::vector<std::size_t> members,
                                 Key key, const PowerAssignment& power) {
  std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
    const double ka = key(instance.links[a]);
    const double kb = key(instance.links[b]);
    if (ka != kb) return ka < kb;
    return instance.links[a].id < instance.links[b].id;
  });
  std::vector<Link> accepted;
  for (std::size_t k : members) {
    accepted.push_back(instance.links[k]);
    if (!feasible(accepted, power, instance.alpha)) accepted.pop_back();
  }
  WeightedSolution out;
  for (const Link& l : accepted) {
    out.selected.push_back(l.id);
    out.total_weight += l.weight;
  }
  std::sort(out.selected.begin(), out.selected.end());
  return out;
}

std::vector<double> weights_of(const Instance& instance) {
  std::vector<double> w;
  w.reserve(instance.links.size());
  for (const Link& l : instance.links) w.push_back(l.weight);
  return w;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ConflictGraphMwis:
      return "conflict_graph_mwis";
    case Algorithm::GreedyFeasibility:
      return "greedy_feasibility";
    case Algorithm::WeightClass:
      return "weight_class";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  for (Algorithm a :
       {Algorithm::ConflictGraphMwis, Algorithm::GreedyFeasibility, Algorithm::WeightClass}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(cfg.side > 0.0)) throw std::invalid_argument("side must be positive");
  if (cfg.l_max.empty()) throw std::invalid_argument("at least one l_max value is required");
  for (double l : cfg.l_max) {
    if (!(l > 1.0) || !std::isfinite(l)) throw std::invalid_argument("l_max values must exceed 1");
  }
  if (!(cfg.alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2 in the plane");
  if (!(cfg.beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");
  if (cfg.beta_max && !(*cfg.beta_max >= cfg.beta)) {
    throw std::invalid_argument("beta_max must be >= beta");
  }
  for (double e : cfg.epsilon) {
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("epsilon values must lie in (0, 1)");
  }
  if (cfg.baseline_epsilon && !(*cfg.baseline_epsilon > 0.0 && *cfg.baseline_epsilon < 1.0)) {
    throw std::invalid_argument("baseline_epsilon must lie in (0, 1)");
  }
  if (!(cfg.gamma_lo >= 1.0) || !(cfg.gamma_hi >= cfg.gamma_lo) || !(cfg.gamma_hi <= 1048576.0)) {
    throw std::invalid_argument("gamma bounds must satisfy 1 <= lo <= hi <= 2^20");
  }
  if (cfg.gamma_steps < 0) throw std::invalid_argument("gamma_steps must be >= 0");
}

Instance gen_random_instance(const ExperimentConfig& cfg, double l_max, int trial_index) {
  UnitStream stream(cfg.seed, l_max, trial_index);
  Instance inst;
  inst.alpha = cfg.alpha;
  inst.m = 2;
  inst.links.reserve(static_cast<std::size_t>(cfg.n));
  for (int k = 0; k < cfg.n; ++k) {
    const Point sender{stream.uniform(0.0, cfg.side), stream.uniform(0.0, cfg.side)};
    const double angle = stream.uniform(0.0, 2.0 * std::numbers::pi);
    const double length = stream.log_uniform(1.0, l_max);
    const Point receiver{sender.x + length * std::cos(angle), sender.y + length * std::sin(angle)};
    const double beta = cfg.beta_max ? stream.uniform(cfg.beta, *cfg.beta_max) : cfg.beta;
    const double weight = stream.log_uniform(1.0, 100.0);
    inst.links.push_back(Link{k, sender, receiver, beta, weight, k});
  }
  return inst;
}

WeightedSolution greedy_feasibility_heuristic(const Instance& instance,
                                              const PowerAssignment& power) {
  std::vector<std::size_t> all(instance.links.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return greedy_in_order(
      instance, std::move(all), [](const Link& l) { return l.length() / l.weight; }, power);
}

int weight_class(double weight) {
  if (!(weight >= 1.0)) throw std::invalid_argument("weight classes need weights >= 1");
  return std::ilogb(weight);
}

WeightedSolution weight_class_baseline(const Instance& instance, const PowerAssignment& power) {
  std::map<int, std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < instance.links.size(); ++k) {
    classes[weight_class(instance.links[k].weight)].push_back(k);
  }
  WeightedSolution best;
  for (auto& [cls, members] : classes) {
    WeightedSolution sol = greedy_in_order(
        instance, std::move(members), [](const Link& l) { return l.length(); }, power);
    if (sol.total_weight > best.total_weight) best = std::move(sol);
  }
  return best;
}

GammaBisection bisect_gamma(double lo, double hi, int steps,
                            const std::function<GammaProbe(double)>& probe) {
  if (!(lo >= 1.0) || !(hi >= lo)) throw std::invalid_argument("need 1 <= lo <= hi");
  GammaBisection best;
  auto run = [&](double gamma) {
    ++best.evaluations;
    const GammaProbe p = probe(gamma);
    if (p.feasible && (!best.found || p.objective > best.objective ||
                       (p.objective == best.objective && gamma < best.gamma))) {
      best.found = true;
      best.gamma = gamma;
      best.objective = p.objective;
    }
    return p.feasible;
  };

  if (!run(hi)) {
    best.gamma = hi;
    return best;
  }
  if (lo < hi && run(lo)) return best;
  double bad = lo;
  double good = hi;
  for (int s = 0; s < steps; ++s) {
    const double mid = std::sqrt(bad * good);
    if (!(mid > bad && mid < good)) break;
    if (run(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return best;
}

GammaSearchResult binary_search_gamma(const Instance& instance, double delta, double tau, double lo,
                                      double hi, SearchTarget target, int steps) {
  const PairwiseGeometry geometry(instance, delta);
  const PowerAssignment power = PowerAssignment::tau(tau);
  const std::vector<double> weights = weights_of(instance);

  std::map<double, GammaSearchResult> seen;
  auto probe = [&](double gamma) {
    const ConflictGraph g = geometry.build(gamma);
    GammaSearchResult r;
    r.gamma = gamma;
    if (target == SearchTarget::Mwis) {
      r.solution = local_ratio_mwis(g, weights);
      r.objective = r.solution.total_weight;
      r.found = feasible(select_links(instance, r.solution.selected), power, instance.alpha);
    } else {
      const std::vector<int> order = g.order_ids();
      r.coloring = first_fit_coloring(g, order);
      r.objective = -static_cast<double>(r.coloring.class_count());
      r.found = std::all_of(r.coloring.classes.begin(), r.coloring.classes.end(), [&](const auto& c) {
        return feasible(select_links(instance, c), power, instance.alpha);
      });
    }
    const GammaProbe out{r.found, r.objective};
    seen[gamma] = std::move(r);
    return out;
  };

  const GammaBisection b = bisect_gamma(lo, hi, steps, probe);
  GammaSearchResult best;
  if (b.found) {
    best = std::move(seen.at(b.gamma));
  } else {
    best.gamma = hi;
    best.diagnostic = "no feasible gamma: an emitted set is infeasible at gamma = " + format_number(hi);
  }
  best.evaluations = b.evaluations;
  return best;
}

std::pair<double, double> mean_and_std(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size() - 1))};
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentReport report;
  const int m = 2;
  const double baseline_eps =
      cfg.baseline_epsilon ? *cfg.baseline_epsilon : (cfg.epsilon.empty() ? 0.5 : cfg.epsilon.front());
  const PowerAssignment baseline_power =
      PowerAssignment::tau(choose_tau(delta_from_epsilon(baseline_eps, cfg.alpha, m), cfg.alpha, m));

  for (double l_max : cfg.l_max) {
    // key: (algorithm, epsilon index or -1)
    std::map<std::pair<int, int>, std::vector<double>> samples;
    std::map<std::pair<int, int>, int> failures;
    for (int t = 0; t < cfg.trials; ++t) {
      const Instance inst = gen_random_instance(cfg, l_max, t);
      auto record = [&](Algorithm a, int eps_index, const WeightedSolution& sol,
                        const PowerAssignment& power) {
        if (!feasible(select_links(inst, sol.selected), power, inst.alpha)) {
          report.invariant_violation = true;
          report.diagnostics.push_back(to_string(a) + " emitted an infeasible set at l_max=" +
                                       format_number(l_max) + " trial " + std::to_string(t));
        }
        samples[{static_cast<int>(a), eps_index}].push_back(sol.total_weight);
      };
      for (Algorithm a : cfg.algorithms) {
        switch (a) {
          case Algorithm::GreedyFeasibility:
            record(a, -1, greedy_feasibility_heuristic(inst, baseline_power), baseline_power);
            break;
          case Algorithm::WeightClass:
            record(a, -1, weight_class_baseline(inst, baseline_power), baseline_power);
            break;
          case Algorithm::ConflictGraphMwis:
            for (std::size_t e = 0; e < cfg.epsilon.size(); ++e) {
              const double delta = delta_from_epsilon(cfg.epsilon[e], cfg.alpha, m);
              const double tau = choose_tau(delta, cfg.alpha, m);
              const GammaSearchResult r = binary_search_gamma(
                  inst, delta, tau, cfg.gamma_lo, cfg.gamma_hi, SearchTarget::Mwis, cfg.gamma_steps);
              const std::pair<int, int> key{static_cast<int>(a), static_cast<int>(e)};
              if (!r.found) {
                ++failures[key];
                report.diagnostics.push_back("l_max=" + format_number(l_max) + " trial " +
                                             std::to_string(t) + ": " + r.diagnostic);
                record(a, static_cast<int>(e), WeightedSolution{}, PowerAssignment::tau(tau));
              } else {
                record(a, static_cast<int>(e), r.solution, PowerAssignment::tau(tau));
              }
            }
            break;
        }
      }
    }
    for (Algorithm a : cfg.algorithms) {
      const bool per_eps = a == Algorithm::ConflictGraphMwis;
      const int groups = per_eps ? static_cast<int>(cfg.epsilon.size()) : 1;
      for (int e = 0; e < groups; ++e) {
        const std::pair<int, int> key{static_cast<int>(a), per_eps ? e : -1};
        const auto [mean, sd] = mean_and_std(samples[key]);
        ResultRow row;
        row.l_max = l_max;
        row.algorithm = a;
        if (per_eps) row.epsilon = cfg.epsilon[static_cast<std::size_t>(e)];
        row.mean_weight = mean;
        row.std_weight = sd;
        row.trials = cfg.trials;
        row.seed = cfg.seed;
        row.failures = failures[key];
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "l_max,algorithm,epsilon,mean_weight,std_weight,trials,seed\n";
  for (const ResultRow& r : rows) {
    out << format_number(r.l_max) << ',' << to_string(r.algorithm) << ','
        << (r.epsilon ? format_number(*r.epsilon) : std::string()) << ','
        << format_number(r.mean_weight) << ',' << format_number(r.std_weight) << ',' << r.trials
        << ',' << r.seed << '\n';
  }
}

}  // namespace sinrcg
