#pragma once

// Randomised experiment harness: instance generation, the feasibility-checking
// baselines, the gamma search and the aggregated weighted-selection study.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sinrcg/conflict_graph.hpp"
#include "sinrcg/physical_model.hpp"
#include "sinrcg/scheduling.hpp"

namespace sinrcg {

enum class Algorithm { ConflictGraphMwis, GreedyFeasibility, WeightClass };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

struct ExperimentConfig {
  int n = 400;
  std::vector<double> l_max{10.0, 50.0, 100.0, 250.0};
  double side = 1000.0;
  double alpha = 2.8;
  double beta = 1.0;
  std::optional<double> beta_max;  // when set, beta ~ Uniform[beta, beta_max]
  int trials = 20;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::ConflictGraphMwis, Algorithm::GreedyFeasibility,
                                    Algorithm::WeightClass};
  std::vector<double> epsilon{0.1, 0.9};
  // The baselines check feasibility under the P_tau of this epsilon; first epsilon when unset.
  std::optional<double> baseline_epsilon;
  double gamma_lo = 1.0;
  double gamma_hi = 1048576.0;  // 2^20
  int gamma_steps = 20;
};

// n >= 1, trials >= 1, side > 0, every l_max > 1, alpha > 2, valid epsilons.
void validate(const ExperimentConfig& cfg);

struct ResultRow {
  double l_max = 0.0;
  Algorithm algorithm = Algorithm::GreedyFeasibility;
  std::optional<double> epsilon;
  double mean_weight = 0.0;
  double std_weight = 0.0;  // sample (n - 1) estimator; 0 for a single trial
  int trials = 0;
  std::uint64_t seed = 0;
  int failures = 0;  // trials whose gamma search found no feasible gamma (counted as 0)
};

/// Deterministic in (cfg.seed, l_max, trial_index). Senders uniform in the
/// square, direction uniform, length log-uniform on [1, l_max], weight
/// log-uniform on [1, 100]. The receiver may leave the square.
Instance gen_random_instance(const ExperimentConfig& cfg, double l_max, int trial_index);

/// Scans links by increasing length / weight, keeping each one whose addition
/// leaves the set feasible under `power`.
WeightedSolution greedy_feasibility_heuristic(const Instance& instance, const PowerAssignment& power);

/// Buckets links by floor(log2 weight), runs the length-ordered greedy on each
/// bucket and returns the heaviest result.
WeightedSolution weight_class_baseline(const Instance& instance, const PowerAssignment& power);

/// floor(log2 w) for w >= 1.
int weight_class(double weight);

enum class SearchTarget { Mwis, FirstFit };

struct GammaSearchResult {
  bool found = false;
  double gamma = 0.0;
  double objective = 0.0;  // MWIS weight, or minus the number of first-fit classes
  int evaluations = 0;
  std::string diagnostic;
  WeightedSolution solution;  // Mwis target
  Coloring coloring;          // FirstFit target
};

struct GammaProbe {
  bool feasible = false;
  double objective = 0.0;
};

struct GammaBisection {
  bool found = false;
  double gamma = 0.0;
  double objective = 0.0;
  int evaluations = 0;
};

/// Generic search driving `probe`: hi is tried first (no feasible gamma when it
/// fails), then lo (accepted outright when feasible), then `steps` geometric
/// bisections between the largest failing and smallest passing gamma. The best
/// objective among passing probes wins, ties to the smaller gamma.
GammaBisection bisect_gamma(double lo, double hi, int steps,
                            const std::function<GammaProbe(double)>& probe);

/// Log-scale bisection of gamma on [lo, hi]. A gamma is accepted when every set
/// the target algorithm emits is P_tau-feasible; among accepted values the best
/// objective wins, ties to the smaller gamma.
GammaSearchResult binary_search_gamma(const Instance& instance, double delta, double tau, double lo,
                                      double hi, SearchTarget target, int steps = 20);

struct ExperimentReport {
  std::vector<ResultRow> rows;
  std::vector<std::string> diagnostics;
  bool invariant_violation = false;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// mean and sample standard deviation, in fixed order.
std::pair<double, double> mean_and_std(const std::vector<double>& values);

}  // namespace sinrcg
