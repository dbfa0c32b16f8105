// End-to-end acceptance run. One line per criterion; exit status is nonzero when
// a hard criterion fails. Criterion 5 is a diagnostic and never fails the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sinrcg/conflict_graph.hpp"
#include "sinrcg/experiment.hpp"
#include "sinrcg/mcma.hpp"
#include "sinrcg/physical_model.hpp"
#include "sinrcg/rate_control.hpp"
#include "sinrcg/scheduling.hpp"
#include "test_support.hpp"

using namespace sinrcg;
using sinrcg::testing::Gen;

namespace {

constexpr double kAlpha = 2.8;
constexpr int kPlanar = 2;
constexpr double kGammaHi = 1048576.0;  // 2^20
constexpr double kTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  bool soft = false;
  std::string detail;
};

int hard_failures = 0;

void report(int id, const char* name, const Outcome& o) {
  const char* verdict = o.pass ? "PASS" : (o.soft ? "FAIL (diagnostic)" : "FAIL");
  std::printf("criterion %d [%s] %s: %s\n", id, verdict, name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass && !o.soft) ++hard_failures;
}

ExperimentConfig refinement_config() {
  ExperimentConfig cfg;
  cfg.n = 100;
  cfg.l_max = {100.0};
  cfg.alpha = kAlpha;
  cfg.beta = 1.0;
  cfg.beta_max = 4.0;
  cfg.seed = 20240601;
  return cfg;
}

double refinement_delta() { return delta_from_epsilon(0.5, kAlpha, kPlanar); }

struct RefinementRun {
  Instance instance;
  double gamma = 0.0;
  Coloring coloring;
};

std::vector<RefinementRun> refinement_runs;

Outcome criterion_refinement() {
  const auto t0 = Clock::now();
  const ExperimentConfig cfg = refinement_config();
  const double delta = refinement_delta();
  const double tau = choose_tau(delta, kAlpha, kPlanar);
  const PowerAssignment power = PowerAssignment::tau(tau);
  int not_found = 0;
  int violations = 0;
  double gmin = INFINITY;
  double gmax = 0.0;
  for (int t = 0; t < 50; ++t) {
    Instance inst = gen_random_instance(cfg, 100.0, t);
    const GammaSearchResult r =
        binary_search_gamma(inst, delta, tau, 1.0, kGammaHi, SearchTarget::FirstFit);
    if (!r.found || r.gamma > kGammaHi) {
      ++not_found;
      continue;
    }
    for (const auto& cls : r.coloring.classes) {
      if (!feasible(select_links(inst, cls), power, kAlpha, kTol)) ++violations;
    }
    gmin = std::min(gmin, r.gamma);
    gmax = std::max(gmax, r.gamma);
    refinement_runs.push_back(RefinementRun{std::move(inst), r.gamma, r.coloring});
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "50 instances, delta " << delta << ", tau " << tau << ", gamma in [" << gmin << ", " << gmax
    << "], searches without gamma " << not_found << ", infeasible classes " << violations << ", "
    << secs << " s (limit 120)";
  return Outcome{not_found == 0 && violations == 0 && secs < 120.0, false, d.str()};
}

Outcome criterion_pair_oracle() {
  Gen gen(202);
  int compared = 0;
  int disagreements = 0;
  std::string first;
  for (int t = 0; t < 100000; ++t) {
    const Link i = gen.link(0, 50.0, 20.0, 4.0);
    const Link j = gen.link(1, 50.0, 20.0, 4.0);
    const double margin = sinrcg::testing::pair_margin(i, j, kAlpha);
    if (std::abs(margin) <= 1e-6) continue;
    ++compared;
    const bool oracle = is_pair_feasible_oracle(i, j, kAlpha);
    const bool grid = sinrcg::testing::grid_pair_search(i, j, kAlpha).feasible;
    if (oracle != grid) {
      if (disagreements++ == 0) {
        std::ostringstream d;
        d << " first at trial " << t << " margin " << margin;
        first = d.str();
      }
    }
  }
  std::ostringstream d;
  d << compared << " of 100000 pairs outside the 1e-6 margin band, disagreements " << disagreements
    << first;
  return Outcome{disagreements == 0, false, d.str()};
}

Outcome criterion_geometry() {
  const auto t0 = Clock::now();
  Gen gen(303);
  int pair_violations = 0;
  int triple_violations = 0;
  for (int t = 0; t < 1000000; ++t) {
    const Link i = gen.link(0, 100.0, 50.0);
    const Link j = gen.link(1, 100.0, 50.0);
    const double lhs = j.length() * link_distance(i, j);
    const double rhs = 2.0 * directed_distance(i, j) * directed_distance(j, i) + i.length() * j.length();
    if (lhs > rhs + kTol * rhs) ++pair_violations;
  }
  for (int t = 0; t < 1000000; ++t) {
    Link v[3] = {gen.link(0, 100.0, 50.0), gen.link(1, 100.0, 50.0), gen.link(2, 100.0, 50.0)};
    std::sort(std::begin(v), std::end(v),
              [](const Link& a, const Link& b) { return a.length() < b.length(); });
    const Link& i = v[0];
    const Link& j = v[1];
    const Link& k = v[2];
    const double djk = directed_distance(j, k);
    const double dkj = directed_distance(k, j);
    const double base = link_distance(i, j) + i.length() + j.length() + link_distance(i, k);
    if (std::min(djk, dkj) > base + kTol * base) ++triple_violations;
    const double wide = base + k.length();
    if (std::max(djk, dkj) > wide + kTol * wide) ++triple_violations;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "1e6 pairs: " << pair_violations << " violations; 1e6 triples: " << triple_violations
    << " violations; " << secs << " s (limit 60)";
  return Outcome{pair_violations == 0 && triple_violations == 0 && secs < 60.0, false, d.str()};
}

Outcome criterion_mwis_ratio() {
  Gen gen(404);
  const double delta = refinement_delta();
  int violations = 0;
  int edges = 0;
  double worst = INFINITY;
  for (int t = 0; t < 200; ++t) {
    const int n = gen.integer(2, 16);
    const Instance inst = gen.instance(n, 60.0, 20.0, kAlpha, 4.0);
    const ConflictGraph g = build_conflict_graph(inst, ConflictFn{gen.log_uniform(1.0, 16.0), delta});
    std::vector<double> w(g.size());
    for (double& x : w) x = gen.log_uniform(1.0, 100.0);
    edges += static_cast<int>(g.adjacency().edge_count());
    const double opt = sinrcg::testing::brute_force_mwis(g, w);
    const int k = std::max(measure_inductive_independence(g).k, 1);
    const double got = local_ratio_mwis(g, w).total_weight;
    worst = std::min(worst, got * k / opt);
    if (got < opt / k * (1.0 - 1e-12)) ++violations;
  }
  std::ostringstream d;
  d << "200 graphs (" << edges << " edges total), violations " << violations
    << ", min weight*k/OPT " << worst;
  return Outcome{violations == 0, false, d.str()};
}

Outcome criterion_partition() {
  const double delta = refinement_delta();
  const PowerAssignment power = PowerAssignment::tau(choose_tau(delta, kAlpha, kPlanar));
  int over = 0;
  int infeasible_inputs = 0;
  std::size_t max_classes = 0;
  int max_fstar = 0;
  std::string counterexamples;
  for (std::size_t t = 0; t < refinement_runs.size(); ++t) {
    const RefinementRun& run = refinement_runs[t];
    const std::vector<int> s = greedy_feasibility_heuristic(run.instance, power).selected;
    if (!feasible(select_links(run.instance, s), power, kAlpha, kTol)) {
      ++infeasible_inputs;
      continue;
    }
    const ConflictGraph g = build_conflict_graph(run.instance, ConflictFn{run.gamma, delta});
    const PartitionReport p = partition_feasible(g, s);
    max_classes = std::max(max_classes, p.coloring.class_count());
    max_fstar = std::max(max_fstar, p.f_star);
    if (p.coloring.class_count() > static_cast<std::size_t>(10 * (p.f_star + 1))) {
      ++over;
      std::ostringstream d;
      d << "; instance " << t << ": |S|=" << s.size() << " classes " << p.coloring.class_count()
        << " f* " << p.f_star << " diversity " << p.diversity;
      counterexamples += d.str();
    }
  }
  std::ostringstream d;
  d << refinement_runs.size() << " feasible sets, max classes " << max_classes << ", max f* "
    << max_fstar << ", over 10(f*+1): " << over << ", infeasible inputs " << infeasible_inputs
    << counterexamples;
  return Outcome{over == 0 && infeasible_inputs == 0 && !refinement_runs.empty(), true, d.str()};
}

Outcome criterion_study() {
  const auto t0 = Clock::now();
  const ExperimentConfig cfg;  // defaults are the study configuration
  const ExperimentReport report = run_experiment(cfg);
  const double secs = seconds_since(t0);
  std::map<std::pair<double, std::string>, double> mean;
  for (const ResultRow& r : report.rows) {
    std::string key = to_string(r.algorithm);
    if (r.epsilon) key += "@" + std::to_string(*r.epsilon);
    mean[{r.l_max, key}] = r.mean_weight;
  }
  const std::string cg_lo = to_string(Algorithm::ConflictGraphMwis) + "@" + std::to_string(0.1);
  const std::string cg_hi = to_string(Algorithm::ConflictGraphMwis) + "@" + std::to_string(0.9);
  const std::string greedy = to_string(Algorithm::GreedyFeasibility);
  const std::string wc = to_string(Algorithm::WeightClass);
  bool ordered = true;
  std::ostringstream d;
  d.precision(6);
  for (double lm : cfg.l_max) {
    const double a = mean.at({lm, greedy});
    const double b = mean.at({lm, cg_lo});
    const double c = mean.at({lm, cg_hi});
    const double e = mean.at({lm, wc});
    const bool ok = a >= b && b >= c && c >= e;
    ordered = ordered && ok;
    d << "l_max " << lm << ": " << a << " >= " << b << " >= " << c << " >= " << e
      << (ok ? "" : " (broken)") << "; ";
  }
  d << "invariant violations " << (report.invariant_violation ? "yes" : "none") << "; " << secs
    << " s (limit 1800)";
  for (const std::string& note : report.diagnostics) d << "; note: " << note;
  return Outcome{ordered && !report.invariant_violation && secs < 1800.0, false, d.str()};
}

// Random maximal independent set: vertices visited in a shuffled order.
std::vector<int> random_maximal_is(const ConflictGraph& g, Gen& gen) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), gen.engine());
  std::vector<std::size_t> chosen;
  for (std::size_t v : order) {
    bool free = true;
    for (std::size_t u : chosen) {
      if (g.adjacent(u, v)) {
        free = false;
        break;
      }
    }
    if (free) chosen.push_back(v);
  }
  std::vector<int> ids;
  for (std::size_t v : chosen) ids.push_back(g.id(v));
  std::sort(ids.begin(), ids.end());
  return ids;
}

Outcome criterion_mcma() {
  if (refinement_runs.empty()) return Outcome{false, false, "no gamma from criterion 1"};
  double gamma = 0.0;
  for (const RefinementRun& r : refinement_runs) gamma = std::max(gamma, r.gamma);
  const double delta = refinement_delta();
  const PowerAssignment power = PowerAssignment::tau(choose_tau(delta, kAlpha, kPlanar));
  ExperimentConfig cfg = refinement_config();
  cfg.seed = 707;
  Gen gen(707);
  int sets = 0;
  int infeasible = 0;
  int not_independent = 0;
  int clique_misses = 0;
  std::size_t vertices = 0;
  for (int t = 0; t < 20; ++t) {
    const Instance inst = gen_random_instance(cfg, 100.0, t);
    CapsMap caps;
    for (const Link& l : inst.links) {
      for (const Point& p : {l.sender, l.receiver}) {
        if (caps.count(p)) continue;
        NodeCaps c;
        c.antennas = gen.integer(1, 3);
        do {
          c.channels.clear();
          for (int ch = 1; ch <= 3; ++ch) {
            if (gen.coin()) c.channels.push_back(ch);
          }
        } while (c.channels.empty());
        caps[p] = c;
      }
    }
    const std::vector<VirtualLink> vlinks = expand_virtual(inst, caps);
    const McmaGraph mg = build_mcma_graph(vlinks, build_conflict_graph(inst, ConflictFn{gamma, delta}), inst);
    vertices += mg.vlinks.size();
    for (std::size_t a = 0; a < mg.vlinks.size(); ++a) {
      for (std::size_t b = a + 1; b < mg.vlinks.size(); ++b) {
        if (share_antenna(mg.vlinks[a], mg.vlinks[b], inst) && !mg.graph.adjacent(a, b)) ++clique_misses;
      }
    }
    std::vector<std::vector<int>> candidates;
    for (int r = 0; r < 5; ++r) {
      std::vector<double> w(mg.vlinks.size());
      for (double& x : w) x = gen.log_uniform(1.0, 100.0);
      candidates.push_back(local_ratio_mwis(mg.graph, w).selected);
    }
    for (int r = 0; r < 20; ++r) candidates.push_back(random_maximal_is(mg.graph, gen));
    for (const auto& cls : first_fit_coloring(mg.graph, mg.graph.order_ids()).classes) {
      candidates.push_back(cls);
    }
    for (const auto& ids : candidates) {
      ++sets;
      if (!is_independent_set(mg.graph, ids)) {
        ++not_independent;
        continue;
      }
      if (!mcma_feasible_check(select_vlinks(mg, ids), power, inst, kTol)) ++infeasible;
    }
  }
  std::ostringstream d;
  d << "20 instances, gamma " << gamma << ", " << vertices << " virtual links, " << sets
    << " independent sets checked, infeasible " << infeasible << ", malformed " << not_independent
    << ", antenna pairs not adjacent " << clique_misses;
  return Outcome{infeasible == 0 && not_independent == 0 && clique_misses == 0, false, d.str()};
}

Outcome criterion_rate_control() {
  const double delta = refinement_delta();
  const double tau = choose_tau(delta, kAlpha, kPlanar);
  const PowerAssignment power = PowerAssignment::tau(tau);
  ExperimentConfig cfg;
  cfg.n = 60;
  cfg.side = 300.0;
  cfg.seed = 808;
  int below = 0;
  int duplicates = 0;
  int no_gamma = 0;
  std::size_t chosen_total = 0;
  std::size_t copies_total = 0;
  double worst = INFINITY;
  for (int t = 0; t < 20; ++t) {
    const Instance inst = gen_random_instance(cfg, 100.0, t);
    std::vector<UtilitySpec> specs;
    for (const Link& l : inst.links) {
      UtilitySpec s;
      s.link_id = l.id;
      s.monotone = log2_shannon_utility(1.0, 1.0, 64.0);
      specs.push_back(std::move(s));
    }
    const ExpandedInstance ex = expand_geometric(inst, specs, static_cast<int>(inst.links.size()));
    copies_total += ex.instance.links.size();
    const GammaSearchResult r =
        binary_search_gamma(ex.instance, delta, tau, 1.0, kGammaHi, SearchTarget::Mwis);
    if (!r.found) {
      ++no_gamma;
      continue;
    }
    std::set<int> origins;
    for (int id : r.solution.selected) {
      if (!origins.insert(ex.info(id).origin_id).second) ++duplicates;
    }
    if (origins.size() != r.solution.selected.size()) continue;
    const CollapsedSolution c = collapse_solution(ex, r.solution);
    const std::vector<Link> chosen = chosen_links(ex, c);
    chosen_total += chosen.size();
    for (const Link& l : chosen) {
      const double s = sir(chosen, l, power, inst.alpha);
      worst = std::min(worst, s / l.beta);
      if (s < l.beta * (1.0 - kTol)) ++below;
    }
  }
  std::ostringstream d;
  d << "20 instances, " << copies_total << " copies, " << chosen_total
    << " links selected, SIR below level " << below << ", duplicate origins " << duplicates
    << ", searches without gamma " << no_gamma << ", min SIR/beta " << worst;
  return Outcome{below == 0 && duplicates == 0 && no_gamma == 0, false, d.str()};
}

Outcome criterion_scale() {
  const double delta = refinement_delta();
  const PowerAssignment power = PowerAssignment::tau(choose_tau(delta, kAlpha, kPlanar));
  ExperimentConfig cfg = refinement_config();
  cfg.seed = 909;
  Gen gen(909);
  int graph_mismatch = 0;
  int verdict_mismatch = 0;
  int verdicts = 0;
  for (int t = 0; t < 20; ++t) {
    const Instance inst = gen_random_instance(cfg, 100.0, t);
    std::vector<std::vector<int>> subsets;
    const ConflictGraph g1 = build_conflict_graph(inst, ConflictFn{1.0, delta});
    for (const auto& c : first_fit_coloring(g1, g1.order_ids()).classes) subsets.push_back(c);
    subsets.push_back(g1.ids());
    for (int r = 0; r < 30; ++r) {
      std::vector<int> s;
      for (const Link& l : inst.links) {
        if (gen.coin(0.08)) s.push_back(l.id);
      }
      subsets.push_back(s);
    }
    for (double scale : {1e-3, 1e3}) {
      const Instance sc = sinrcg::testing::scaled(inst, scale);
      for (double gamma : {1.0, 4.0, 64.0}) {
        const ConflictGraph a = build_conflict_graph(inst, ConflictFn{gamma, delta});
        const ConflictGraph b = build_conflict_graph(sc, ConflictFn{gamma, delta});
        if (!(a.adjacency() == b.adjacency()) || a.order() != b.order()) ++graph_mismatch;
      }
      for (const auto& s : subsets) {
        for (const PowerAssignment& p : {power, PowerAssignment::uniform()}) {
          ++verdicts;
          if (feasible(select_links(inst, s), p, kAlpha) != feasible(select_links(sc, s), p, kAlpha)) {
            ++verdict_mismatch;
          }
        }
      }
      for (std::size_t k = 0; k + 1 < inst.links.size(); k += 2) {
        ++verdicts;
        if (is_pair_feasible_oracle(inst.links[k], inst.links[k + 1], kAlpha) !=
            is_pair_feasible_oracle(sc.links[k], sc.links[k + 1], kAlpha)) {
          ++verdict_mismatch;
        }
      }
    }
  }
  std::ostringstream d;
  d << "20 instances x 2 scales: graph mismatches " << graph_mismatch << " of 120, verdict mismatches "
    << verdict_mismatch << " of " << verdicts;
  return Outcome{graph_mismatch == 0 && verdict_mismatch == 0, false, d.str()};
}

}  // namespace

int main() {
  report(1, "refinement", criterion_refinement());
  report(2, "pair oracle", criterion_pair_oracle());
  report(3, "geometric bounds", criterion_geometry());
  report(4, "mwis ratio", criterion_mwis_ratio());
  report(5, "partition size", criterion_partition());
  report(6, "study ordering", criterion_study());
  report(7, "mc-ma", criterion_mcma());
  report(8, "rate control", criterion_rate_control());
  report(9, "scale invariance", criterion_scale());
  std::printf("%s: %d hard criteria failed\n", hard_failures == 0 ? "ACCEPTED" : "REJECTED", hard_failures);
  return hard_failures == 0 ? 0 : 1;
}
