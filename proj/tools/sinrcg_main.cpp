// sinrcg: command-line front end for instance generation, conflict graphs,
// scheduling and the randomised benchmark.
//
// Exit status: 0 on success, 1 on bad input, 2 when an emitted schedule fails
// its physical re-verification or another invariant breaks.

#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sinrcg/conflict_graph.hpp"
#include "sinrcg/experiment.hpp"
#include "sinrcg/io.hpp"
#include "sinrcg/mcma.hpp"
#include "sinrcg/physical_model.hpp"
#include "sinrcg/rate_control.hpp"
#include "sinrcg/scheduling.hpp"

namespace {

using nlohmann::json;
using namespace sinrcg;

constexpr int kExitInput = 1;
constexpr int kExitInvariant = 2;
constexpr int kPlanar = 2;

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphOptions {
  std::string in;
  std::string out;
  std::optional<double> gamma;
  std::optional<double> delta;
  double gamma_lo = 1.0;
  double gamma_hi = 1048576.0;
  int gamma_steps = 20;
  bool diag = false;
};

void add_graph_options(CLI::App* cmd, GraphOptions& o) {
  cmd->add_option("--in", o.in, "instance JSON")->required();
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--gamma", o.gamma, "conflict factor; searched when omitted")
      ->check(CLI::Range(1.0, 1e300));
  cmd->add_option("--delta", o.delta, "diversity exponent; delta0 + (1 - delta0)/2 when omitted");
  cmd->add_option("--gamma-lo", o.gamma_lo, "lower end of the gamma search");
  cmd->add_option("--gamma-hi", o.gamma_hi, "upper end of the gamma search");
  cmd->add_option("--gamma-steps", o.gamma_steps, "bisection steps of the gamma search");
  cmd->add_flag("--diag", o.diag, "report the measured inductive independence");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

struct Setup {
  Instance instance;
  double delta = 0.0;
  double tau = 0.0;
  PowerAssignment power = PowerAssignment::uniform();
};

Setup setup(const GraphOptions& o) {
  Setup s;
  s.instance = parse_instance(read_file(o.in));
  s.delta = o.delta ? *o.delta : delta_from_epsilon(0.5, s.instance.alpha, kPlanar);
  s.tau = choose_tau(s.delta, s.instance.alpha, kPlanar);
  s.power = PowerAssignment::tau(s.tau);
  return s;
}

json header(const char* command, const Setup& s, double gamma, bool searched) {
  return json{{"command", command}, {"alpha", s.instance.alpha}, {"delta", s.delta},
              {"tau", s.tau},       {"gamma", gamma},            {"gamma_searched", searched}};
}

void add_diag(json& out, const ConflictGraph& g, bool enabled) {
  if (!enabled) return;
  const InductiveIndependence k = measure_inductive_independence(g);
  out["diagnostics"]["k_measured"] = k.k;
  out["diagnostics"]["k_truncated"] = k.truncated;
}

// Resolves gamma: the given value, or the bisection driven by `probe`.
double resolve_gamma(const GraphOptions& o, const std::function<GammaProbe(double)>& probe,
                     json& diagnostics) {
  if (o.gamma) return *o.gamma;
  const GammaBisection b = bisect_gamma(o.gamma_lo, o.gamma_hi, o.gamma_steps, probe);
  diagnostics["gamma_evaluations"] = b.evaluations;
  if (!b.found) {
    throw InvariantViolation("no feasible gamma in [" + std::to_string(o.gamma_lo) + ", " +
                             std::to_string(o.gamma_hi) + "]");
  }
  return b.gamma;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

bool classes_feasible(const Instance& inst, const std::vector<std::vector<int>>& classes,
                      const PowerAssignment& power) {
  for (const auto& c : classes) {
    if (!feasible(select_links(inst, c), power, inst.alpha)) return false;
  }
  return true;
}

int run_graph(const GraphOptions& o) {
  const Instance inst = parse_instance(read_file(o.in));
  const double delta = o.delta ? *o.delta : delta_from_epsilon(0.5, inst.alpha, kPlanar);
  const ConflictFn fn{*o.gamma, delta};
  validate(fn);
  emit(o.out, format_graph(build_conflict_graph(inst, fn), inst.alpha));
  return 0;
}

int run_tdma(const GraphOptions& o) {
  const Setup s = setup(o);
  const PairwiseGeometry geometry(s.instance, s.delta);
  auto color = [&](double gamma) {
    const ConflictGraph g = geometry.build(gamma);
    return std::pair{g, first_fit_coloring(g, g.order_ids())};
  };
  json diagnostics = json::object();
  const double gamma = resolve_gamma(
      o,
      [&](double gamma) {
        const auto [g, c] = color(gamma);
        return GammaProbe{classes_feasible(s.instance, c.classes, s.power),
                          -static_cast<double>(c.class_count())};
      },
      diagnostics);
  const auto [g, coloring] = color(gamma);

  json out = header("tdma", s, gamma, !o.gamma);
  out["class_count"] = coloring.class_count();
  out["classes"] = coloring.classes;
  const bool ok = classes_feasible(s.instance, coloring.classes, s.power);
  out["feasible"] = ok;
  out["diagnostics"] = diagnostics;
  add_diag(out, g, o.diag);
  emit(o.out, out.dump(2) + "\n");
  require(ok, "tdma: a slot is infeasible under P_tau at gamma = " + std::to_string(gamma));
  return 0;
}

std::vector<double> link_weights(const Instance& inst) {
  std::vector<double> w;
  for (const Link& l : inst.links) w.push_back(l.weight);
  return w;
}

int run_mwis(const GraphOptions& o, bool rate_control, const std::string& utils_path) {
  const Setup s = setup(o);
  std::optional<ExpandedInstance> expanded;
  if (rate_control) {
    if (utils_path.empty()) throw std::runtime_error("--rate-control needs --utils");
    const std::vector<UtilitySpec> specs = parse_utilities(read_file(utils_path), s.instance);
    const bool monotone = specs.front().monotone.has_value();
    for (const UtilitySpec& spec : specs) {
      if (spec.monotone.has_value() != monotone) {
        throw std::runtime_error("utility specs must be all discrete or all monotone");
      }
    }
    expanded = monotone ? expand_geometric(s.instance, specs, static_cast<int>(specs.size()))
                        : expand_discrete(s.instance, specs);
  }
  const Instance& work = expanded ? expanded->instance : s.instance;
  const PairwiseGeometry geometry(work, s.delta);
  const std::vector<double> weights = link_weights(work);

  json diagnostics = json::object();
  const double gamma = resolve_gamma(
      o,
      [&](double gamma) {
        const WeightedSolution sol = local_ratio_mwis(geometry.build(gamma), weights);
        return GammaProbe{feasible(select_links(work, sol.selected), s.power, work.alpha),
                          sol.total_weight};
      },
      diagnostics);
  const ConflictGraph g = geometry.build(gamma);
  const WeightedSolution sol = local_ratio_mwis(g, weights);
  require(is_independent_set(g, sol.selected), "mwis: solution is not independent");

  json out = header("mwis", s, gamma, !o.gamma);
  bool ok = false;
  if (expanded) {
    const CollapsedSolution collapsed = collapse_solution(*expanded, sol);
    const std::vector<Link> chosen = chosen_links(*expanded, collapsed);
    ok = feasible(chosen, s.power, s.instance.alpha);
    out["selected"] = collapsed.solution.selected;
    out["total_weight"] = collapsed.solution.total_weight;
    json rates = json::array();
    for (const RateChoice& c : collapsed.choices) {
      rates.push_back({{"id", c.origin_id}, {"beta", c.beta}, {"utility", c.weight}});
    }
    out["rates"] = std::move(rates);
    out["copies"] = expanded->instance.links.size();
  } else {
    ok = feasible(select_links(s.instance, sol.selected), s.power, s.instance.alpha);
    out["selected"] = sol.selected;
    out["total_weight"] = sol.total_weight;
  }
  out["feasible"] = ok;
  out["diagnostics"] = diagnostics;
  add_diag(out, g, o.diag);
  emit(o.out, out.dump(2) + "\n");
  require(ok, "mwis: selected set is infeasible under P_tau at gamma = " + std::to_string(gamma));
  return 0;
}

int run_channels(const GraphOptions& o, int c) {
  const Setup s = setup(o);
  const PairwiseGeometry geometry(s.instance, s.delta);
  json diagnostics = json::object();
  const double gamma = resolve_gamma(
      o,
      [&](double gamma) {
        const ChannelAssignment a = greedy_multichannel(geometry.build(gamma), c);
        return GammaProbe{classes_feasible(s.instance, a.channels, s.power),
                          static_cast<double>(a.assigned_count())};
      },
      diagnostics);
  const ConflictGraph g = geometry.build(gamma);
  const ChannelAssignment a = greedy_multichannel(g, c);

  json out = header("channels", s, gamma, !o.gamma);
  out["c"] = c;
  out["channels"] = a.channels;
  out["unassigned"] = a.unassigned;
  out["assigned_count"] = a.assigned_count();
  const bool ok = classes_feasible(s.instance, a.channels, s.power);
  out["feasible"] = ok;
  out["diagnostics"] = diagnostics;
  add_diag(out, g, o.diag);
  emit(o.out, out.dump(2) + "\n");
  require(ok, "channels: a channel is infeasible under P_tau at gamma = " + std::to_string(gamma));
  return 0;
}

int run_mcma(const GraphOptions& o, const std::string& caps_path, int c) {
  const Setup s = setup(o);
  CapsMap caps;
  if (!caps_path.empty()) caps = parse_caps(read_file(caps_path), s.instance);
  NodeCaps fallback;
  for (int ch = 1; ch <= c; ++ch) fallback.channels.push_back(ch);
  for (const Link& l : s.instance.links) {
    caps.try_emplace(l.sender, fallback);
    caps.try_emplace(l.receiver, fallback);
  }
  const std::vector<VirtualLink> vlinks = expand_virtual(s.instance, caps);
  std::vector<double> weights;
  for (const VirtualLink& v : vlinks) {
    weights.push_back(s.instance.links[*find_link(s.instance, v.original_id)].weight);
  }
  const PairwiseGeometry geometry(s.instance, s.delta);
  auto solve = [&](double gamma) {
    McmaGraph mg = build_mcma_graph(vlinks, geometry.build(gamma), s.instance);
    WeightedSolution sol = local_ratio_mwis(mg.graph, weights);
    return std::pair{std::move(mg), std::move(sol)};
  };

  json diagnostics = json::object();
  const double gamma = resolve_gamma(
      o,
      [&](double gamma) {
        const auto [mg, sol] = solve(gamma);
        return GammaProbe{mcma_feasible_check(select_vlinks(mg, sol.selected), s.power, s.instance),
                          sol.total_weight};
      },
      diagnostics);
  const auto [mg, sol] = solve(gamma);
  require(is_independent_set(mg.graph, sol.selected), "mcma: solution is not independent");
  const std::vector<VirtualLink> chosen = select_vlinks(mg, sol.selected);
  const bool ok = mcma_feasible_check(chosen, s.power, s.instance);

  json out = header("mcma", s, gamma, !o.gamma);
  out["virtual_links"] = vlinks.size();
  json sel = json::array();
  for (const VirtualLink& v : chosen) {
    sel.push_back({{"vid", v.id},
                   {"id", v.original_id},
                   {"sender_antenna", v.sender_antenna},
                   {"receiver_antenna", v.receiver_antenna},
                   {"channel", v.channel}});
  }
  out["selected"] = std::move(sel);
  out["total_weight"] = sol.total_weight;
  out["feasible"] = ok;
  out["diagnostics"] = diagnostics;
  add_diag(out, mg.graph, o.diag);
  emit(o.out, out.dump(2) + "\n");
  require(ok, "mcma: selection fails the antenna or per-channel feasibility check");
  return 0;
}

struct GenOptions {
  int n = 100;
  double l_max = 100.0;
  double alpha = 2.8;
  double beta = 1.0;
  std::optional<double> beta_max;
  double side = 1000.0;
  std::uint64_t seed = 1;
  int trial = 0;
  std::string out;
};

int run_gen(const GenOptions& o) {
  ExperimentConfig cfg;
  cfg.n = o.n;
  cfg.l_max = {o.l_max};
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.beta_max = o.beta_max;
  cfg.side = o.side;
  cfg.seed = o.seed;
  validate(cfg);
  emit(o.out, format_instance(gen_random_instance(cfg, o.l_max, o.trial)));
  return 0;
}

int run_bench(const std::string& config_path, const std::string& csv_path) {
  const ExperimentConfig cfg =
      config_path.empty() ? ExperimentConfig{} : parse_config(read_file(config_path));
  const ExperimentReport report = run_experiment(cfg);
  std::ostringstream csv;
  write_csv(csv, report.rows);
  emit(csv_path, csv.str());
  for (const std::string& d : report.diagnostics) std::cerr << "note: " << d << '\n';
  if (report.invariant_violation) {
    std::cerr << "error: an emitted solution failed physical re-verification\n";
    return kExitInvariant;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIR link scheduling with conflict-graph refinements"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--n", gen.n, "number of links");
  gen_cmd->add_option("--lmax", gen.l_max, "maximum link length");
  gen_cmd->add_option("--alpha", gen.alpha, "path-loss exponent");
  gen_cmd->add_option("--beta", gen.beta, "SIR threshold (lower end when --beta-max is set)");
  gen_cmd->add_option("--beta-max", gen.beta_max, "draw thresholds uniformly up to this value");
  gen_cmd->add_option("--side", gen.side, "side of the square");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--trial", gen.trial, "trial index within the seed");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  GraphOptions graph;
  auto* graph_cmd = app.add_subcommand("graph", "build the conflict graph");
  add_graph_options(graph_cmd, graph);
  graph_cmd->get_option("--gamma")->required();

  GraphOptions tdma;
  auto* tdma_cmd = app.add_subcommand("tdma", "first-fit TDMA schedule");
  add_graph_options(tdma_cmd, tdma);

  GraphOptions mwis;
  bool rate_control = false;
  std::string utils;
  auto* mwis_cmd = app.add_subcommand("mwis", "weighted independent set of links");
  add_graph_options(mwis_cmd, mwis);
  mwis_cmd->add_flag("--rate-control", rate_control, "select rates from per-link utilities");
  mwis_cmd->add_option("--utils", utils, "utility spec JSON");

  GraphOptions channels;
  int c = 1;
  auto* channels_cmd = app.add_subcommand("channels", "greedy multi-channel selection");
  add_graph_options(channels_cmd, channels);
  channels_cmd->add_option("--c", c, "number of channels")->required()->check(CLI::PositiveNumber);

  GraphOptions mcma;
  std::string caps;
  int mcma_c = 1;
  auto* mcma_cmd = app.add_subcommand("mcma", "multi-channel multi-antenna selection");
  add_graph_options(mcma_cmd, mcma);
  mcma_cmd->add_option("--caps", caps, "node caps JSON");
  mcma_cmd->add_option("--c", mcma_c, "channels 1..c for nodes without a caps entry")
      ->check(CLI::PositiveNumber);

  std::string config;
  std::string csv;
  auto* bench_cmd = app.add_subcommand("bench", "run the randomised weighted-selection study");
  bench_cmd->add_option("--config", config, "experiment config JSON (defaults when omitted)");
  bench_cmd->add_option("--csv", csv, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*graph_cmd) return run_graph(graph);
    if (*tdma_cmd) return run_tdma(tdma);
    if (*mwis_cmd) return run_mwis(mwis, rate_control, utils);
    if (*channels_cmd) return run_channels(channels, c);
    if (*mcma_cmd) return run_mcma(mcma, caps, mcma_c);
    if (*bench_cmd) return run_bench(config, csv);
  } catch (const InvariantViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
