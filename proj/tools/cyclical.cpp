#include "cyclical/branching.hpp"
#include "cyclical/degree_stats.hpp"
#include "cyclical/experiment.hpp"
#include "cyclical/generate.hpp"
#include "cyclical/structure.hpp"
#include "cyclical/walks.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

using namespace cyclical;
using nlohmann::json;

namespace {

json proper_json(ProperReport const &r)
{
  return {{"second_moment", r.second_moment},
          {"k_bound", r.k_bound},
          {"second_moment_ok", r.second_moment_ok},
          {"max_degree", r.max_degree},
          {"delta_rule", to_string(r.rule)},
          {"delta_bound", r.delta_bound},
          {"max_degree_ok", r.max_degree_ok},
          {"asymptotic_only", r.rule == DeltaRule::paper_c2},
          {"proper", r.proper()}};
}

int cmd_generate(std::size_t n, std::uint64_t seed, std::uint64_t replicate, std::string const &model,
                 std::string const &out)
{
  auto const g = sample_graph(parse_model(model), n, {seed, replicate, "graph"});
  if (out.empty() || out == "-") {
    write_edge_list(std::cout, g);
  } else {
    save_edge_list(out, g);
  }
  return 0;
}

int cmd_indegree(std::string const &path, std::string const &weights, double k_bound, std::string const &rule)
{
  auto const g = load_edge_list(path);
  auto const d = degree_sequence(g);
  auto const xi = empirical_in_degree(d);
  if (weights != "squared") {
    throw std::invalid_argument("only --weights squared is supported");
  }
  json out = {{"n", g.vertex_count()},
              {"xi", xi.xi},
              {"distance", weighted_distance(xi, WeightSequence::squared())},
              {"max_degree", max_degree(d)}};
  if (g.constant_out_degree(2)) {
    out["proper_report"] = proper_json(check_proper(d, k_bound, parse_delta_rule(rule)));
  } else {
    out["proper_report"] = nullptr;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_fixedpoint(double tol)
{
  auto const r = survival_probability(OffspringPmf::poisson2(), tol);
  json out = {{"x_star", r.x_star}, {"second_scc_constant", second_scc_constant(r.x_star)}, {"residual", r.residual}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_scc(std::string const &path, std::string const &format)
{
  auto const g = load_edge_list(path);
  auto const scc = scc_decompose(g);
  std::vector<std::size_t> top(scc.sizes.begin(), scc.sizes.begin() + std::min<std::size_t>(5, scc.sizes.size()));

  std::size_t max_distance = 0;
  std::size_t unreachable_count = 0;
  for (auto d : distances_to_set(g, scc.giant_mask)) {
    if (d == unreachable) {
      ++unreachable_count;
    } else {
      max_distance = std::max(max_distance, d);
    }
  }
  auto const avoiding = max_reachable_avoiding(g, scc.giant_mask);
  json       out = {{"n", g.vertex_count()},
                    {"sizes", top},
                    {"giant_fraction", scc.giant_fraction()},
                    {"edges_leaving_giant", edges_leaving_set(g, scc.giant_mask)},
                    {"edges_entering_giant", edges_entering_set(g, scc.giant_mask)},
                    {"max_distance_to_giant", max_distance},
                    {"vertices_not_reaching_giant", unreachable_count},
                    {"max_reachable_avoiding", avoiding.max_count}};
  if (format == "json") {
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "n,size1,size2,size3,size4,size5,giant_fraction,edges_leaving_giant,edges_entering_giant,"
               "max_distance_to_giant,vertices_not_reaching_giant,max_reachable_avoiding\n";
  std::cout << g.vertex_count();
  for (std::size_t i = 0; i < 5; ++i) {
    std::cout << ',' << (i < top.size() ? std::to_string(top[i]) : std::string{});
  }
  std::cout.precision(17);
  std::cout << ',' << scc.giant_fraction() << ',' << out["edges_leaving_giant"] << ',' << out["edges_entering_giant"]
            << ',' << max_distance << ',' << unreachable_count << ',' << avoiding.max_count << '\n';
  return 0;
}

int cmd_coalesce(std::size_t n, std::size_t pairs, std::size_t t_max, std::string const &mode,
                 std::string const &meeting, std::size_t reps, std::uint64_t seed, std::string const &format,
                 bool distinct_start)
{
  WalkConfig base;
  base.mode = parse_walk_mode(mode);
  base.meeting_rule = parse_meeting_rule(meeting);
  base.t_max = t_max;
  base.pairs = std::max<std::size_t>(1, pairs / std::max<std::size_t>(reps, 1));
  base.distinct_start = distinct_start;

  std::vector<CoalescenceRecord> records;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    auto cfg = base;
    cfg.rng = {seed, rep, "walk"};
    cfg.replicate = static_cast<std::uint32_t>(rep);
    std::vector<CoalescenceRecord> part;
    if (cfg.mode == WalkMode::cyclical) {
      auto const g = sample_wcm(n, {seed, rep, "graph"});
      part = simulate_pairs(&g, n, cfg, default_workers());
    } else {
      part = simulate_pairs(nullptr, n, cfg, default_workers());
    }
    records.insert(records.end(), part.begin(), part.end());
  }
  auto const curve = hazard_curve(records, t_max);

  if (format == "csv") {
    std::cout.precision(17);
    std::cout << "k,survivors,absorbed,hazard,stderr\n";
    for (auto const &row : curve.pooled) {
      std::cout << row.k << ',' << row.at_risk << ',' << row.absorbed << ',';
      if (row.hazard) {
        std::cout << *row.hazard << ',' << *row.std_error;
      } else {
        std::cout << ',';
      }
      std::cout << '\n';
    }
    return 0;
  }
  json rows = json::array();
  for (auto const &row : curve.pooled) {
    rows.push_back({{"k", row.k},
                    {"survivors", row.at_risk},
                    {"absorbed", row.absorbed},
                    {"hazard", row.hazard ? json(*row.hazard) : json(nullptr)},
                    {"stderr", row.std_error ? json(*row.std_error) : json(nullptr)}});
  }
  json out = {{"n", n},
              {"mode", to_string(base.mode)},
              {"meeting", to_string(base.meeting_rule)},
              {"pairs", base.pairs * reps},
              {"reps", reps},
              {"seed", seed},
              {"baseline", 1.0 / (2.0 * static_cast<double>(n))},
              {"censored", curve.censored},
              {"rows", rows}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_verify(std::string const &claim, std::vector<std::size_t> n_values, std::size_t reps, std::uint64_t seed,
               std::string const &out, std::string const &format)
{
  ExperimentConfig cfg;
  cfg.claim = parse_claim(claim);
  cfg.n_values = std::move(n_values);
  cfg.replicates = reps;
  cfg.seed = seed;
  cfg.output = out;
  cfg.format = parse_format(format);
  cfg.workers = default_workers();
  auto const report = run_experiment(cfg);
  for (auto const &row : report.rows) {
    for (auto const &c : row.checks) {
      std::cout << (c.passed() ? "PASS " : "FAIL ") << claim << " N=" << row.n << ' ' << c.name << " = " << c.value
                << " in [" << c.lo << ", " << c.hi << "]\n";
    }
  }
  for (auto const &c : report.checks) {
    std::cout << (c.passed() ? "PASS " : "FAIL ") << claim << ' ' << c.name << " = " << c.value << " in [" << c.lo
              << ", " << c.hi << "]\n";
  }
  return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Cyclical pedigree digraphs: generation, component structure and coalescence"};
  app.require_subcommand(1);

  std::size_t   n = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  std::string   model = "wcm";
  std::string   out;
  auto         *gen = app.add_subcommand("generate", "Sample a graph and write it as an edge list");
  gen->add_option("--n", n, "Number of vertices")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--replicate", replicate, "Replicate index of the random stream");
  gen->add_option("--model", model, "wcm or dcm-multinomial")->check(CLI::IsMember({"wcm", "dcm-multinomial"}));
  gen->add_option("--out", out, "Output path ('-' for stdout)");

  std::string graph_path;
  std::string weights = "squared";
  double      k_bound = 10.0;
  std::string delta_rule = "log_n";
  auto       *stats = app.add_subcommand("stats", "Degree statistics");
  stats->require_subcommand(1);
  auto *indegree = stats->add_subcommand("indegree", "Empirical in-degree law against Poisson(2)");
  indegree->add_option("--graph", graph_path, "Edge-list file")->required()->check(CLI::ExistingFile);
  indegree->add_option("--weights", weights, "Weight sequence")->check(CLI::IsMember({"squared"}));
  indegree->add_option("--k-bound", k_bound, "Second-moment bound");
  indegree->add_option("--delta-rule", delta_rule, "log_n or paper_c2")
    ->check(CLI::IsMember({"log_n", "paper_c2"}));

  double tol = 1e-12;
  auto  *fp = app.add_subcommand("fixedpoint", "Poisson(2) survival probability and derived constant");
  fp->add_option("--tol", tol, "Bisection tolerance")->check(CLI::PositiveNumber);

  std::string format = "json";
  auto       *scc = app.add_subcommand("scc", "Strongly connected component structure of a graph");
  scc->add_option("--graph", graph_path, "Edge-list file")->required()->check(CLI::ExistingFile);
  scc->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::size_t pairs = 200'000;
  std::size_t t_max = 100;
  std::string mode = "cyclical";
  std::string meeting = "bernoulli";
  std::size_t reps = 1;
  bool        distinct_start = false;
  auto       *co = app.add_subcommand("coalesce", "Coalescence hazard of lineage pairs");
  co->add_option("--n", n, "Population size")->required()->check(CLI::PositiveNumber);
  co->add_option("--pairs", pairs, "Total pairs, split evenly across replicates")->check(CLI::PositiveNumber);
  co->add_option("--tmax", t_max, "Generation horizon")->check(CLI::PositiveNumber);
  co->add_option("--mode", mode, "cyclical or independent")->check(CLI::IsMember({"cyclical", "independent"}));
  co->add_option("--meeting", meeting, "bernoulli or independent-edges")
    ->check(CLI::IsMember({"bernoulli", "independent-edges"}));
  co->add_option("--reps", reps, "Pedigree replicates")->check(CLI::PositiveNumber);
  co->add_option("--seed", seed, "Random seed");
  co->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  co->add_flag("--distinct-start", distinct_start, "Start the two lineages in different individuals");

  std::string              claim;
  std::vector<std::size_t> n_values;
  auto                    *verify = app.add_subcommand("verify", "Run a claim's experiment and check its bounds");
  verify->add_option("claim", claim, "Claim name")->required()->check(CLI::IsMember(claim_names()));
  verify->add_option("--n", n_values, "Population sizes, ascending")->required()->delimiter(',');
  verify->add_option("--reps", reps, "Replicates")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--out", out, "Report path");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      return cmd_generate(n, seed, replicate, model, out);
    }
    if (*indegree) {
      return cmd_indegree(graph_path, weights, k_bound, delta_rule);
    }
    if (*fp) {
      return cmd_fixedpoint(tol);
    }
    if (*scc) {
      return cmd_scc(graph_path, format);
    }
    if (*co) {
      return cmd_coalesce(n, pairs, t_max, mode, meeting, reps, seed, format, distinct_start);
    }
    if (*verify) {
      return cmd_verify(claim, n_values, reps, seed, out, format);
    }
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
