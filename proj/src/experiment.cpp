#include "cyclical/experiment.hpp"

#include "cyclical/branching.hpp"
#include "cyclical/degree_stats.hpp"
#include "cyclical/generate.hpp"
#include "cyclical/stats.hpp"
#include "cyclical/structure.hpp"
#include "cyclical/walks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace cyclical {

namespace {

struct ClaimName
{
  Claim       claim;
  char const *name;
};

constexpr ClaimName claim_table[] = {
  {Claim::giant, "giant"},           {Claim::second_scc, "second_scc"}, {Claim::paths, "paths"},
  {Claim::domain, "domain"},         {Claim::out_edges, "out_edges"},   {Claim::in_edges, "in_edges"},
  {Claim::indegree, "indegree"},     {Claim::equivalence, "equivalence"}, {Claim::hazard, "hazard"},
  {Claim::stationary, "stationary"},
};

} // namespace

Claim parse_claim(std::string const &name)
{
  for (auto const &c : claim_table) {
    if (name == c.name) {
      return c.claim;
    }
  }
  throw std::invalid_argument("unknown claim '" + name + "'");
}

std::string to_string(Claim c)
{
  for (auto const &entry : claim_table) {
    if (entry.claim == c) {
      return entry.name;
    }
  }
  return "?";
}

std::vector<std::string> claim_names()
{
  std::vector<std::string> names;
  for (auto const &c : claim_table) {
    names.emplace_back(c.name);
  }
  return names;
}

Format parse_format(std::string const &name)
{
  if (name == "json") {
    return Format::json;
  }
  if (name == "csv") {
    return Format::csv;
  }
  throw std::invalid_argument("unknown format '" + name + "'");
}

std::size_t default_workers()
{
  if (char const *env = std::getenv("CYCLICAL_WORKERS")) {
    try {
      auto const w = std::stoul(env);
      if (w > 0) {
        return w;
      }
    } catch (std::exception const &) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t workers, std::function<void(std::size_t)> const &body)
{
  std::atomic<std::size_t> next{0};
  std::exception_ptr       error;
  std::mutex               error_mutex;
  auto                     work = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next = count;
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
      pool.emplace_back(work);
    }
    work();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

double poisson2_survival()
{
  static double const x_star = survival_probability(OffspringPmf::poisson2(), 1e-12).x_star;
  return x_star;
}

bool ClaimRow::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](Check const &c) { return c.passed(); });
}

bool ClaimReport::passed() const
{
  return std::all_of(rows.begin(), rows.end(), [](ClaimRow const &r) { return r.passed(); }) &&
         std::all_of(checks.begin(), checks.end(), [](Check const &c) { return c.passed(); });
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

RngSpec graph_stream(std::uint64_t seed, std::size_t rep) { return {seed, rep, "graph"}; }

// Evaluates `statistic` on one WCM sample per replicate, wrapping any error
// with its (claim, N, replicate) context.
std::vector<double> per_replicate(ExperimentConfig const &cfg, std::size_t n,
                                  std::function<double(Digraph const &, std::size_t)> const &statistic)
{
  std::vector<double> values(cfg.replicates);
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t rep) {
    try {
      auto const g = sample_wcm(n, graph_stream(cfg.seed, rep));
      values[rep] = statistic(g, rep);
    } catch (std::exception const &e) {
      throw std::runtime_error("claim " + to_string(cfg.claim) + ", N = " + std::to_string(n) + ", replicate " +
                               std::to_string(rep) + ": " + e.what());
    }
  });
  return values;
}

void fill_mean(ClaimRow &row)
{
  row.estimate = mean(row.values);
  row.std_error = standard_error(row.values);
}

ClaimRow giant_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow row;
  row.values = per_replicate(cfg, n, [](Digraph const &g, std::size_t) { return scc_decompose(g).giant_fraction(); });
  fill_mean(row);
  row.target = poisson2_survival();
  row.checks = {
    {"mean_giant_fraction", row.estimate, 0.787, 0.807},
    {"min_replicate_fraction", minimum(row.values), 0.77, 0.82},
    {"max_replicate_fraction", maximum(row.values), 0.77, 0.82},
  };
  return row;
}

ClaimRow second_scc_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow row;
  row.values = per_replicate(cfg, n, [](Digraph const &g, std::size_t) {
    return static_cast<double>(scc_decompose(g).second_size());
  });
  fill_mean(row);
  row.target = second_scc_constant(poisson2_survival()) * std::log(static_cast<double>(n));
  row.checks = {{"max_second_scc_size", maximum(row.values), 0.0, 2.0 * row.target}};
  return row;
}

double max_distance_to_giant(Digraph const &g, SccReport const &scc)
{
  auto const dist = distances_to_set(g, scc.giant_mask);
  std::size_t worst = 0;
  for (auto d : dist) {
    if (d != unreachable) {
      worst = std::max(worst, d);
    }
  }
  return static_cast<double>(worst);
}

ClaimRow paths_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow row;
  row.values = per_replicate(cfg, n, [](Digraph const &g, std::size_t) {
    return max_distance_to_giant(g, scc_decompose(g));
  });
  fill_mean(row);
  row.target = path_length_bound(n);
  row.checks = {
    {"max_distance_all_replicates", maximum(row.values), 0.0, 15.0},
    {"fraction_replicates_max_distance_le_10", fraction_within(row.values, 0.0, 10.0), 0.9, 1.0},
  };
  return row;
}

ClaimRow domain_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow row;
  row.values = per_replicate(cfg, n, [](Digraph const &g, std::size_t) {
    auto const scc = scc_decompose(g);
    return static_cast<double>(max_reachable_avoiding(g, scc.giant_mask).max_count);
  });
  fill_mean(row);
  row.target = second_scc_constant(poisson2_survival()) * std::log(static_cast<double>(n));
  row.checks = {{"max_reachable_avoiding_giant", maximum(row.values), 0.0, 3.0 * row.target}};
  return row;
}

ClaimRow out_edges_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow row;
  row.values = per_replicate(cfg, n, [](Digraph const &g, std::size_t) {
    return static_cast<double>(edges_leaving_set(g, scc_decompose(g).giant_mask));
  });
  fill_mean(row);
  row.target = 0;
  row.checks = {
    {"fraction_replicates_zero", fraction_within(row.values, 0.0, 0.0), 0.9, 1.0},
    {"max_edges_leaving", maximum(row.values), 0.0, 0.001 * static_cast<double>(n)},
  };
  return row;
}

ClaimRow in_edges_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow     row;
  double const x = poisson2_survival();
  double const expected = 2.0 * x * (1.0 - x) * static_cast<double>(n);
  row.values = per_replicate(cfg, n, [&](Digraph const &g, std::size_t) {
    return static_cast<double>(edges_entering_set(g, scc_decompose(g).giant_mask)) / expected;
  });
  fill_mean(row);
  row.target = 1.0;
  row.checks = {{"fraction_replicates_ratio_in_band", fraction_within(row.values, 0.85, 1.15), 0.9, 1.0}};
  return row;
}

ClaimRow indegree_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow   row;
  auto const weights = WeightSequence::squared();
  row.values = per_replicate(cfg, n, [&](Digraph const &g, std::size_t) {
    return weighted_distance(empirical_in_degree(g), weights);
  });
  row.estimate = median(row.values);
  row.std_error = standard_error(row.values);
  row.target = 0;
  return row;
}

// Both samplers over `samples` graphs each; histograms indexed by canonical code.
struct EquivalenceCounts
{
  std::vector<std::uint64_t> wcm;
  std::vector<std::uint64_t> dcm;
};

EquivalenceCounts equivalence_counts(ExperimentConfig const &cfg, std::size_t n)
{
  auto const            codes = canonical_code_count(n);
  constexpr std::size_t block = 10'000;
  std::size_t const     blocks = (cfg.equivalence_samples + block - 1) / block;
  std::vector<std::vector<std::uint64_t>> wcm(blocks), dcm(blocks);
  parallel_for(blocks, cfg.workers, [&](std::size_t b) {
    Rng  rw(RngSpec{cfg.seed, b, "equivalence/wcm"});
    Rng  rd(RngSpec{cfg.seed, b, "equivalence/dcm"});
    auto end = std::min(cfg.equivalence_samples, (b + 1) * block);
    wcm[b].assign(codes, 0);
    dcm[b].assign(codes, 0);
    for (std::size_t i = b * block; i < end; ++i) {
      ++wcm[b][canonical_index(sample_wcm(n, rw))];
      ++dcm[b][canonical_index(sample_dcm_multinomial(n, rd))];
    }
  });
  EquivalenceCounts out{std::vector<std::uint64_t>(codes, 0), std::vector<std::uint64_t>(codes, 0)};
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t c = 0; c < codes; ++c) {
      out.wcm[c] += wcm[b][c];
      out.dcm[c] += dcm[b][c];
    }
  }
  return out;
}

double max_abs_z(std::vector<std::uint64_t> const &counts, std::vector<double> const &probs, double total)
{
  double worst = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    double const expected = total * probs[c];
    double const sd = std::sqrt(total * probs[c] * (1.0 - probs[c]));
    if (sd == 0) {
      worst = counts[c] == expected ? worst : inf;
      continue;
    }
    worst = std::max(worst, std::abs(static_cast<double>(counts[c]) - expected) / sd);
  }
  return worst;
}

ClaimRow equivalence_row(ExperimentConfig const &cfg, std::size_t n)
{
  if (n > 4) {
    throw std::invalid_argument("equivalence claim enumerates all graphs; use N <= 4");
  }
  ClaimRow   row;
  auto const codes = canonical_code_count(n);
  std::vector<double> probs(codes);
  for (std::uint64_t c = 0; c < codes; ++c) {
    probs[c] = *graph_probability(graph_from_canonical_index(n, c)).value;
  }
  double const total = static_cast<double>(cfg.equivalence_samples);
  double       p_min = 1.0, z_wcm = 0, z_dcm = 0;
  for (std::size_t rep = 0; rep < cfg.replicates; ++rep) {
    auto sub = cfg;
    sub.seed = splitmix64(cfg.seed ^ rep);
    auto const counts = equivalence_counts(sub, n);
    auto const test = chi_square_two_sample(counts.wcm, counts.dcm);
    row.values.push_back(test.p_value);
    p_min = std::min(p_min, test.p_value);
    z_wcm = std::max(z_wcm, max_abs_z(counts.wcm, probs, total));
    z_dcm = std::max(z_dcm, max_abs_z(counts.dcm, probs, total));
  }
  row.estimate = p_min;
  row.target = 0.001;
  row.checks = {
    {"min_two_sample_p_value", p_min, 0.001, 1.0},
    {"max_abs_z_wcm_vs_exact", z_wcm, 0.0, 4.0},
    {"max_abs_z_dcm_vs_exact", z_dcm, 0.0, 4.0},
  };
  return row;
}

ClaimRow hazard_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow     row;
  double const baseline = 1.0 / (2.0 * static_cast<double>(n));
  double const log2n = std::log2(static_cast<double>(n));
  auto const   k_lo = static_cast<std::size_t>(std::ceil(2.0 * log2n));
  auto const   k_hi = static_cast<std::size_t>(std::floor(6.0 * log2n));
  std::size_t const per_pedigree = std::max<std::size_t>(1, cfg.hazard_pairs / cfg.replicates);

  std::vector<std::vector<CoalescenceRecord>> records(cfg.replicates);
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t rep) {
    auto const g = sample_wcm(n, graph_stream(cfg.seed, rep));
    WalkConfig wc;
    wc.mode = WalkMode::cyclical;
    wc.pairs = per_pedigree;
    wc.t_max = cfg.hazard_t_max;
    wc.rng = {cfg.seed, rep, "walk"};
    wc.replicate = static_cast<std::uint32_t>(rep);
    records[rep] = simulate_pairs(&g, n, wc);
  });
  std::vector<CoalescenceRecord> pooled;
  for (auto const &r : records) {
    auto const curve = hazard_curve(r, cfg.hazard_t_max);
    row.values.push_back(mean_hazard(curve, k_lo, k_hi).value_or(inf) / baseline);
    pooled.insert(pooled.end(), r.begin(), r.end());
  }
  auto const curve = hazard_curve(pooled, cfg.hazard_t_max);
  row.estimate = mean_hazard(curve, k_lo, k_hi).value_or(inf) / baseline;
  row.std_error = standard_error(row.values) ;
  row.target = 1.0;

  WalkConfig control;
  control.mode = WalkMode::independent;
  control.pairs = per_pedigree * cfg.replicates;
  control.t_max = cfg.hazard_t_max;
  control.rng = {cfg.seed, 0, "walk/control"};
  auto const control_curve = hazard_curve(simulate_pairs(nullptr, n, control, cfg.workers), cfg.hazard_t_max);
  double const control_ratio = mean_hazard(control_curve, k_lo, k_hi).value_or(inf) / baseline;

  row.checks = {
    {"cyclical_hazard_over_baseline", row.estimate, 0.5, 2.0},
    {"independent_hazard_over_baseline", control_ratio, 0.8, 1.25},
  };
  return row;
}

ClaimRow stationary_row(ExperimentConfig const &cfg, std::size_t n)
{
  ClaimRow            row;
  std::vector<double> residuals(cfg.replicates, inf);
  row.values = per_replicate(cfg, n, [&](Digraph const &g, std::size_t rep) {
    auto const scc = scc_decompose(g);
    try {
      auto const pi = stationary_distribution(g, cfg.stationary_tol);
      residuals[rep] = pi.residual;
      double outside = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (!scc.giant_mask[v]) {
          outside += pi.probability[static_cast<Eigen::Index>(v)];
        }
      }
      return outside;
    } catch (NoConvergence const &) {
      return 1.0;
    }
  });
  row.estimate = maximum(row.values);
  row.target = 0;
  row.checks = {
    {"max_mass_outside_giant", maximum(row.values), 0.0, 1e-8},
    {"max_balance_residual", maximum(residuals), 0.0, 1e-9},
  };
  return row;
}

ClaimRow run_row(ExperimentConfig const &cfg, std::size_t n)
{
  switch (cfg.claim) {
  case Claim::giant: return giant_row(cfg, n);
  case Claim::second_scc: return second_scc_row(cfg, n);
  case Claim::paths: return paths_row(cfg, n);
  case Claim::domain: return domain_row(cfg, n);
  case Claim::out_edges: return out_edges_row(cfg, n);
  case Claim::in_edges: return in_edges_row(cfg, n);
  case Claim::indegree: return indegree_row(cfg, n);
  case Claim::equivalence: return equivalence_row(cfg, n);
  case Claim::hazard: return hazard_row(cfg, n);
  case Claim::stationary: return stationary_row(cfg, n);
  }
  throw std::logic_error("unhandled claim");
}

// The weighted in-degree distance shrinks like N^(-1/2): the median at the
// largest N must be small, and the median ratio between the extreme Ns must
// sit within a factor 2 of sqrt(N_max / N_min).
void indegree_cross_checks(ClaimReport &report)
{
  auto const &last = report.rows.back();
  double const scale = std::sqrt(1e5 / static_cast<double>(last.n));
  report.checks.push_back({"median_distance_at_largest_n", last.estimate, 0.0, 0.3 * scale});
  if (report.rows.size() >= 2) {
    auto const  &first = report.rows.front();
    double const expected = std::sqrt(static_cast<double>(last.n) / static_cast<double>(first.n));
    double const ratio = last.estimate > 0 ? first.estimate / last.estimate : inf;
    report.checks.push_back({"median_ratio_smallest_over_largest_n", ratio, 0.5 * expected, 2.0 * expected});
  }
}

} // namespace

ClaimReport run_experiment(ExperimentConfig const &cfg)
{
  if (cfg.replicates == 0) {
    throw std::invalid_argument("replicates must be at least 1");
  }
  if (cfg.n_values.empty() || !std::is_sorted(cfg.n_values.begin(), cfg.n_values.end()) ||
      std::adjacent_find(cfg.n_values.begin(), cfg.n_values.end()) != cfg.n_values.end()) {
    throw std::invalid_argument("n values must be nonempty and strictly ascending");
  }
  if (!cfg.output.empty()) {
    auto const dir = std::filesystem::path(cfg.output).parent_path();
    if (!dir.empty() && !std::filesystem::is_directory(dir)) {
      throw std::runtime_error("output directory '" + dir.string() + "' does not exist");
    }
  }

  ClaimReport report;
  report.claim = cfg.claim;
  report.seed = cfg.seed;
  for (auto n : cfg.n_values) {
    auto const start = std::chrono::steady_clock::now();
    auto       row = run_row(cfg, n);
    row.n = n;
    row.replicates = cfg.replicates;
    row.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(std::move(row));
  }
  if (cfg.claim == Claim::indegree) {
    indegree_cross_checks(report);
  }
  if (!cfg.output.empty()) {
    write_report(report, cfg.output, cfg.format);
  }
  return report;
}

namespace {

nlohmann::json check_json(Check const &c)
{
  return {{"name", c.name}, {"value", c.value}, {"lo", c.lo}, {"hi", c.hi}, {"pass", c.passed()}};
}

} // namespace

nlohmann::json to_json(ClaimReport const &report, bool include_timing)
{
  nlohmann::json rows = nlohmann::json::array();
  for (auto const &r : report.rows) {
    nlohmann::json checks = nlohmann::json::array();
    for (auto const &c : r.checks) {
      checks.push_back(check_json(c));
    }
    nlohmann::json row = {
      {"n", r.n},
      {"replicates", r.replicates},
      {"estimate", r.estimate},
      {"stderr", r.std_error},
      {"target", r.target},
      {"values", r.values},
      {"checks", checks},
      {"pass", r.passed()},
    };
    if (include_timing) {
      row["wall_clock_s"] = r.wall_clock_s;
    }
    rows.push_back(row);
  }
  nlohmann::json cross = nlohmann::json::array();
  for (auto const &c : report.checks) {
    cross.push_back(check_json(c));
  }
  return {
    {"schema", ClaimReport::schema},
    {"claim", to_string(report.claim)},
    {"seed", report.seed},
    {"streams", {"graph", "walk", "walk/control", "equivalence/wcm", "equivalence/dcm"}},
    {"rows", rows},
    {"checks", cross},
    {"pass", report.passed()},
  };
}

std::string to_csv(ClaimReport const &report)
{
  std::ostringstream os;
  os.precision(17);
  os << "claim,n,check,value,lo,hi,pass,estimate,stderr,target,wall_clock_s\n";
  auto const claim = to_string(report.claim);
  for (auto const &r : report.rows) {
    for (auto const &c : r.checks) {
      os << claim << ',' << r.n << ',' << c.name << ',' << c.value << ',' << c.lo << ',' << c.hi << ','
         << (c.passed() ? "true" : "false") << ',' << r.estimate << ',' << r.std_error << ',' << r.target << ','
         << r.wall_clock_s << '\n';
    }
  }
  for (auto const &c : report.checks) {
    os << claim << ",," << c.name << ',' << c.value << ',' << c.lo << ',' << c.hi << ','
       << (c.passed() ? "true" : "false") << ",,,,\n";
  }
  return os.str();
}

void write_report(ClaimReport const &report, std::string const &path, Format format)
{
  auto const tmp = path + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) {
      throw std::runtime_error("cannot open '" + tmp + "' for writing");
    }
    if (format == Format::json) {
      os << to_json(report).dump(2) << '\n';
    } else {
      os << to_csv(report);
    }
    if (!os) {
      throw std::runtime_error("write failed for '" + tmp + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<SummaryRow> summarize(std::vector<ClaimReport> const &reports)
{
  std::vector<SummaryRow>                  rows;
  std::map<std::pair<int, std::size_t>, int> seen;
  for (auto const &rep : reports) {
    for (auto const &r : rep.rows) {
      auto const key = std::make_pair(static_cast<int>(rep.claim), r.n);
      if (seen[key]++ > 0) {
        throw std::invalid_argument("duplicate summary key (" + to_string(rep.claim) + ", " + std::to_string(r.n) +
                                    ")");
      }
      rows.push_back({rep.claim, r.n, r.estimate, r.std_error, r.target, r.passed() && rep.passed()});
    }
  }
  return rows;
}

std::string summary_csv(std::vector<SummaryRow> const &rows)
{
  std::ostringstream os;
  os.precision(17);
  os << "claim,n,estimate,stderr,target,pass\n";
  for (auto const &r : rows) {
    os << to_string(r.claim) << ',' << r.n << ',' << r.estimate << ',' << r.std_error << ',' << r.target << ','
       << (r.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

nlohmann::json summary_json(std::vector<SummaryRow> const &rows)
{
  nlohmann::json out = nlohmann::json::array();
  for (auto const &r : rows) {
    out.push_back({{"claim", to_string(r.claim)},
                   {"n", r.n},
                   {"estimate", r.estimate},
                   {"stderr", r.std_error},
                   {"target", r.target},
                   {"pass", r.passed}});
  }
  return out;
}

} // namespace cyclical
