#pragma once

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cyclical {

enum class Claim
{
  giant,
  second_scc,
  paths,
  domain,
  out_edges,
  in_edges,
  indegree,
  equivalence,
  hazard,
  stationary,
};

enum class Format
{
  json,
  csv,
};

Claim                    parse_claim(std::string const &name);
std::string              to_string(Claim c);
std::vector<std::string> claim_names();
Format                   parse_format(std::string const &name);

struct ExperimentConfig
{
  Claim                    claim = Claim::giant;
  std::vector<std::size_t> n_values;
  std::size_t              replicates = 1;
  std::uint64_t            seed = 0;
  std::string              output;  ///< empty: no file written
  Format                   format = Format::json;
  std::size_t              workers = 1;

  std::size_t equivalence_samples = 1'000'000;  ///< per sampler
  std::size_t hazard_pairs = 200'000;           ///< in total, split across pedigrees
  std::size_t hazard_t_max = 100;
  double      stationary_tol = 1e-10;
};

/// Worker count from CYCLICAL_WORKERS, else the available parallelism.
std::size_t default_workers();

/// One acceptance bound: passes iff lo <= value <= hi.
struct Check
{
  std::string name;
  double      value = 0;
  double      lo = 0;
  double      hi = 0;

  bool passed() const { return value >= lo && value <= hi; }
};

struct ClaimRow
{
  std::size_t         n = 0;
  std::size_t         replicates = 0;
  double              estimate = 0;
  double              std_error = 0;
  double              target = 0;
  std::vector<double> values;  ///< one statistic per replicate
  std::vector<Check>  checks;
  double              wall_clock_s = 0;

  bool passed() const;
};

struct ClaimReport
{
  static constexpr int schema = 1;

  Claim                 claim = Claim::giant;
  std::uint64_t         seed = 0;
  std::vector<ClaimRow> rows;
  std::vector<Check>    checks;  ///< bounds that compare rows

  bool passed() const;
};

/// Generates graphs and statistics for every N and replicate, then compares
/// them with the claim's acceptance bounds. Writes cfg.output if set.
ClaimReport run_experiment(ExperimentConfig const &cfg);

nlohmann::json to_json(ClaimReport const &report, bool include_timing = true);
std::string    to_csv(ClaimReport const &report);
/// Writes via a temporary file and rename.
void write_report(ClaimReport const &report, std::string const &path, Format format);

struct SummaryRow
{
  Claim       claim;
  std::size_t n;
  double      estimate;
  double      std_error;
  double      target;
  bool        passed;
};

/// One row per (claim, N); throws on duplicate keys.
std::vector<SummaryRow> summarize(std::vector<ClaimReport> const &reports);
std::string             summary_csv(std::vector<SummaryRow> const &rows);
nlohmann::json          summary_json(std::vector<SummaryRow> const &rows);

/// Runs body(i) for i in [0, count) on up to `workers` threads. The first
/// exception is rethrown after all threads finish.
void parallel_for(std::size_t count, std::size_t workers, std::function<void(std::size_t)> const &body);

/// The Poisson(2) survival probability at tolerance 1e-12.
double poisson2_survival();

} // namespace cyclical
