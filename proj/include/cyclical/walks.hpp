#pragma once

#include "cyclical/graph.hpp"
#include "cyclical/rng.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclical {

enum class WalkMode
{
  cyclical,     ///< walk on one fixed 2-out digraph
  independent,  ///< completely randomized pedigree, fresh parents every generation
};

enum class MeetingRule
{
  /// Walkers that land on the same vertex coalesce with probability 1/2;
  /// otherwise they leave by the two distinct out-slots next generation.
  bernoulli_half,
  /// Co-located walkers pick slots independently and coalesce exactly when
  /// they pick the same slot.
  independent_edges,
};

struct WalkConfig
{
  WalkMode    mode = WalkMode::cyclical;
  std::size_t pairs = 1;
  std::size_t t_max = 1;
  MeetingRule meeting_rule = MeetingRule::bernoulli_half;
  RngSpec     rng;
  /// Draw the two starting vertices without replacement.
  bool distinct_start = false;
  /// Recorded in every CoalescenceRecord.
  std::uint32_t replicate = 0;
};

struct CoalescenceRecord
{
  std::uint32_t generation = 0;  ///< 1-based absorption generation; 0 when censored
  bool          censored = false;
  std::uint32_t replicate = 0;
};

/// Simulates cfg.pairs independent lineage pairs for up to cfg.t_max
/// generations. Cyclical mode needs a 2-out graph on n vertices; independent
/// mode ignores `g`. Pairs are split into fixed blocks with their own
/// sub-streams, so output does not depend on the worker count.
std::vector<CoalescenceRecord> simulate_pairs(Digraph const *g, std::size_t n, WalkConfig const &cfg,
                                              std::size_t workers = 1);

/// Same as above with explicit starting vertices for every pair.
std::vector<CoalescenceRecord> simulate_pairs_from(Digraph const *g, std::size_t n, WalkConfig const &cfg,
                                                   Vertex start_a, Vertex start_b);

struct HazardRow
{
  std::size_t           k = 0;
  std::size_t           at_risk = 0;   ///< pairs not absorbed before generation k
  std::size_t           absorbed = 0;  ///< pairs absorbed at generation k
  std::optional<double> hazard;        ///< absorbed / at_risk; empty when at_risk = 0
  std::optional<double> std_error;
};

struct HazardCurve
{
  std::vector<HazardRow>                                     pooled;
  std::vector<std::pair<std::uint32_t, std::vector<HazardRow>>> per_replicate;
  std::size_t                                                censored = 0;
};

HazardCurve hazard_curve(std::vector<CoalescenceRecord> const &records, std::size_t t_max);

/// Mean of the defined pooled hazards for k in [k_lo, k_hi].
std::optional<double> mean_hazard(HazardCurve const &curve, std::size_t k_lo, std::size_t k_hi);

struct StationaryDistribution
{
  Eigen::VectorXd probability;
  double          residual = 0;  ///< total variation between pi P and pi
  std::size_t     iterations = 0;
};

class NoConvergence : public std::runtime_error
{
public:
  NoConvergence(std::size_t iterations, double last_residual);
  double last_residual() const { return last_residual_; }

private:
  double last_residual_;
};

/// Power iteration for the walk that takes each out-slot with probability
/// 1/2, started from the uniform distribution. Stops when successive iterates
/// differ by at most tol in total variation. `damping` mixes in the given
/// probability of staying put, which removes periodicity without changing
/// the fixed point.
StationaryDistribution stationary_distribution(Digraph const &g, double tol = 1e-10, std::size_t max_iters = 100000,
                                               double damping = 0.0);

WalkMode    parse_walk_mode(std::string const &name);
MeetingRule parse_meeting_rule(std::string const &name);
std::string to_string(WalkMode m);
std::string to_string(MeetingRule r);

} // namespace cyclical
