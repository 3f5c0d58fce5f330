#include "cyclical/walks.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

namespace cyclical {

namespace {

constexpr std::size_t pairs_per_block = 4096;

class PairWalker
{
public:
  PairWalker(Digraph const *g, std::size_t n, WalkConfig const &cfg, Rng &rng)
    : g_(g)
    , n_(n)
    , cfg_(cfg)
    , rng_(rng)
  {
  }

  CoalescenceRecord run(Vertex a, Vertex b)
  {
    // Two lineages that start in one individual are its two distinct gene copies.
    bool forced_distinct = cfg_.meeting_rule == MeetingRule::bernoulli_half && a == b;
    for (std::size_t t = 1; t <= cfg_.t_max; ++t) {
      auto const gen = static_cast<std::uint32_t>(t);
      load_parents(a, b);
      if (cfg_.meeting_rule == MeetingRule::independent_edges) {
        unsigned const sa = rng_.coin(), sb = rng_.coin();
        if (a == b && sa == sb) {
          return {gen, false, cfg_.replicate};
        }
        a = pa_[sa];
        b = pb_[sb];
        continue;
      }
      if (forced_distinct) {
        a = pa_[0];
        b = pb_[1];
      } else {
        a = pa_[rng_.coin()];
        b = pb_[rng_.coin()];
      }
      forced_distinct = false;
      if (a == b) {
        if (rng_.coin()) {
          return {gen, false, cfg_.replicate};
        }
        forced_distinct = true;
      }
    }
    return {0, true, cfg_.replicate};
  }

private:
  // Parent pairs of the two current vertices. In independent mode a shared
  // individual has one shared, freshly drawn pair.
  void load_parents(Vertex a, Vertex b)
  {
    if (cfg_.mode == WalkMode::cyclical) {
      auto const sa = g_->out_slots(a), sb = g_->out_slots(b);
      pa_[0] = sa[0], pa_[1] = sa[1];
      pb_[0] = sb[0], pb_[1] = sb[1];
      return;
    }
    pa_[0] = draw(), pa_[1] = draw();
    if (a == b) {
      pb_[0] = pa_[0], pb_[1] = pa_[1];
    } else {
      pb_[0] = draw(), pb_[1] = draw();
    }
  }

  Vertex draw() { return static_cast<Vertex>(rng_.below(n_)); }

  Digraph const    *g_;
  std::size_t       n_;
  WalkConfig const &cfg_;
  Rng              &rng_;
  Vertex            pa_[2] = {0, 0};
  Vertex            pb_[2] = {0, 0};
};

void check_walk_inputs(Digraph const *g, std::size_t n, WalkConfig const &cfg)
{
  if (cfg.pairs == 0 || cfg.t_max == 0) {
    throw ContractError("simulate_pairs: pairs and t_max must be at least 1");
  }
  if (n == 0) {
    throw ContractError("simulate_pairs: n must be at least 1");
  }
  if (cfg.distinct_start && n < 2) {
    throw ContractError("simulate_pairs: distinct starts need n >= 2");
  }
  if (cfg.mode == WalkMode::cyclical) {
    if (g == nullptr) {
      throw ContractError("simulate_pairs: cyclical mode needs a graph");
    }
    if (g->vertex_count() != n || !g->constant_out_degree(2)) {
      throw ContractError("simulate_pairs: cyclical mode needs a 2-out graph on n vertices");
    }
  }
}

} // namespace

std::vector<CoalescenceRecord> simulate_pairs(Digraph const *g, std::size_t n, WalkConfig const &cfg,
                                              std::size_t workers)
{
  check_walk_inputs(g, n, cfg);
  std::vector<CoalescenceRecord> records(cfg.pairs);
  std::size_t const              blocks = (cfg.pairs + pairs_per_block - 1) / pairs_per_block;
  std::atomic<std::size_t>       next_block{0};

  auto work = [&] {
    for (std::size_t b; (b = next_block++) < blocks;) {
      Rng        rng(RngSpec{cfg.rng.seed, cfg.rng.replicate, cfg.rng.purpose_tag + "/block" + std::to_string(b)});
      PairWalker walker(g, n, cfg, rng);
      auto const end = std::min(cfg.pairs, (b + 1) * pairs_per_block);
      for (std::size_t p = b * pairs_per_block; p < end; ++p) {
        auto const a = static_cast<Vertex>(rng.below(n));
        auto       c = static_cast<Vertex>(rng.below(cfg.distinct_start ? n - 1 : n));
        if (cfg.distinct_start && c >= a) {
          ++c;
        }
        records[p] = walker.run(a, c);
      }
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, blocks);
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back(work);
  }
  work();
  return records;
}

std::vector<CoalescenceRecord> simulate_pairs_from(Digraph const *g, std::size_t n, WalkConfig const &cfg,
                                                   Vertex start_a, Vertex start_b)
{
  check_walk_inputs(g, n, cfg);
  if (start_a >= n || start_b >= n) {
    throw ContractError("simulate_pairs_from: start vertex out of range");
  }
  Rng                            rng(cfg.rng);
  PairWalker                     walker(g, n, cfg, rng);
  std::vector<CoalescenceRecord> records(cfg.pairs);
  for (auto &r : records) {
    r = walker.run(start_a, start_b);
  }
  return records;
}

namespace {

std::vector<HazardRow> hazard_rows(std::vector<std::size_t> const &absorbed, std::size_t total)
{
  std::vector<HazardRow> rows;
  std::size_t            at_risk = total;
  for (std::size_t k = 1; k < absorbed.size(); ++k) {
    HazardRow row{k, at_risk, absorbed[k], std::nullopt, std::nullopt};
    if (at_risk > 0) {
      double const h = static_cast<double>(absorbed[k]) / static_cast<double>(at_risk);
      row.hazard = h;
      row.std_error = std::sqrt(h * (1.0 - h) / static_cast<double>(at_risk));
    }
    rows.push_back(row);
    at_risk -= absorbed[k];
  }
  return rows;
}

} // namespace

HazardCurve hazard_curve(std::vector<CoalescenceRecord> const &records, std::size_t t_max)
{
  HazardCurve                                   curve;
  std::vector<std::size_t>                      pooled(t_max + 1, 0);
  std::map<std::uint32_t, std::vector<std::size_t>> by_rep;
  std::map<std::uint32_t, std::size_t>          rep_total;
  for (auto const &r : records) {
    auto &rep = by_rep[r.replicate];
    rep.resize(t_max + 1, 0);
    ++rep_total[r.replicate];
    if (r.censored) {
      ++curve.censored;
      continue;
    }
    if (r.generation == 0 || r.generation > t_max) {
      throw ContractError("hazard_curve: absorption generation " + std::to_string(r.generation) +
                          " outside [1, t_max]");
    }
    ++pooled[r.generation];
    ++rep[r.generation];
  }
  curve.pooled = hazard_rows(pooled, records.size());
  for (auto const &[rep, counts] : by_rep) {
    curve.per_replicate.emplace_back(rep, hazard_rows(counts, rep_total[rep]));
  }
  return curve;
}

std::optional<double> mean_hazard(HazardCurve const &curve, std::size_t k_lo, std::size_t k_hi)
{
  double      total = 0;
  std::size_t count = 0;
  for (auto const &row : curve.pooled) {
    if (row.k >= k_lo && row.k <= k_hi && row.hazard) {
      total += *row.hazard;
      ++count;
    }
  }
  if (count == 0) {
    return std::nullopt;
  }
  return total / static_cast<double>(count);
}

NoConvergence::NoConvergence(std::size_t iterations, double last_residual)
  : std::runtime_error("stationary distribution did not converge after " + std::to_string(iterations) +
                       " iterations (last change " + std::to_string(last_residual) +
                       "); the chain may be periodic, try damping")
  , last_residual_(last_residual)
{
}

StationaryDistribution stationary_distribution(Digraph const &g, double tol, std::size_t max_iters, double damping)
{
  if (!g.constant_out_degree(2)) {
    throw ContractError("stationary_distribution requires out-degree 2 at every vertex");
  }
  if (!(damping >= 0.0 && damping < 1.0)) {
    throw ContractError("stationary_distribution: damping must lie in [0, 1)");
  }
  auto const n = static_cast<Eigen::Index>(g.vertex_count());
  if (n == 0) {
    throw ContractError("stationary_distribution: empty graph");
  }

  // Column-stochastic transpose of the transition matrix: pi' = T pi.
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(g.edge_count());
  for (auto const &e : g.edges()) {
    triplets.emplace_back(e.target, e.source, 0.5);
  }
  Eigen::SparseMatrix<double> transpose(n, n);
  transpose.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd next(n);
  double          change = 0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    next = (1.0 - damping) * (transpose * pi) + damping * pi;
    change = 0.5 * (next - pi).lpNorm<1>();
    pi.swap(next);
    if (change <= tol) {
      pi /= pi.sum();
      StationaryDistribution out;
      out.residual = 0.5 * (transpose * pi - pi).lpNorm<1>();
      out.probability = std::move(pi);
      out.iterations = it;
      return out;
    }
  }
  throw NoConvergence(max_iters, change);
}

WalkMode parse_walk_mode(std::string const &name)
{
  if (name == "cyclical") {
    return WalkMode::cyclical;
  }
  if (name == "independent") {
    return WalkMode::independent;
  }
  throw std::invalid_argument("unknown walk mode '" + name + "'");
}

MeetingRule parse_meeting_rule(std::string const &name)
{
  if (name == "bernoulli" || name == "bernoulli_half") {
    return MeetingRule::bernoulli_half;
  }
  if (name == "independent-edges" || name == "independent_edges") {
    return MeetingRule::independent_edges;
  }
  throw std::invalid_argument("unknown meeting rule '" + name + "'");
}

std::string to_string(WalkMode m) { return m == WalkMode::cyclical ? "cyclical" : "independent"; }

std::string to_string(MeetingRule r) { return r == MeetingRule::bernoulli_half ? "bernoulli" : "independent-edges"; }

} // namespace cyclical
