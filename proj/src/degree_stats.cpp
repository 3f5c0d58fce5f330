#include "cyclical/degree_stats.hpp"

#include <algorithm>
#include <cmath>

namespace cyclical {

double EmpiricalInDegree::mass() const
{
  double s = 0;
  for (auto x : xi) {
    s += x;
  }
  return s;
}

double EmpiricalInDegree::mean() const
{
  std::size_t total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    total += k * counts[k];
  }
  return static_cast<double>(total) / static_cast<double>(n);
}

double EmpiricalInDegree::second_moment() const
{
  std::size_t total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    total += k * k * counts[k];
  }
  return static_cast<double>(total) / static_cast<double>(n);
}

EmpiricalInDegree empirical_in_degree(DegreeSequence const &d)
{
  EmpiricalInDegree e;
  e.n = d.vertex_count();
  auto const top = d.in_deg.empty() ? 0 : *std::max_element(d.in_deg.begin(), d.in_deg.end());
  e.counts.assign(top + 1, 0);
  for (auto k : d.in_deg) {
    ++e.counts[k];
  }
  e.xi.resize(e.counts.size());
  for (std::size_t k = 0; k < e.counts.size(); ++k) {
    e.xi[k] = e.n == 0 ? 0.0 : static_cast<double>(e.counts[k]) / static_cast<double>(e.n);
  }
  return e;
}

EmpiricalInDegree empirical_in_degree(Digraph const &g) { return empirical_in_degree(degree_sequence(g)); }

double poisson2_pmf(std::size_t k)
{
  auto const kd = static_cast<double>(k);
  return std::exp(-2.0 + kd * std::log(2.0) - std::lgamma(kd + 1.0));
}

WeightSequence::WeightSequence(std::function<double(std::size_t)> weight)
  : weight_(std::move(weight))
{
}

WeightSequence WeightSequence::squared()
{
  return WeightSequence([](std::size_t k) {
    auto const w = static_cast<double>(k + 1);
    return w * w;
  });
}

WeightSequence WeightSequence::constant(double c)
{
  return WeightSequence([c](std::size_t) { return c; });
}

bool WeightSequence::valid_up_to(std::size_t k_max) const
{
  double prev = 0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    auto const w = weight_(k);
    if (!(w > 0) || w < prev) {
      return false;
    }
    prev = w;
  }
  return true;
}

double weighted_distance(std::vector<double> const &xi, WeightSequence const &weights)
{
  double total = 0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    total += weights(k) * std::abs(xi[k] - poisson2_pmf(k));
  }
  // Tail where xi vanishes; past the Poisson mode the terms decay super-exponentially.
  for (std::size_t k = xi.size();; ++k) {
    auto const term = weights(k) * poisson2_pmf(k);
    total += term;
    if (k > 2 && term < 1e-15) {
      break;
    }
  }
  return total;
}

double weighted_distance(EmpiricalInDegree const &xi, WeightSequence const &weights)
{
  return weighted_distance(xi.xi, weights);
}

std::size_t max_degree(DegreeSequence const &d)
{
  std::size_t m = 0;
  for (auto k : d.in_deg) {
    m = std::max(m, k);
  }
  for (auto k : d.out_deg) {
    m = std::max(m, k);
  }
  return m;
}

DeltaRule parse_delta_rule(std::string const &name)
{
  if (name == "paper_c2" || name == "paper-c2") {
    return DeltaRule::paper_c2;
  }
  if (name == "log_n" || name == "log-n") {
    return DeltaRule::log_n;
  }
  throw std::invalid_argument("unknown delta rule '" + name + "'");
}

std::string to_string(DeltaRule r) { return r == DeltaRule::paper_c2 ? "paper_c2" : "log_n"; }

ProperReport check_proper(DegreeSequence const &d, double k_bound, DeltaRule rule)
{
  if (std::any_of(d.out_deg.begin(), d.out_deg.end(), [](std::size_t k) { return k != 2; })) {
    throw ContractError("check_proper requires out-degree 2 at every vertex");
  }
  ProperReport r;
  auto const   xi = empirical_in_degree(d);
  r.second_moment = xi.second_moment();
  r.k_bound = k_bound;
  r.second_moment_ok = r.second_moment <= k_bound;
  r.max_degree = max_degree(d);
  r.rule = rule;
  auto const n = static_cast<double>(d.vertex_count());
  r.delta_bound = rule == DeltaRule::log_n ? std::log(n) : std::pow(n, 1.0 / 12.0) / std::log(n);
  r.max_degree_ok = static_cast<double>(r.max_degree) <= r.delta_bound;
  return r;
}

} // namespace cyclical
