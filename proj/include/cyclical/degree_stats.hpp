#pragma once

#include "cyclical/graph.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace cyclical {

/// Distribution of the in-degree of a uniformly chosen vertex.
struct EmpiricalInDegree
{
  std::size_t              n = 0;
  std::vector<std::size_t> counts;  ///< counts[k] = #{i : in-degree of i is k}
  std::vector<double>      xi;      ///< counts[k] / n, up to the max observed degree

  double mass() const;
  double mean() const;
  double second_moment() const;
};

EmpiricalInDegree empirical_in_degree(Digraph const &g);
EmpiricalInDegree empirical_in_degree(DegreeSequence const &d);

/// e^-2 2^k / k!
double poisson2_pmf(std::size_t k);

/// Positive nondecreasing weights k -> l_k used by weighted_distance.
class WeightSequence
{
public:
  explicit WeightSequence(std::function<double(std::size_t)> weight);

  /// l_k = (k+1)^2
  static WeightSequence squared();
  static WeightSequence constant(double c);

  double operator()(std::size_t k) const { return weight_(k); }

  /// Checks positivity and monotonicity on [0, k_max].
  bool valid_up_to(std::size_t k_max) const;

private:
  std::function<double(std::size_t)> weight_;
};

/// sum_k l_k |xi_k - P2_k| with xi_k = 0 past the stored support. The Poisson
/// tail is summed until a term drops below 1e-15.
double weighted_distance(EmpiricalInDegree const &xi, WeightSequence const &weights);
double weighted_distance(std::vector<double> const &xi, WeightSequence const &weights);

std::size_t max_degree(DegreeSequence const &d);

enum class DeltaRule
{
  paper_c2,  ///< Delta <= N^(1/12) / log N; asymptotic only
  log_n,     ///< Delta <= log N
};

DeltaRule   parse_delta_rule(std::string const &name);
std::string to_string(DeltaRule r);

struct ProperReport
{
  double      second_moment = 0;  ///< sum_k k^2 xi_k
  double      k_bound = 0;
  bool        second_moment_ok = false;
  std::size_t max_degree = 0;
  DeltaRule   rule = DeltaRule::log_n;
  double      delta_bound = 0;
  bool        max_degree_ok = false;

  bool proper() const { return second_moment_ok && max_degree_ok; }
};

/// Second-moment bound and maximal-degree bound for a degree sequence with
/// constant out-degree 2.
ProperReport check_proper(DegreeSequence const &d, double k_bound = 10.0, DeltaRule rule = DeltaRule::log_n);

} // namespace cyclical
