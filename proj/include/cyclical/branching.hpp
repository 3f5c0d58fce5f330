#pragma once

#include "cyclical/degree_stats.hpp"

#include <cstddef>
#include <vector>

namespace cyclical {

/// Offspring law of a Galton-Watson process. Either the analytic Poisson(2)
/// law or a finitely supported pmf (for example an empirical in-degree law).
class OffspringPmf
{
public:
  static OffspringPmf poisson2();
  /// Throws DomainError unless the entries are nonnegative and sum to 1
  /// within 1e-12.
  static OffspringPmf finite(std::vector<double> pmf);
  static OffspringPmf from_in_degrees(EmpiricalInDegree const &xi);

  bool   analytic() const { return analytic_; }
  double mean() const;
  double p0() const;
  /// Generating function sum_k p_k x^k for x in [0, 1]; Horner's scheme for
  /// finite pmfs, e^(2x-2) for Poisson(2).
  double pgf(double x) const;

private:
  bool                analytic_ = false;
  std::vector<double> pmf_;
};

double pgf(OffspringPmf const &pmf, double x);

struct SurvivalResult
{
  double x_star;    ///< survival probability
  double residual;  ///< |f(1 - x*) - (1 - x*)|
};

/// Survival probability x* of a supercritical process with p0 > 0. The
/// extinction probability 1 - x* is found by bisection of f(y) - y on
/// [tol, 1 - tol] to absolute tolerance tol.
SurvivalResult survival_probability(OffspringPmf const &pmf, double tol = 1e-12);

/// 2 / -log(4 x (1 - x)), the logarithmic coefficient bounding the
/// non-giant part of the graph. Requires x in (1/2, 1).
double second_scc_constant(double x_star);

/// log(log n) / log 2. Requires n >= 3.
double path_length_bound(std::size_t n);

} // namespace cyclical
