#include "cyclical/branching.hpp"

#include <cmath>
#include <string>

namespace cyclical {

OffspringPmf OffspringPmf::poisson2()
{
  OffspringPmf p;
  p.analytic_ = true;
  return p;
}

OffspringPmf OffspringPmf::finite(std::vector<double> pmf)
{
  double total = 0;
  for (auto v : pmf) {
    if (!(v >= 0)) {
      throw DomainError("offspring pmf has a negative or NaN entry");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("offspring pmf sums to " + std::to_string(total) + ", not 1");
  }
  OffspringPmf p;
  p.pmf_ = std::move(pmf);
  return p;
}

OffspringPmf OffspringPmf::from_in_degrees(EmpiricalInDegree const &xi) { return finite(xi.xi); }

double OffspringPmf::mean() const
{
  if (analytic_) {
    return 2.0;
  }
  double m = 0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    m += static_cast<double>(k) * pmf_[k];
  }
  return m;
}

double OffspringPmf::p0() const
{
  if (analytic_) {
    return std::exp(-2.0);
  }
  return pmf_.empty() ? 0.0 : pmf_[0];
}

double OffspringPmf::pgf(double x) const
{
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("pgf argument must lie in [0, 1]");
  }
  if (analytic_) {
    return std::exp(2.0 * x - 2.0);
  }
  double acc = 0;
  for (auto it = pmf_.rbegin(); it != pmf_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

double pgf(OffspringPmf const &pmf, double x) { return pmf.pgf(x); }

SurvivalResult survival_probability(OffspringPmf const &pmf, double tol)
{
  if (pmf.mean() <= 1.0) {
    throw DomainError("no root in (0,1): offspring mean " + std::to_string(pmf.mean()) + " is not above 1");
  }
  if (pmf.p0() <= 0.0) {
    throw DomainError("no root in (0,1): p0 = 0, extinction is impossible");
  }
  auto g = [&](double y) { return pmf.pgf(y) - y; };
  // g > 0 near 0 (p0 > 0) and g < 0 just below 1 (mean > 1).
  double lo = tol, hi = 1.0 - tol;
  if (!(g(lo) > 0 && g(hi) < 0)) {
    throw DomainError("no root in (0,1): no sign change on [tol, 1 - tol]");
  }
  while (hi - lo > tol) {
    double const mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  double const y = 0.5 * (lo + hi);
  return {1.0 - y, std::abs(g(y))};
}

double second_scc_constant(double x_star)
{
  if (!(x_star > 0.5 && x_star < 1.0)) {
    throw DomainError("second_scc_constant needs x* in (1/2, 1)");
  }
  return 2.0 / -std::log(4.0 * x_star * (1.0 - x_star));
}

double path_length_bound(std::size_t n)
{
  if (n < 3) {
    throw DomainError("path_length_bound needs n >= 3");
  }
  return std::log(std::log(static_cast<double>(n))) / std::log(2.0);
}

} // namespace cyclical
