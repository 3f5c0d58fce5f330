#include "cyclical/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cyclical {

double mean(std::span<double const> values)
{
  if (values.empty()) {
    return 0.0;
  }
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double standard_error(std::span<double const> values)
{
  auto const n = values.size();
  if (n < 2) {
    return 0.0;
  }
  auto const m = mean(values);
  double     ss = 0;
  for (auto v : values) {
    ss += (v - m) * (v - m);
  }
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

double median(std::vector<double> values)
{
  if (values.empty()) {
    return 0.0;
  }
  std::sort(values.begin(), values.end());
  auto const n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double minimum(std::span<double const> values)
{
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

double maximum(std::span<double const> values)
{
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double fraction_within(std::span<double const> values, double lo, double hi)
{
  if (values.empty()) {
    return 0.0;
  }
  auto const inside = std::count_if(values.begin(), values.end(), [&](double v) { return v >= lo && v <= hi; });
  return static_cast<double>(inside) / static_cast<double>(values.size());
}

double chi_square_sf(double statistic, std::size_t dof)
{
  if (dof == 0) {
    return 1.0;
  }
  if (!std::isfinite(statistic)) {
    return 0.0;
  }
  return boost::math::gamma_q(0.5 * static_cast<double>(dof), 0.5 * std::max(statistic, 0.0));
}

ChiSquareResult chi_square_two_sample(std::span<std::uint64_t const> a, std::span<std::uint64_t const> b)
{
  if (a.size() != b.size()) {
    throw std::invalid_argument("chi_square_two_sample: histograms differ in length");
  }
  double const total_a = std::accumulate(a.begin(), a.end(), 0.0);
  double const total_b = std::accumulate(b.begin(), b.end(), 0.0);
  if (total_a == 0 || total_b == 0) {
    throw std::invalid_argument("chi_square_two_sample: empty sample");
  }
  double const ka = std::sqrt(total_b / total_a);
  double const kb = std::sqrt(total_a / total_b);
  ChiSquareResult r;
  std::size_t     bins = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double const sum = static_cast<double>(a[i]) + static_cast<double>(b[i]);
    if (sum == 0) {
      continue;
    }
    ++bins;
    double const d = ka * static_cast<double>(a[i]) - kb * static_cast<double>(b[i]);
    r.statistic += d * d / sum;
  }
  r.degrees_of_freedom = bins == 0 ? 0 : bins - 1;
  r.p_value = chi_square_sf(r.statistic, r.degrees_of_freedom);
  return r;
}

ChiSquareResult chi_square_goodness(std::span<std::uint64_t const> observed, std::span<double const> probabilities)
{
  if (observed.size() != probabilities.size()) {
    throw std::invalid_argument("chi_square_goodness: length mismatch");
  }
  double const    total = std::accumulate(observed.begin(), observed.end(), 0.0);
  ChiSquareResult r;
  std::size_t     bins = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double const expected = total * probabilities[i];
    if (expected <= 0) {
      if (observed[i] > 0) {
        r.statistic = std::numeric_limits<double>::infinity();
      }
      continue;
    }
    ++bins;
    double const d = static_cast<double>(observed[i]) - expected;
    r.statistic += d * d / expected;
  }
  r.degrees_of_freedom = bins == 0 ? 0 : bins - 1;
  r.p_value = chi_square_sf(r.statistic, r.degrees_of_freedom);
  return r;
}

} // namespace cyclical
