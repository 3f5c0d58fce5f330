#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cyclical {

double mean(std::span<double const> values);
/// Standard error of the mean (sample standard deviation / sqrt(n)); 0 for n < 2.
double standard_error(std::span<double const> values);
double median(std::vector<double> values);
double minimum(std::span<double const> values);
double maximum(std::span<double const> values);
/// Fraction of values inside [lo, hi].
double fraction_within(std::span<double const> values, double lo, double hi);

struct ChiSquareResult
{
  double      statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double      p_value = 1;
};

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, std::size_t dof);

/// Two-sample homogeneity test on histograms over the same bins; bins empty
/// in both samples are dropped.
ChiSquareResult chi_square_two_sample(std::span<std::uint64_t const> a, std::span<std::uint64_t const> b);

/// Goodness of fit of observed counts against expected probabilities.
ChiSquareResult chi_square_goodness(std::span<std::uint64_t const> observed, std::span<double const> probabilities);

} // namespace cyclical
