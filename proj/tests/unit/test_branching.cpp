#include "doctest.h"

#include "cyclical/branching.hpp"
#include "cyclical/generate.hpp"

#include <cmath>

using namespace cyclical;

namespace {

// Functional iteration y <- e^(2y - 2) from 0.5; converges since the map is a
// contraction near its lower fixed point (derivative 2y < 1).
double iterated_extinction()
{
  double y = 0.5;
  for (int i = 0; i < 10000; ++i) {
    double const next = std::exp(2.0 * y - 2.0);
    if (next == y) {
      break;
    }
    y = next;
  }
  return y;
}

} // namespace

TEST_CASE("pgf of Poisson(2)")
{
  auto const p = OffspringPmf::poisson2();
  CHECK(pgf(p, 1.0) == 1.0);
  CHECK(pgf(p, 0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(pgf(p, 0.5) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK_THROWS_AS(pgf(p, 1.5), DomainError);
  CHECK_THROWS_AS(pgf(p, -0.1), DomainError);
}

TEST_CASE("pgf is monotone and convex")
{
  std::vector<OffspringPmf> laws{OffspringPmf::poisson2(), OffspringPmf::finite({0.2, 0.3, 0.1, 0.4}),
                                 OffspringPmf::from_in_degrees(empirical_in_degree(sample_wcm(1000, {1, 0, "b"})))};
  for (auto const &law : laws) {
    std::vector<double> f;
    for (int i = 0; i <= 10; ++i) {
      f.push_back(law.pgf(i / 10.0));
    }
    for (int i = 1; i <= 10; ++i) {
      CHECK(f[i] >= f[i - 1]);
    }
    for (int i = 1; i < 10; ++i) {
      CHECK(f[i + 1] - 2.0 * f[i] + f[i - 1] >= -1e-15);
    }
  }
}

TEST_CASE("finite pmf validation")
{
  CHECK_THROWS_AS(OffspringPmf::finite({0.5, 0.4}), DomainError);
  CHECK_THROWS_AS(OffspringPmf::finite({1.2, -0.2}), DomainError);
  CHECK(OffspringPmf::finite({0.25, 0.5, 0.25}).mean() == doctest::Approx(1.0));
}

TEST_CASE("survival_probability of Poisson(2)")
{
  auto const r = survival_probability(OffspringPmf::poisson2(), 1e-12);
  CHECK(std::round(r.x_star * 1000.0) / 1000.0 == doctest::Approx(0.797));
  CHECK(r.residual <= 2e-12);
  double const oracle = 1.0 - iterated_extinction();
  CHECK(std::abs(r.x_star - oracle) < 1e-10);

  auto const coarse = survival_probability(OffspringPmf::poisson2(), 1e-6);
  CHECK(coarse.residual <= 2e-6);
  CHECK(std::abs(coarse.x_star - oracle) <= 10 * 1e-6);
}

TEST_CASE("survival_probability domain errors")
{
  CHECK_THROWS_AS(survival_probability(OffspringPmf::finite({0.0, 0.0, 1.0})), DomainError);
  CHECK_THROWS_AS(survival_probability(OffspringPmf::finite({0.5, 0.0, 0.5})), DomainError);
  CHECK_THROWS_AS(survival_probability(OffspringPmf::finite({0.6, 0.2, 0.2})), DomainError);
}

TEST_CASE("survival_probability of a finite law matches its quadratic root")
{
  // f(y) = 0.25 + 0.25 y + 0.5 y^2; fixed points 1 and 0.5.
  auto const r = survival_probability(OffspringPmf::finite({0.25, 0.25, 0.5}), 1e-12);
  CHECK(r.x_star == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("empirical fixed point converges to the Poisson(2) value")
{
  double const x_star = survival_probability(OffspringPmf::poisson2()).x_star;
  int          close = 0;
  for (std::uint64_t rep = 0; rep < 30; ++rep) {
    auto const xi = empirical_in_degree(sample_wcm(100000, {2, rep, "emp"}));
    auto const xn = survival_probability(OffspringPmf::from_in_degrees(xi)).x_star;
    close += std::abs(xn - x_star) <= 0.02;
  }
  CHECK(close >= 27);
}

TEST_CASE("second_scc_constant")
{
  CHECK(second_scc_constant(0.75) == doctest::Approx(2.0 / -std::log(0.75)));
  CHECK(second_scc_constant(0.75) == doctest::Approx(6.952).epsilon(1e-3));
  double const x = survival_probability(OffspringPmf::poisson2()).x_star;
  CHECK(second_scc_constant(x) == doctest::Approx(4.60).epsilon(1e-3));
  CHECK_THROWS_AS(second_scc_constant(0.5), DomainError);
  CHECK_THROWS_AS(second_scc_constant(1.0), DomainError);
}

TEST_CASE("path_length_bound")
{
  CHECK(path_length_bound(16) == doctest::Approx(std::log(std::log(16.0)) / std::log(2.0)));
  CHECK(path_length_bound(16) == doctest::Approx(1.47).epsilon(1e-2));
  CHECK(path_length_bound(100000) == doctest::Approx(3.52).epsilon(1e-2));
  CHECK_THROWS_AS(path_length_bound(2), DomainError);
}
