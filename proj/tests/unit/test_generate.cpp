#include "doctest.h"
#include "fixtures.hpp"

#include "cyclical/generate.hpp"
#include "cyclical/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

using namespace cyclical;

namespace {

bool same_edges(Digraph const &a, Digraph const &b)
{
  return a.vertex_count() == b.vertex_count() &&
         std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
}

// Exact law of the cyclical model by enumerating every parent assignment
// (U1_i, U2_i), n^(2n) equally likely outcomes, grouped by canonical graph.
std::vector<double> enumerated_wcm_law(std::size_t n)
{
  std::vector<double> law(canonical_code_count(n), 0.0);
  std::size_t         outcomes = 1;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    outcomes *= n;
  }
  for (std::size_t code = 0; code < outcomes; ++code) {
    std::vector<Edge> edges;
    std::size_t       rest = code;
    for (std::size_t slot = 0; slot < 2 * n; ++slot) {
      edges.push_back({static_cast<Vertex>(slot / 2), static_cast<Vertex>(rest % n)});
      rest /= n;
    }
    law[canonical_index(Digraph(n, edges))] += 1.0 / static_cast<double>(outcomes);
  }
  return law;
}

double within_se(double freq, double p, double samples)
{
  return std::abs(freq - p) / std::sqrt(p * (1.0 - p) / samples);
}

} // namespace

TEST_CASE("sample_wcm basics")
{
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(same_edges(sample_wcm(1, {seed, 0, "t"}), fixtures::double_self_loop()));
  }
  auto const a = sample_wcm(5, {42, 3, "t"});
  auto const b = sample_wcm(5, {42, 3, "t"});
  CHECK(same_edges(a, b));
  CHECK(a.edge_count() == 10);
  CHECK(a.constant_out_degree(2));
  CHECK_FALSE(same_edges(sample_wcm(50, {42, 3, "t"}), sample_wcm(50, {42, 4, "t"})));
  CHECK_FALSE(same_edges(sample_wcm(50, {42, 3, "t"}), sample_wcm(50, {42, 3, "u"})));
  CHECK_THROWS_AS(sample_wcm(0, {1, 0, "t"}), DomainError);
}

TEST_CASE("sample_wcm n=2: both vertices double-self-loop with probability 1/16")
{
  // Oracle: of the 16 equally likely (U1, U2) configurations exactly one has
  // every draw equal to its own vertex.
  auto const law = enumerated_wcm_law(2);
  auto const target = canonical_index(Digraph(2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}));
  REQUIRE(law[target] == doctest::Approx(1.0 / 16.0));

  constexpr std::size_t samples = 1'000'000;
  Rng                   rng(RngSpec{5, 0, "wcm-n2"});
  std::size_t           hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    hits += canonical_index(sample_wcm(2, rng)) == target;
  }
  CHECK(within_se(static_cast<double>(hits) / samples, 1.0 / 16.0, samples) < 3.0);
}

TEST_CASE("sample_multinomial_indegrees")
{
  CHECK(sample_multinomial_indegrees(1, {1, 0, "m"}) == std::vector<std::size_t>{2});
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    auto const n = 1 + rep * 13;
    auto const y = sample_multinomial_indegrees(n, {9, rep, "m"});
    CHECK(y.size() == n);
    CHECK(std::accumulate(y.begin(), y.end(), std::size_t{0}) == 2 * n);
  }

  // Binomial(4, 1/2) puts mass 1/16 at 4.
  constexpr std::size_t samples = 1'000'000;
  Rng                   rng(RngSpec{6, 0, "mult-n2"});
  std::size_t           hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    hits += sample_multinomial_indegrees(2, rng)[0] == 4;
  }
  CHECK(within_se(static_cast<double>(hits) / samples, 0.0625, samples) < 3.0);
}

TEST_CASE("sample_dcm forced matchings and contract")
{
  DegreeSequence d{{2}, {2}};
  CHECK(same_edges(sample_dcm(d, {1, 0, "d"}), fixtures::double_self_loop()));

  d = {{0, 4}, {2, 2}};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(same_edges(sample_dcm(d, {seed, 0, "d"}), Digraph(2, {{0, 1}, {0, 1}, {1, 1}, {1, 1}})));
  }
  CHECK_THROWS_AS(sample_dcm(DegreeSequence{{1, 2}, {2, 2}}, {1, 0, "d"}), ContractError);
}

TEST_CASE("sample_dcm realizes the requested in-degrees exactly")
{
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    DegreeSequence d;
    d.in_deg = sample_multinomial_indegrees(200, {4, rep, "in"});
    d.out_deg.assign(200, 2);
    auto const g = sample_dcm(d, {4, rep, "match"});
    CHECK(degree_sequence(g).in_deg == d.in_deg);
    CHECK(degree_sequence(g).out_deg == d.out_deg);
  }
}

TEST_CASE("sample_dcm in=[2,2], out=[2,2]: P{x01 = 2, x10 = 2} = 1/6")
{
  // Oracle: enumerate all 4! matchings of out-half-edges (0,0,1,1) to
  // in-half-edges (0,0,1,1).
  std::vector<int> perm{0, 1, 2, 3};
  int              favourable = 0, total = 0;
  do {
    int const in_vertex[4] = {0, 0, 1, 1};
    int const out_vertex[4] = {0, 0, 1, 1};
    int       x01 = 0, x10 = 0;
    for (int i = 0; i < 4; ++i) {
      x01 += out_vertex[i] == 0 && in_vertex[perm[i]] == 1;
      x10 += out_vertex[i] == 1 && in_vertex[perm[i]] == 0;
    }
    favourable += x01 == 2 && x10 == 2;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double const exact = static_cast<double>(favourable) / total;
  REQUIRE(exact == doctest::Approx(1.0 / 6.0));

  // The counting formula prod d-! prod d+! / (s! prod x_ij!) agrees.
  REQUIRE((2.0 * 2 * 2 * 2) / (24.0 * 2 * 2) == doctest::Approx(exact));

  DegreeSequence const  d{{2, 2}, {2, 2}};
  constexpr std::size_t samples = 1'000'000;
  Rng                   rng(RngSpec{8, 0, "dcm22"});
  std::size_t           hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    auto const g = sample_dcm(d, rng);
    auto const s0 = g.out_slots(0), s1 = g.out_slots(1);
    hits += s0[0] == 1 && s0[1] == 1 && s1[0] == 0 && s1[1] == 0;
  }
  CHECK(within_se(static_cast<double>(hits) / samples, exact, samples) < 3.0);
}

TEST_CASE("graph_probability examples")
{
  auto p = graph_probability(fixtures::double_self_loop());
  REQUIRE(p.value);
  CHECK(*p.value == 1.0);
  CHECK(p.log_value == doctest::Approx(0.0));

  p = graph_probability(Digraph(2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}));
  CHECK(*p.value == 1.0 / 16.0);

  p = graph_probability(Digraph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(*p.value == 1.0 / 4.0);

  CHECK_THROWS_AS(graph_probability(Digraph(2, {{0, 1}, {1, 0}})), ContractError);
}

TEST_CASE("graph_probability is log-domain for large N")
{
  auto const g = sample_wcm(100, {1, 0, "big"});
  auto const p = graph_probability(g);
  auto const doubled = static_cast<double>(double_edge_vertex_count(g));
  CHECK(p.log_value == doctest::Approx((100.0 - doubled) * std::log(2.0) - 200.0 * std::log(100.0)));
  CHECK_FALSE(p.value.has_value());

  auto const small = graph_probability(sample_wcm(20, {1, 0, "small"}));
  REQUIRE(small.value);
  CHECK(std::log(*small.value) == doctest::Approx(small.log_value));
}

TEST_CASE("graph_probability equals the enumerated law and sums to one")
{
  for (std::size_t n : {1u, 2u, 3u}) {
    auto const law = enumerated_wcm_law(n);
    double     total = 0;
    for (std::uint64_t c = 0; c < canonical_code_count(n); ++c) {
      auto const g = graph_from_canonical_index(n, c);
      CHECK(canonical_index(g) == c);
      auto const p = *graph_probability(g).value;
      CHECK(p == doctest::Approx(law[c]).epsilon(1e-14));
      total += p;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  CHECK(canonical_code_count(3) == 216);
}

TEST_CASE("sampler laws match the exact probability (chi-square)")
{
  constexpr std::size_t samples = 1'000'000;
  for (std::size_t n : {2u, 3u}) {
    auto const                 codes = canonical_code_count(n);
    std::vector<double>        probs(codes);
    std::vector<std::uint64_t> wcm(codes, 0), dcm(codes, 0);
    for (std::uint64_t c = 0; c < codes; ++c) {
      probs[c] = *graph_probability(graph_from_canonical_index(n, c)).value;
    }
    Rng rw(RngSpec{21, n, "chi/wcm"});
    Rng rd(RngSpec{21, n, "chi/dcm"});
    for (std::size_t i = 0; i < samples; ++i) {
      ++wcm[canonical_index(sample_wcm(n, rw))];
      ++dcm[canonical_index(sample_dcm_multinomial(n, rd))];
    }
    CAPTURE(n);
    CHECK(chi_square_goodness(wcm, probs).p_value > 0.001);
    CHECK(chi_square_goodness(dcm, probs).p_value > 0.001);
    CHECK(chi_square_two_sample(wcm, dcm).p_value > 0.001);
  }
}

TEST_CASE("model names")
{
  CHECK(parse_model("wcm") == Model::wcm);
  CHECK(parse_model("dcm-multinomial") == Model::dcm_multinomial);
  CHECK(to_string(Model::dcm_multinomial) == "dcm-multinomial");
  CHECK_THROWS(parse_model("er"));
  auto const g = sample_graph(Model::dcm_multinomial, 30, {1, 0, "g"});
  CHECK(g.constant_out_degree(2));
}
