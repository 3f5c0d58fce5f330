#include "doctest.h"
#include "fixtures.hpp"

#include "cyclical/generate.hpp"
#include "cyclical/graph.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

using namespace cyclical;

TEST_CASE("build_digraph keeps slot order and counts degrees")
{
  auto const g = fixtures::double_self_loop();
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 2);
  CHECK(g.out_degree(0) == 2);
  CHECK(g.in_degree(0) == 2);

  auto const h = build_digraph(3, {{2, 0}, {0, 1}, {2, 1}, {0, 2}});
  auto const s0 = h.out_slots(0);
  CHECK(std::vector<Vertex>(s0.begin(), s0.end()) == std::vector<Vertex>{1, 2});
  auto const s2 = h.out_slots(2);
  CHECK(std::vector<Vertex>(s2.begin(), s2.end()) == std::vector<Vertex>{0, 1});
  CHECK(h.out_degree(1) == 0);
}

TEST_CASE("build_digraph rejects out-of-range endpoints and names the edge")
{
  try {
    build_digraph(2, {{0, 1}, {0, 5}});
    FAIL("expected an error");
  } catch (ContractError const &e) {
    std::string const what = e.what();
    CHECK(what.find("endpoint out of range") != std::string::npos);
    CHECK(what.find("edge 1") != std::string::npos);
  }
}

TEST_CASE("degree_sequence")
{
  auto d = degree_sequence(fixtures::doubled_three_cycle());
  CHECK(d.in_deg == std::vector<std::size_t>{2, 2, 2});
  CHECK(d.out_deg == std::vector<std::size_t>{2, 2, 2});

  d = degree_sequence(fixtures::double_self_loop());
  CHECK(d.in_deg == std::vector<std::size_t>{2});
  CHECK(d.out_deg == std::vector<std::size_t>{2});

  d = degree_sequence(build_digraph(2, {{0, 1}, {0, 1}, {1, 1}, {1, 1}}));
  CHECK(d.in_deg == std::vector<std::size_t>{0, 4});
  CHECK(d.out_deg == std::vector<std::size_t>{2, 2});
  CHECK(d.balanced());
}

TEST_CASE("double_edge_vertex_count")
{
  CHECK(double_edge_vertex_count(fixtures::double_self_loop()) == 1);
  CHECK(double_edge_vertex_count(fixtures::doubled_three_cycle()) == 3);
  CHECK(double_edge_vertex_count(build_digraph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})) == 0);
  CHECK_THROWS_AS(double_edge_vertex_count(build_digraph(2, {{0, 1}, {1, 0}})), ContractError);
}

TEST_CASE("degree and reverse-index invariants on random graphs")
{
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    auto const n = 1 + rep * 7;
    auto const g = sample_wcm(n, {11, rep, "graph-test"});
    auto const d = degree_sequence(g);
    CHECK(d.in_total() == g.edge_count());
    CHECK(d.out_total() == g.edge_count());

    // Rebuilding edges from the in-adjacency gives the same multiset.
    std::vector<std::pair<Vertex, Vertex>> forward, rebuilt;
    for (auto const &e : g.edges()) {
      forward.emplace_back(e.source, e.target);
    }
    std::size_t in_sum = 0;
    for (Vertex v = 0; v < n; ++v) {
      in_sum += g.in_degree(v);
      CHECK(g.in_degree(v) == d.in_deg[v]);
      for (auto u : g.in_sources(v)) {
        rebuilt.emplace_back(u, v);
      }
    }
    CHECK(in_sum == g.edge_count());
    std::sort(forward.begin(), forward.end());
    std::sort(rebuilt.begin(), rebuilt.end());
    CHECK(forward == rebuilt);

    auto const doubled = double_edge_vertex_count(g);
    std::size_t distinct = 0;
    for (Vertex v = 0; v < n; ++v) {
      distinct += g.out_slots(v)[0] != g.out_slots(v)[1];
    }
    CHECK(doubled == n - distinct);
  }
}

TEST_CASE("reverse index is built once under concurrent readers")
{
  auto const               g = sample_wcm(5000, {3, 0, "graph-test"});
  std::vector<std::size_t> totals(4, 0);
  {
    std::vector<std::jthread> readers;
    for (std::size_t t = 0; t < totals.size(); ++t) {
      readers.emplace_back([&, t] {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          totals[t] += g.in_sources(v).size();
        }
      });
    }
  }
  for (auto t : totals) {
    CHECK(t == g.edge_count());
  }
}

TEST_CASE("edge-list format")
{
  auto const         g = fixtures::chain();
  std::ostringstream os;
  write_edge_list(os, g);
  CHECK(os.str() == "3 6\n0 1\n0 1\n1 2\n1 2\n2 2\n2 2\n");

  std::istringstream is(os.str());
  auto const         back = read_edge_list(is);
  CHECK(back.vertex_count() == 3);
  CHECK(std::equal(back.edges().begin(), back.edges().end(), g.edges().begin(), g.edges().end()));

  SUBCASE("edge count mismatch is rejected")
  {
    std::istringstream fewer("3 3\n0 1\n1 2\n");
    CHECK_THROWS(read_edge_list(fewer));
    std::istringstream more("2 1\n0 1\n1 0\n");
    CHECK_THROWS(read_edge_list(more));
  }
  SUBCASE("out-of-range endpoint is rejected")
  {
    std::istringstream bad("2 1\n0 2\n");
    CHECK_THROWS_AS(read_edge_list(bad), ContractError);
  }
  SUBCASE("malformed header")
  {
    std::istringstream bad("x y\n");
    CHECK_THROWS(read_edge_list(bad));
  }
}
