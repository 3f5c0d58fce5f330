#pragma once

#include "cyclical/graph.hpp"
#include "cyclical/rng.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cyclical {

/// Cyclical-pedigree digraph: each vertex draws two parents independently and
/// uniformly from [0, n); slot 0 and slot 1 hold the two draws.
Digraph sample_wcm(std::size_t n, RngSpec const &rng);

/// Mult(2n; 1/n, ..., 1/n) counts, realized by dropping 2n balls into n bins.
std::vector<std::size_t> sample_multinomial_indegrees(std::size_t n, RngSpec const &rng);

/// Directed configuration model: a uniform matching of out-half-edges (in
/// vertex then slot order) to in-half-edges. The matching is a Fisher-Yates
/// shuffle of the in-half-edge list paired positionally with the out list.
Digraph sample_dcm(DegreeSequence const &degrees, RngSpec const &rng);

/// sample_multinomial_indegrees followed by sample_dcm with out-degree 2. The
/// two sub-streams are derived from `rng` with suffixed tags.
Digraph sample_dcm_multinomial(std::size_t n, RngSpec const &rng);

// Overloads drawing from a caller-owned generator, for bulk sampling from one
// stream. Same algorithms and draw order as the RngSpec versions.
Digraph                  sample_wcm(std::size_t n, Rng &rng);
std::vector<std::size_t> sample_multinomial_indegrees(std::size_t n, Rng &rng);
Digraph                  sample_dcm(DegreeSequence const &degrees, Rng &rng);
Digraph                  sample_dcm_multinomial(std::size_t n, Rng &rng);

struct GraphProbability
{
  double                log_value;  ///< natural log
  std::optional<double> value;      ///< empty when below the smallest normal double
};

/// Exact probability 2^(N - n(G)) N^(-2N) that the cyclical model produces g,
/// where n(G) counts vertices with a doubled out-edge.
GraphProbability graph_probability(Digraph const &g);

/// Number of distinct 2-out multigraphs on n vertices up to slot order,
/// (n(n+1)/2)^n. Throws when the count does not fit in 64 bits.
std::uint64_t canonical_code_count(std::size_t n);

/// Canonical code of a 2-out graph that ignores slot order: each vertex's
/// sorted target pair (a <= b) maps to b(b+1)/2 + a, and the per-vertex codes
/// are read as mixed-radix digits with vertex 0 most significant.
std::uint64_t canonical_index(Digraph const &g);

/// Builds the canonical 2-out graph with the given dense index.
Digraph graph_from_canonical_index(std::size_t n, std::uint64_t index);

enum class Model
{
  wcm,
  dcm_multinomial,
};

Model       parse_model(std::string const &name);
std::string to_string(Model m);
Digraph     sample_graph(Model model, std::size_t n, RngSpec const &rng);

} // namespace cyclical
