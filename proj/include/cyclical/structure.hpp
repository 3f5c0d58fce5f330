#pragma once

#include "cyclical/graph.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cyclical {

using VertexMask = std::vector<bool>;

/// Strongly connected components. Component ids are ranked by size
/// (descending), then by number of internal edges (descending, so a looped
/// singleton outranks a bare one), then by smallest contained vertex. Id 0 is
/// the giant; sizes[c] is the size of component c.
struct SccReport
{
  std::size_t              n = 0;
  std::vector<std::size_t> component_id;
  std::vector<std::size_t> sizes;
  VertexMask               giant_mask;

  std::size_t component_count() const { return sizes.size(); }
  std::size_t giant_size() const { return sizes.empty() ? 0 : sizes[0]; }
  std::size_t second_size() const { return sizes.size() < 2 ? 0 : sizes[1]; }
  double      giant_fraction() const { return n == 0 ? 0.0 : static_cast<double>(giant_size()) / static_cast<double>(n); }
};

/// Iterative Tarjan, O(N + M), no recursion.
SccReport scc_decompose(Digraph const &g);

enum class Direction
{
  forward,   ///< fan-out: vertices reachable from the root
  backward,  ///< fan-in: vertices that reach the root
};

struct FanReport
{
  Vertex      root = 0;
  Direction   direction = Direction::forward;
  std::size_t vertex_count = 0;
  /// Edges scanned by the exploration. For a complete exploration these are
  /// exactly the edges with both ends in the fan.
  std::size_t edge_count = 0;
  /// Scanned edges whose far end had already been discovered.
  std::size_t revisit_steps = 0;
  bool        complete = true;
};

/// Breadth-first fan of v. With max_steps set, stops after that many edge
/// scans and reports complete = false if edges were left unscanned.
FanReport fan(Digraph const &g, Vertex v, Direction direction,
              std::optional<std::size_t> max_steps = std::nullopt);

inline constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

/// Length of a shortest directed path from v into the masked set; 0 when v is
/// masked, nullopt when the set cannot be reached.
std::optional<std::size_t> distance_to_set(Digraph const &g, Vertex v, VertexMask const &target);

/// distance_to_set for every vertex at once (one reverse multi-source BFS);
/// `unreachable` marks vertices with no path into the set.
std::vector<std::size_t> distances_to_set(Digraph const &g, VertexMask const &target);

/// Size of the forward closure of v that never enters a forbidden vertex.
std::size_t reachable_avoiding(Digraph const &g, Vertex v, VertexMask const &forbidden);

struct AvoidingMaximum
{
  std::size_t max_count = 0;
  Vertex      argmax = 0;
};

/// Maximum of reachable_avoiding over all non-forbidden vertices.
AvoidingMaximum max_reachable_avoiding(Digraph const &g, VertexMask const &forbidden);

std::size_t edges_leaving_set(Digraph const &g, VertexMask const &mask);
std::size_t edges_entering_set(Digraph const &g, VertexMask const &mask);

/// Classification of every vertex's fan-in by its edge count.
struct DichotomySummary
{
  std::size_t threshold = 0;
  std::size_t small_count = 0;
  std::size_t large_count = 0;
  double      small_fraction = 0;
  double      large_fraction = 0;
  double      large_mean_over_n = 0;  ///< mean large-side edge count divided by N
  std::size_t max_small = 0;
  std::size_t min_large = 0;
  /// Fans whose edge count falls in [threshold, N/2].
  std::size_t in_gap = 0;
};

DichotomySummary fan_dichotomy_histogram(Digraph const &g, std::size_t threshold);

std::string to_string(Direction d);
Direction   parse_direction(std::string const &name);

} // namespace cyclical
