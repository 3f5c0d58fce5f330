#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclical {

using Vertex = std::uint32_t;

struct Edge
{
  Vertex source;
  Vertex target;

  friend bool operator==(Edge const &, Edge const &) = default;
};

/// Thrown when a caller violates an operation's precondition.
class ContractError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown for arguments outside a function's mathematical domain.
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

struct DegreeSequence
{
  std::vector<std::size_t> in_deg;
  std::vector<std::size_t> out_deg;

  std::size_t vertex_count() const { return in_deg.size(); }
  std::size_t in_total() const;
  std::size_t out_total() const;
  /// Both vectors have equal length and equal sums.
  bool balanced() const;
};

/// Immutable directed multigraph on vertices [0, n). Loops and parallel edges
/// are allowed. Edges keep their construction order; out-edges of a vertex
/// are addressed by slot (their order among that vertex's edges).
///
/// The in-adjacency is built on first use. Copies share it.
class Digraph
{
public:
  Digraph();
  Digraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<Edge const> edges() const { return edges_; }

  std::size_t out_degree(Vertex v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::span<Vertex const> out_slots(Vertex v) const
  {
    return {out_targets_.data() + out_offsets_[v], out_degree(v)};
  }

  std::size_t in_degree(Vertex v) const;
  /// Sources of the edges pointing at v, one entry per edge.
  std::span<Vertex const> in_sources(Vertex v) const;

  /// True when every vertex has exactly `d` out-slots.
  bool constant_out_degree(std::size_t d) const;

private:
  struct Reverse;
  Reverse const &reverse() const;

  std::size_t                n_ = 0;
  std::vector<Edge>          edges_;
  std::vector<std::size_t>   out_offsets_;
  std::vector<Vertex>        out_targets_;
  std::shared_ptr<Reverse>   reverse_;
};

Digraph build_digraph(std::size_t n, std::vector<Edge> edges);

DegreeSequence degree_sequence(Digraph const &g);

/// Number of vertices whose two out-slots point at the same vertex.
/// Requires out-degree 2 everywhere.
std::size_t double_edge_vertex_count(Digraph const &g);

// Edge-list text format: "N M" header, then M lines "u v" in slot order.
void        write_edge_list(std::ostream &os, Digraph const &g);
Digraph     read_edge_list(std::istream &is);
void        save_edge_list(std::string const &path, Digraph const &g);
Digraph     load_edge_list(std::string const &path);

} // namespace cyclical
