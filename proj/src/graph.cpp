#include "cyclical/graph.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace cyclical {

std::size_t DegreeSequence::in_total() const
{
  return std::accumulate(in_deg.begin(), in_deg.end(), std::size_t{0});
}

std::size_t DegreeSequence::out_total() const
{
  return std::accumulate(out_deg.begin(), out_deg.end(), std::size_t{0});
}

bool DegreeSequence::balanced() const
{
  return in_deg.size() == out_deg.size() && in_total() == out_total();
}

struct Digraph::Reverse
{
  std::once_flag           once;
  std::vector<std::size_t> offsets;
  std::vector<Vertex>      sources;
};

Digraph::Digraph()
  : out_offsets_(1, 0)
  , reverse_(std::make_shared<Reverse>())
{
}

Digraph::Digraph(std::size_t n, std::vector<Edge> edges)
  : n_(n)
  , edges_(std::move(edges))
  , out_offsets_(n + 1, 0)
  , out_targets_(edges_.size())
  , reverse_(std::make_shared<Reverse>())
{
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto const &e = edges_[i];
    if (e.source >= n || e.target >= n) {
      throw ContractError("endpoint out of range: edge " + std::to_string(i) + " (" + std::to_string(e.source) +
                          ", " + std::to_string(e.target) + ") with n = " + std::to_string(n));
    }
    ++out_offsets_[e.source + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  // Stable counting sort keeps slot order equal to edge order per source.
  std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
  for (auto const &e : edges_) {
    out_targets_[cursor[e.source]++] = e.target;
  }
}

Digraph::Reverse const &Digraph::reverse() const
{
  std::call_once(reverse_->once, [this] {
    auto &r = *reverse_;
    r.offsets.assign(n_ + 1, 0);
    for (auto const &e : edges_) {
      ++r.offsets[e.target + 1];
    }
    std::partial_sum(r.offsets.begin(), r.offsets.end(), r.offsets.begin());
    r.sources.resize(edges_.size());
    std::vector<std::size_t> cursor(r.offsets.begin(), r.offsets.end() - 1);
    for (auto const &e : edges_) {
      r.sources[cursor[e.target]++] = e.source;
    }
  });
  return *reverse_;
}

std::size_t Digraph::in_degree(Vertex v) const
{
  auto const &r = reverse();
  return r.offsets[v + 1] - r.offsets[v];
}

std::span<Vertex const> Digraph::in_sources(Vertex v) const
{
  auto const &r = reverse();
  return {r.sources.data() + r.offsets[v], r.offsets[v + 1] - r.offsets[v]};
}

bool Digraph::constant_out_degree(std::size_t d) const
{
  for (std::size_t v = 0; v < n_; ++v) {
    if (out_degree(static_cast<Vertex>(v)) != d) {
      return false;
    }
  }
  return true;
}

Digraph build_digraph(std::size_t n, std::vector<Edge> edges) { return Digraph(n, std::move(edges)); }

DegreeSequence degree_sequence(Digraph const &g)
{
  DegreeSequence d;
  d.in_deg.assign(g.vertex_count(), 0);
  d.out_deg.assign(g.vertex_count(), 0);
  for (auto const &e : g.edges()) {
    ++d.out_deg[e.source];
    ++d.in_deg[e.target];
  }
  return d;
}

std::size_t double_edge_vertex_count(Digraph const &g)
{
  if (!g.constant_out_degree(2)) {
    throw ContractError("double_edge_vertex_count requires out-degree 2 at every vertex");
  }
  std::size_t count = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto const slots = g.out_slots(static_cast<Vertex>(v));
    count += slots[0] == slots[1];
  }
  return count;
}

void write_edge_list(std::ostream &os, Digraph const &g)
{
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto const &e : g.edges()) {
    os << e.source << ' ' << e.target << '\n';
  }
}

Digraph read_edge_list(std::istream &is)
{
  std::string line;
  if (!std::getline(is, line)) {
    throw std::runtime_error("edge list: missing header line");
  }
  std::istringstream header(line);
  std::size_t        n = 0, m = 0;
  if (!(header >> n >> m)) {
    throw std::runtime_error("edge list: malformed header '" + line + "'");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    std::uint64_t      u = 0, v = 0;
    if (!(ls >> u >> v)) {
      throw std::runtime_error("edge list: malformed line " + std::to_string(lineno));
    }
    if (edges.size() == m) {
      throw std::runtime_error("edge list: more than the declared " + std::to_string(m) + " edges");
    }
    if (u >= n || v >= n) {
      throw ContractError("endpoint out of range: edge " + std::to_string(edges.size()) + " on line " +
                          std::to_string(lineno));
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (edges.size() != m) {
    throw std::runtime_error("edge list: header declares " + std::to_string(m) + " edges but found " +
                             std::to_string(edges.size()));
  }
  return Digraph(n, std::move(edges));
}

void save_edge_list(std::string const &path, Digraph const &g)
{
  auto const tmp = path + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) {
      throw std::runtime_error("cannot open '" + tmp + "' for writing");
    }
    write_edge_list(os, g);
    if (!os) {
      throw std::runtime_error("write failed for '" + tmp + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

Digraph load_edge_list(std::string const &path)
{
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return read_edge_list(is);
}

} // namespace cyclical
