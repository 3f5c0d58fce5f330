#include "cyclical/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace cyclical {

SccReport scc_decompose(Digraph const &g)
{
  auto const                n = g.vertex_count();
  constexpr std::size_t     unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t>  index(n, unvisited);
  std::vector<std::size_t>  low(n, 0);
  std::vector<bool>         on_stack(n, false);
  std::vector<Vertex>       stack;
  std::vector<std::size_t>  raw_id(n, 0);
  std::size_t               next_index = 0;
  std::size_t               raw_count = 0;

  struct Frame
  {
    Vertex      v;
    std::size_t slot;
  };
  std::vector<Frame> calls;

  for (std::size_t start = 0; start < n; ++start) {
    if (index[start] != unvisited) {
      continue;
    }
    calls.push_back({static_cast<Vertex>(start), 0});
    index[start] = low[start] = next_index++;
    stack.push_back(static_cast<Vertex>(start));
    on_stack[start] = true;

    while (!calls.empty()) {
      auto      &frame = calls.back();
      auto const v = frame.v;
      auto const slots = g.out_slots(v);
      if (frame.slot < slots.size()) {
        auto const w = slots[frame.slot++];
        if (index[w] == unvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_id[w] = raw_count;
        } while (w != v);
        ++raw_count;
      }
      calls.pop_back();
      if (!calls.empty()) {
        auto const parent = calls.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  std::vector<std::size_t> raw_size(raw_count, 0);
  std::vector<std::size_t> raw_min(raw_count, n);
  std::vector<std::size_t> raw_internal(raw_count, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++raw_size[raw_id[v]];
    raw_min[raw_id[v]] = std::min(raw_min[raw_id[v]], v);
  }
  for (auto const &e : g.edges()) {
    raw_internal[raw_id[e.source]] += raw_id[e.source] == raw_id[e.target];
  }
  std::vector<std::size_t> order(raw_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (raw_size[a] != raw_size[b]) {
      return raw_size[a] > raw_size[b];
    }
    if (raw_internal[a] != raw_internal[b]) {
      return raw_internal[a] > raw_internal[b];
    }
    return raw_min[a] < raw_min[b];
  });
  std::vector<std::size_t> rank(raw_count);
  for (std::size_t r = 0; r < raw_count; ++r) {
    rank[order[r]] = r;
  }

  SccReport report;
  report.n = n;
  report.component_id.resize(n);
  report.sizes.resize(raw_count);
  report.giant_mask.assign(n, false);
  for (std::size_t r = 0; r < raw_count; ++r) {
    report.sizes[r] = raw_size[order[r]];
  }
  for (std::size_t v = 0; v < n; ++v) {
    report.component_id[v] = rank[raw_id[v]];
    report.giant_mask[v] = report.component_id[v] == 0;
  }
  return report;
}

namespace {

std::span<Vertex const> neighbours(Digraph const &g, Vertex v, Direction d)
{
  return d == Direction::forward ? g.out_slots(v) : g.in_sources(v);
}

void check_vertex(Digraph const &g, Vertex v, char const *what)
{
  if (v >= g.vertex_count()) {
    throw ContractError(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
  }
}

void check_mask(Digraph const &g, VertexMask const &mask, char const *what)
{
  if (mask.size() != g.vertex_count()) {
    throw ContractError(std::string(what) + ": mask size " + std::to_string(mask.size()) +
                        " does not match vertex count " + std::to_string(g.vertex_count()));
  }
}

} // namespace

FanReport fan(Digraph const &g, Vertex v, Direction direction, std::optional<std::size_t> max_steps)
{
  check_vertex(g, v, "fan");
  FanReport r;
  r.root = v;
  r.direction = direction;

  std::vector<bool>   seen(g.vertex_count(), false);
  std::vector<Vertex> queue{v};
  seen[v] = true;
  std::size_t const limit = max_steps.value_or(std::numeric_limits<std::size_t>::max());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto w : neighbours(g, queue[head], direction)) {
      if (r.edge_count == limit) {
        r.complete = false;
        r.vertex_count = queue.size();
        return r;
      }
      ++r.edge_count;
      if (seen[w]) {
        ++r.revisit_steps;
      } else {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  r.vertex_count = queue.size();
  return r;
}

std::optional<std::size_t> distance_to_set(Digraph const &g, Vertex v, VertexMask const &target)
{
  check_vertex(g, v, "distance_to_set");
  check_mask(g, target, "distance_to_set");
  if (target[v]) {
    return 0;
  }
  std::vector<std::size_t> dist(g.vertex_count(), unreachable);
  std::deque<Vertex>       queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    auto const u = queue.front();
    queue.pop_front();
    for (auto w : g.out_slots(u)) {
      if (dist[w] != unreachable) {
        continue;
      }
      dist[w] = dist[u] + 1;
      if (target[w]) {
        return dist[w];
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> distances_to_set(Digraph const &g, VertexMask const &target)
{
  check_mask(g, target, "distances_to_set");
  std::vector<std::size_t> dist(g.vertex_count(), unreachable);
  std::vector<Vertex>      queue;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (target[v]) {
      dist[v] = 0;
      queue.push_back(static_cast<Vertex>(v));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto const u = queue[head];
    for (auto w : g.in_sources(u)) {
      if (dist[w] == unreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

// Forward closure avoiding `forbidden`; `stamp` marks visited vertices with
// `epoch` so one buffer serves many calls.
std::size_t closure_avoiding(Digraph const &g, Vertex v, VertexMask const &forbidden, std::vector<std::size_t> &stamp,
                             std::size_t epoch, std::vector<Vertex> &queue)
{
  queue.clear();
  queue.push_back(v);
  stamp[v] = epoch;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto w : g.out_slots(queue[head])) {
      if (forbidden[w] || stamp[w] == epoch) {
        continue;
      }
      stamp[w] = epoch;
      queue.push_back(w);
    }
  }
  return queue.size();
}

} // namespace

std::size_t reachable_avoiding(Digraph const &g, Vertex v, VertexMask const &forbidden)
{
  check_vertex(g, v, "reachable_avoiding");
  check_mask(g, forbidden, "reachable_avoiding");
  if (forbidden[v]) {
    throw ContractError("reachable_avoiding: start vertex " + std::to_string(v) + " is forbidden");
  }
  std::vector<std::size_t> stamp(g.vertex_count(), 0);
  std::vector<Vertex>      queue;
  return closure_avoiding(g, v, forbidden, stamp, 1, queue);
}

AvoidingMaximum max_reachable_avoiding(Digraph const &g, VertexMask const &forbidden)
{
  check_mask(g, forbidden, "max_reachable_avoiding");
  std::vector<std::size_t> stamp(g.vertex_count(), 0);
  std::vector<Vertex>      queue;
  AvoidingMaximum          best;
  std::size_t              epoch = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (forbidden[v]) {
      continue;
    }
    auto const count = closure_avoiding(g, static_cast<Vertex>(v), forbidden, stamp, ++epoch, queue);
    if (count > best.max_count) {
      best = {count, static_cast<Vertex>(v)};
    }
  }
  return best;
}

std::size_t edges_leaving_set(Digraph const &g, VertexMask const &mask)
{
  check_mask(g, mask, "edges_leaving_set");
  std::size_t count = 0;
  for (auto const &e : g.edges()) {
    count += mask[e.source] && !mask[e.target];
  }
  return count;
}

std::size_t edges_entering_set(Digraph const &g, VertexMask const &mask)
{
  check_mask(g, mask, "edges_entering_set");
  std::size_t count = 0;
  for (auto const &e : g.edges()) {
    count += !mask[e.source] && mask[e.target];
  }
  return count;
}

DichotomySummary fan_dichotomy_histogram(Digraph const &g, std::size_t threshold)
{
  auto const n = g.vertex_count();
  DichotomySummary s;
  s.threshold = threshold;
  s.min_large = std::numeric_limits<std::size_t>::max();
  if (n == 0) {
    s.min_large = 0;
    return s;
  }

  // Vertices of one strongly connected component share their fan-in.
  auto const               scc = scc_decompose(g);
  std::vector<std::size_t> fan_edges(scc.component_count(), unreachable);
  double                   large_total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto &edges = fan_edges[scc.component_id[v]];
    if (edges == unreachable) {
      edges = fan(g, static_cast<Vertex>(v), Direction::backward).edge_count;
    }
    if (edges < threshold) {
      ++s.small_count;
      s.max_small = std::max(s.max_small, edges);
    } else {
      ++s.large_count;
      s.min_large = std::min(s.min_large, edges);
      large_total += static_cast<double>(edges);
    }
    if (edges >= threshold && 2 * edges <= n) {
      ++s.in_gap;
    }
  }
  auto const nd = static_cast<double>(n);
  s.small_fraction = static_cast<double>(s.small_count) / nd;
  s.large_fraction = static_cast<double>(s.large_count) / nd;
  s.large_mean_over_n = s.large_count == 0 ? 0.0 : large_total / static_cast<double>(s.large_count) / nd;
  if (s.large_count == 0) {
    s.min_large = 0;
  }
  return s;
}

std::string to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

Direction parse_direction(std::string const &name)
{
  if (name == "forward") {
    return Direction::forward;
  }
  if (name == "backward") {
    return Direction::backward;
  }
  throw std::invalid_argument("unknown direction '" + name + "'");
}

} // namespace cyclical
