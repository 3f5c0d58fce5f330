#include "cyclical/generate.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace cyclical {

Digraph sample_wcm(std::size_t n, RngSpec const &spec)
{
  Rng rng(spec);
  return sample_wcm(n, rng);
}

Digraph sample_wcm(std::size_t n, Rng &rng)
{
  if (n == 0) {
    throw DomainError("sample_wcm: n must be at least 1");
  }
  std::vector<Edge> edges;
  edges.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto const v = static_cast<Vertex>(i);
    edges.push_back({v, static_cast<Vertex>(rng.below(n))});
    edges.push_back({v, static_cast<Vertex>(rng.below(n))});
  }
  return Digraph(n, std::move(edges));
}

std::vector<std::size_t> sample_multinomial_indegrees(std::size_t n, RngSpec const &spec)
{
  Rng rng(spec);
  return sample_multinomial_indegrees(n, rng);
}

std::vector<std::size_t> sample_multinomial_indegrees(std::size_t n, Rng &rng)
{
  if (n == 0) {
    throw DomainError("sample_multinomial_indegrees: n must be at least 1");
  }
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t draw = 0; draw < 2 * n; ++draw) {
    ++counts[rng.below(n)];
  }
  return counts;
}

Digraph sample_dcm(DegreeSequence const &degrees, RngSpec const &spec)
{
  Rng rng(spec);
  return sample_dcm(degrees, rng);
}

Digraph sample_dcm(DegreeSequence const &degrees, Rng &rng)
{
  if (!degrees.balanced()) {
    throw ContractError("sample_dcm: in- and out-degree sums differ (" + std::to_string(degrees.in_total()) +
                        " vs " + std::to_string(degrees.out_total()) + ")");
  }
  auto const n = degrees.vertex_count();
  auto const s = degrees.in_total();

  std::vector<Vertex> in_half;
  in_half.reserve(s);
  for (std::size_t j = 0; j < n; ++j) {
    in_half.insert(in_half.end(), degrees.in_deg[j], static_cast<Vertex>(j));
  }
  for (std::size_t i = s; i > 1; --i) {
    std::swap(in_half[i - 1], in_half[rng.below(i)]);
  }

  std::vector<Edge> edges;
  edges.reserve(s);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t slot = 0; slot < degrees.out_deg[i]; ++slot) {
      edges.push_back({static_cast<Vertex>(i), in_half[pos++]});
    }
  }
  return Digraph(n, std::move(edges));
}

Digraph sample_dcm_multinomial(std::size_t n, RngSpec const &spec)
{
  DegreeSequence d;
  d.in_deg = sample_multinomial_indegrees(n, {spec.seed, spec.replicate, spec.purpose_tag + "/indeg"});
  d.out_deg.assign(n, 2);
  return sample_dcm(d, {spec.seed, spec.replicate, spec.purpose_tag + "/match"});
}

Digraph sample_dcm_multinomial(std::size_t n, Rng &rng)
{
  DegreeSequence d;
  d.in_deg = sample_multinomial_indegrees(n, rng);
  d.out_deg.assign(n, 2);
  return sample_dcm(d, rng);
}

GraphProbability graph_probability(Digraph const &g)
{
  // double_edge_vertex_count enforces the 2-out precondition.
  auto const doubled = double_edge_vertex_count(g);
  auto const n = static_cast<double>(g.vertex_count());
  double const log_p = (n - static_cast<double>(doubled)) * std::log(2.0) - 2.0 * n * std::log(n);
  GraphProbability p{log_p, std::nullopt};
  if (log_p >= std::log(std::numeric_limits<double>::min())) {
    // Exact in binary for small n: a power of two times an integer power of 1/n.
    double v = std::ldexp(1.0, static_cast<int>(g.vertex_count() - doubled));
    for (std::size_t i = 0; i < 2 * g.vertex_count(); ++i) {
      v /= n;
    }
    p.value = v;
  }
  return p;
}

std::uint64_t canonical_code_count(std::size_t n)
{
  std::uint64_t const base = n * (n + 1) / 2;
  std::uint64_t       count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base) {
      throw DomainError("canonical_code_count: overflow for n = " + std::to_string(n));
    }
    count *= base;
  }
  return count;
}

std::uint64_t canonical_index(Digraph const &g)
{
  if (!g.constant_out_degree(2)) {
    throw ContractError("canonical_index requires out-degree 2 at every vertex");
  }
  auto const          n = g.vertex_count();
  std::uint64_t const base = n * (n + 1) / 2;
  canonical_code_count(n);
  std::uint64_t index = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto const    slots = g.out_slots(static_cast<Vertex>(v));
    std::uint64_t a = slots[0], b = slots[1];
    if (a > b) {
      std::swap(a, b);
    }
    index = index * base + (b * (b + 1) / 2 + a);
  }
  return index;
}

Digraph graph_from_canonical_index(std::size_t n, std::uint64_t index)
{
  if (index >= canonical_code_count(n)) {
    throw DomainError("graph_from_canonical_index: index out of range");
  }
  std::uint64_t const base = n * (n + 1) / 2;
  std::vector<Edge>   edges(2 * n);
  for (std::size_t k = n; k-- > 0;) {
    auto const    code = index % base;
    index /= base;
    std::uint64_t b = 0;
    while ((b + 1) * (b + 2) / 2 <= code) {
      ++b;
    }
    auto const a = code - b * (b + 1) / 2;
    auto const v = static_cast<Vertex>(k);
    edges[2 * k] = {v, static_cast<Vertex>(a)};
    edges[2 * k + 1] = {v, static_cast<Vertex>(b)};
  }
  return Digraph(n, std::move(edges));
}

Model parse_model(std::string const &name)
{
  if (name == "wcm") {
    return Model::wcm;
  }
  if (name == "dcm-multinomial") {
    return Model::dcm_multinomial;
  }
  throw std::invalid_argument("unknown model '" + name + "' (expected wcm or dcm-multinomial)");
}

std::string to_string(Model m) { return m == Model::wcm ? "wcm" : "dcm-multinomial"; }

Digraph sample_graph(Model model, std::size_t n, RngSpec const &rng)
{
  return model == Model::wcm ? sample_wcm(n, rng) : sample_dcm_multinomial(n, rng);
}

} // namespace cyclical
