#include "shadowlab/constructions.hpp"

#include <algorithm>
#include <string>

#include "shadowlab/errors.hpp"
#include "shadowlab/rng.hpp"

namespace shadowlab {

std::vector<Edge> all_r_sets(int n, int r) {
  std::vector<Edge> out;
  if (r < 0 || r > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(VertexSet::from_range(n, idx));
    int pos = r - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - r + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Hypergraph complete(int n, int r) {
  if (r < 1 || n < r) throw ParameterError("complete(n, r) needs n >= r >= 1");
  return Hypergraph(r, n, all_r_sets(n, r));
}

TuranGraph turan(int n, int ell, int r) {
  if (r < 2 || ell < r || n < ell) throw ParameterError("turan(n, ell, r) needs ell >= r >= 2 and n >= ell");
  PartitionSpec spec;
  spec.ell = ell;
  spec.parts.assign(static_cast<std::size_t>(ell), VertexSet(n));
  for (Vertex v = 0; v < n; ++v) spec.parts[static_cast<std::size_t>(v % ell)].insert(v);

  std::vector<Edge> edges;
  for (auto& e : all_r_sets(n, r)) {
    VertexSet seen_parts(ell);
    bool transversal = true;
    e.for_each([&](Vertex v) {
      const int p = v % ell;
      if (seen_parts.contains(p)) transversal = false;
      seen_parts.insert(p);
    });
    if (transversal) edges.push_back(std::move(e));
  }
  return {Hypergraph(r, n, std::move(edges)), std::move(spec)};
}

Hypergraph turan_padded(int n, int m, int ell, int r) {
  if (r < 2 || ell < r || m < ell || n < m)
    throw ParameterError("turan_padded(n, m, ell, r) needs n >= m >= ell >= r >= 2");
  const auto core = turan(m, ell, r).graph;
  return Hypergraph(r, n, std::vector<Edge>(core.edges().begin(), core.edges().end()));
}

std::int64_t turan_edge_count(int n, int ell, int r) {
  if (r < 0 || ell < 1 || n < 0) throw ParameterError("turan_edge_count: bad arguments");
  // Elementary symmetric polynomial of degree r in the part sizes.
  std::vector<std::int64_t> e(static_cast<std::size_t>(r) + 1, 0);
  e[0] = 1;
  for (int p = 0; p < ell; ++p) {
    const std::int64_t size = n / ell + (p < n % ell ? 1 : 0);
    for (int k = r; k >= 1; --k) e[static_cast<std::size_t>(k)] += e[static_cast<std::size_t>(k - 1)] * size;
  }
  return e[static_cast<std::size_t>(r)];
}

Hypergraph expansion(const Hypergraph& g, int r) {
  if (g.r() != 2) throw ParameterError("expansion needs a 2-graph, got uniformity " + std::to_string(g.r()));
  if (r < 2) throw ParameterError("expansion needs r >= 2");
  const int fresh_per_edge = r - 2;
  const int n = g.n() + fresh_per_edge * static_cast<int>(g.size());
  std::vector<Edge> edges;
  int next = g.n();
  for (const auto& e : g.edges()) {
    Edge big(n);
    e.for_each([&](Vertex v) { big.insert(v); });
    for (int k = 0; k < fresh_per_edge; ++k) big.insert(next++);
    edges.push_back(std::move(big));
  }
  return Hypergraph(r, n, std::move(edges));
}

Hypergraph fano() {
  // {123, 345, 561, 174, 275, 376, 246} shifted to 0-based labels.
  const int lines[7][3] = {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {0, 6, 3}, {1, 6, 4}, {2, 6, 5}, {1, 3, 5}};
  std::vector<Edge> edges;
  for (const auto& l : lines) edges.push_back(VertexSet(7, {l[0], l[1], l[2]}));
  return Hypergraph(3, 7, std::move(edges));
}

Perturbation perturb(const Hypergraph& h, std::uint64_t seed, std::size_t del, std::size_t add) {
  if (del > h.size()) throw ParameterError("perturb: cannot delete more edges than exist");
  std::vector<Edge> non_edges;
  for (auto& e : all_r_sets(h.n(), h.r()))
    if (!h.contains(e)) non_edges.push_back(std::move(e));
  if (add > non_edges.size()) throw ParameterError("perturb: not enough non-edges to add");

  Xorshift64Star rng(seed);
  std::vector<std::size_t> order(h.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  rng.shuffle(non_edges);

  Perturbation out;
  std::vector<bool> drop(h.size(), false);
  for (std::size_t k = 0; k < del; ++k) drop[order[k]] = true;
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (drop[i])
      out.removed.push_back(h.edge(i));
    else
      kept.push_back(h.edge(i));
  }
  out.added.assign(non_edges.begin(), non_edges.begin() + static_cast<std::ptrdiff_t>(add));
  std::sort(out.removed.begin(), out.removed.end());
  std::sort(out.added.begin(), out.added.end());
  kept.insert(kept.end(), out.added.begin(), out.added.end());
  out.graph = Hypergraph(h.r(), h.n(), std::move(kept));
  return out;
}

}  // namespace shadowlab
