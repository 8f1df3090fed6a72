#include "shadowlab/hypergraph.hpp"

#include <algorithm>
#include <string>

#include "shadowlab/errors.hpp"

namespace shadowlab {

namespace {

void validate_edge(int r, int n, const Edge& e) {
  if (e.size() != r)
    throw ParameterError("edge " + e.to_string() + " has " + std::to_string(e.size()) +
                         " vertices, expected " + std::to_string(r));
  if (e.max() >= n)
    throw ParameterError("edge " + e.to_string() + " uses a vertex >= n = " + std::to_string(n));
}

// Calls f on every k-subset of `items`, in lexicographic order.
template <class F>
void for_each_subset(const std::vector<Vertex>& items, int k, int universe, F&& f) {
  const int m = static_cast<int>(items.size());
  if (k < 0 || k > m) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    VertexSet s(universe);
    for (int i : idx) s.insert(items[static_cast<std::size_t>(i)]);
    f(s);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

Hypergraph::Hypergraph(int r, int n, std::vector<Edge> edges) : r_(r), n_(n), edges_(std::move(edges)) {
  if (r < 1) throw ParameterError("uniformity must be >= 1");
  if (n < 0) throw ParameterError("vertex count must be >= 0");
  for (const auto& e : edges_) validate_edge(r, n, e);
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) throw ParameterError("duplicate edge " + dup->to_string());
}

Hypergraph Hypergraph::from_edges_dedup(int r, int n, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Hypergraph(r, n, std::move(edges));
}

bool Hypergraph::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::ptrdiff_t Hypergraph::index_of(const Edge& e) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return it - edges_.begin();
}

VertexSet Hypergraph::support() const {
  VertexSet s(n_);
  for (const auto& e : edges_) s |= e;
  return s;
}

Hypergraph Hypergraph::induced(const VertexSet& vertices) const {
  std::vector<Edge> kept;
  for (const auto& e : edges_)
    if (e.is_subset_of(vertices)) kept.push_back(e);
  return Hypergraph(r_, n_, std::move(kept));
}

Hypergraph Hypergraph::without_edge(std::size_t index) const {
  std::vector<Edge> kept = edges_;
  kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(index));
  return Hypergraph(r_, n_, std::move(kept));
}

Hypergraph Hypergraph::with_edge(const Edge& e) const {
  std::vector<Edge> next = edges_;
  next.push_back(e);
  return Hypergraph(r_, n_, std::move(next));
}

std::size_t CliqueSet::total() const {
  std::size_t t = 0;
  for (const auto& level : by_size) t += level.size();
  return t;
}

Hypergraph shadow_i(const Hypergraph& h, int i) {
  if (i < 1 || i > h.r() - 1)
    throw ParameterError("shadow index " + std::to_string(i) + " outside [1, " + std::to_string(h.r() - 1) + "]");
  std::vector<Edge> out;
  for (const auto& e : h.edges())
    for_each_subset(e.elements(), h.r() - i, h.n(), [&](const VertexSet& s) { out.push_back(s); });
  return Hypergraph::from_edges_dedup(h.r() - i, h.n(), std::move(out));
}

std::size_t shadow_size(const Hypergraph& h) { return h.r() < 2 ? 0 : shadow(h).size(); }

Hypergraph link(const Hypergraph& h, Vertex v) {
  if (v < 0 || v >= h.n()) throw ParameterError("vertex " + std::to_string(v) + " outside ground set");
  if (h.r() < 2) throw ParameterError("link needs uniformity >= 2");
  std::vector<Edge> out;
  for (const auto& e : h.edges()) {
    if (!e.contains(v)) continue;
    Edge a = e;
    a.erase(v);
    out.push_back(std::move(a));
  }
  return Hypergraph(h.r() - 1, h.n(), std::move(out));
}

VertexSet neighborhood(const Hypergraph& h, const VertexSet& s) {
  if (s.size() > h.r() - 1)
    throw ParameterError("neighborhood defined for |S| <= r-1; got |S| = " + std::to_string(s.size()));
  VertexSet out(h.n());
  for (const auto& e : h.edges())
    if (s.is_subset_of(e)) out |= e;
  return out - s;
}

std::vector<std::int64_t> degrees(const Hypergraph& h) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(h.n()), 0);
  for (const auto& e : h.edges()) e.for_each([&](Vertex v) { ++d[static_cast<std::size_t>(v)]; });
  return d;
}

std::int64_t sigma(std::span<const std::int64_t> deg, const VertexSet& s) {
  std::int64_t total = 0;
  s.for_each([&](Vertex v) {
    if (static_cast<std::size_t>(v) < deg.size()) total += deg[static_cast<std::size_t>(v)];
  });
  return total;
}

std::int64_t sigma(const Hypergraph& h, const VertexSet& s) { return sigma(degrees(h), s); }

SigmaStats sigma_hat(const Hypergraph& h) {
  if (h.empty()) throw EmptyInputError("sigma_hat of an edgeless hypergraph");
  SigmaStats st;
  st.degrees = degrees(h);
  st.sigma_hat = -1;
  // Edges are in lexicographic order, so the first maximizer is the least one.
  for (const auto& e : h.edges()) {
    const auto s = sigma(st.degrees, e);
    if (s > st.sigma_hat) {
      st.sigma_hat = s;
      st.argmax_edge = e;
    }
  }
  return st;
}

std::vector<VertexSet> pair_adjacency(const Hypergraph& h) {
  std::vector<VertexSet> adj(static_cast<std::size_t>(h.n()), VertexSet(h.n()));
  for (const auto& e : h.edges())
    e.for_each([&](Vertex v) {
      adj[static_cast<std::size_t>(v)] |= e;
      adj[static_cast<std::size_t>(v)].erase(v);
    });
  return adj;
}

bool is_two_covered(const Hypergraph& h, const VertexSet& s) {
  if (s.size() <= 1) return true;
  const auto adj = pair_adjacency(h);
  bool ok = true;
  s.for_each([&](Vertex v) {
    if (ok && v < h.n()) {
      VertexSet others = s;
      others.erase(v);
      ok = others.is_subset_of(adj[static_cast<std::size_t>(v)]);
    } else {
      ok = false;
    }
  });
  return ok;
}

namespace {

void extend_cliques(const std::vector<VertexSet>& adj, VertexSet& current, int size, const VertexSet& candidates,
                    int kmax, CliqueSet& out) {
  out.by_size[static_cast<std::size_t>(size)].push_back(current);
  if (size == kmax) return;
  candidates.for_each([&](Vertex w) {
    VertexSet next = candidates & adj[static_cast<std::size_t>(w)];
    // Only extend with larger vertices so each clique appears once.
    VertexSet above(static_cast<int>(adj.size()));
    next.for_each([&](Vertex u) {
      if (u > w) above.insert(u);
    });
    current.insert(w);
    extend_cliques(adj, current, size + 1, above, kmax, out);
    current.erase(w);
  });
}

}  // namespace

CliqueSet clique_set(const Hypergraph& h, int kmax) {
  if (kmax < 1) throw ParameterError("clique_set needs kmax >= 1");
  CliqueSet out;
  out.kmax = kmax;
  out.by_size.assign(static_cast<std::size_t>(kmax) + 1, {});
  const auto adj = pair_adjacency(h);
  for (Vertex v = 0; v < h.n(); ++v) {
    VertexSet current(h.n());
    current.insert(v);
    VertexSet above(h.n());
    adj[static_cast<std::size_t>(v)].for_each([&](Vertex u) {
      if (u > v) above.insert(u);
    });
    extend_cliques(adj, current, 1, above, kmax, out);
  }
  for (auto& level : out.by_size) std::sort(level.begin(), level.end());
  return out;
}

namespace {

void bron_kerbosch(const std::vector<VertexSet>& adj, VertexSet& clique, VertexSet cand, VertexSet excluded,
                   std::vector<VertexSet>& out) {
  if (cand.empty()) {
    if (excluded.empty()) out.push_back(clique);
    return;
  }
  // Pivot: the vertex of cand | excluded with most neighbours in cand.
  Vertex pivot = -1;
  int best = -1;
  (cand | excluded).for_each([&](Vertex u) {
    const int c = (cand & adj[static_cast<std::size_t>(u)]).size();
    if (c > best) {
      best = c;
      pivot = u;
    }
  });
  const VertexSet branch = cand - adj[static_cast<std::size_t>(pivot)];
  branch.for_each([&](Vertex v) {
    const auto& nv = adj[static_cast<std::size_t>(v)];
    clique.insert(v);
    bron_kerbosch(adj, clique, cand & nv, excluded & nv, out);
    clique.erase(v);
    cand.erase(v);
    excluded.insert(v);
  });
}

}  // namespace

std::vector<VertexSet> maximal_two_covered_sets(const Hypergraph& h) {
  std::vector<VertexSet> out;
  const auto adj = pair_adjacency(h);
  VertexSet clique(h.n());
  bron_kerbosch(adj, clique, VertexSet::full(h.n()), VertexSet(h.n()), out);
  std::sort(out.begin(), out.end());
  return out;
}

ZValue z_value(const Hypergraph& h, int ell) {
  if (ell < h.r()) throw ParameterError("z_value needs ell >= r");
  if (ell < 2) throw ParameterError("z_value needs ell >= 2");
  if (h.empty()) throw EmptyInputError("z_value of an edgeless hypergraph");
  const auto deg = degrees(h);
  const auto budget = static_cast<std::int64_t>(ell - h.r() + 1) * static_cast<std::int64_t>(shadow_size(h));
  const auto cliques = clique_set(h, ell - 1);

  ZValue best;
  best.ell = ell;
  bool have = false;
  cliques.for_each([&](const VertexSet& r_set) {
    const Rational ratio(budget - sigma(deg, r_set), ell - r_set.size());
    if (!have || ratio < best.z || (ratio == best.z && r_set < best.witness)) {
      best.z = ratio;
      best.witness = r_set;
      have = true;
    }
  });
  if (best.z < 0) {
    best.z = 0;
    best.clamped = true;
  }
  return best;
}

}  // namespace shadowlab
