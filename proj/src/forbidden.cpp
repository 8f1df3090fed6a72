#include "shadowlab/forbidden.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "mask_ops.hpp"
#include "shadowlab/constructions.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/rng.hpp"

namespace shadowlab {

using detail::count;
using detail::subset;

std::string Family::name() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::cancellative:
      return "cancellative";
    case Kind::expansion:
      return "expansion(" + std::to_string(ell) + ")";
  }
  return "?";
}

std::string Witness::describe() const {
  std::string s;
  if (kind == Kind::cancellative_triple) {
    s = "cancellative triple";
    for (const auto& e : edges) s += " " + e.to_string();
  } else {
    s = "2-covered core " + core.to_string();
  }
  return s;
}

namespace {

struct Triple {
  std::size_t a, b, c;
};

Witness triple_witness(const Hypergraph& h, const Triple& t) {
  Witness w;
  w.kind = Witness::Kind::cancellative_triple;
  w.edges = {h.edge(t.a), h.edge(t.b), h.edge(t.c)};
  return w;
}

template <class Mask>
std::vector<Mask> edge_masks(const Hypergraph& h);

template <>
std::vector<std::uint64_t> edge_masks<std::uint64_t>(const Hypergraph& h) {
  std::vector<std::uint64_t> m;
  m.reserve(h.size());
  for (const auto& e : h.edges()) m.push_back(e.low_word());
  return m;
}

template <>
std::vector<VertexSet> edge_masks<VertexSet>(const Hypergraph& h) {
  return {h.edges().begin(), h.edges().end()};
}

// Edge indices containing each covered pair, ascending.
class PairIndex {
 public:
  explicit PairIndex(const Hypergraph& h) : n_(static_cast<std::uint64_t>(h.n())) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto vs = h.edge(i).elements();
      for (std::size_t x = 0; x < vs.size(); ++x)
        for (std::size_t y = x + 1; y < vs.size(); ++y) index_[key(vs[x], vs[y])].push_back(i);
    }
  }
  const std::vector<std::size_t>& at(Vertex u, Vertex v) const {
    static const std::vector<std::size_t> kEmpty;
    const auto it = index_.find(key(std::min(u, v), std::max(u, v)));
    return it == index_.end() ? kEmpty : it->second;
  }

 private:
  std::uint64_t key(Vertex u, Vertex v) const {
    return static_cast<std::uint64_t>(u) * n_ + static_cast<std::uint64_t>(v);
  }
  std::uint64_t n_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index_;
};

// For A = edges[a], least (b, c) with A xor B inside C, via the edges holding
// one pair {min(A\B), min(B\A)}.
template <class Mask>
std::optional<Triple> first_triple_from(std::size_t a, const std::vector<Mask>& edges, const PairIndex& pairs) {
  for (std::size_t b = 0; b < edges.size(); ++b) {
    if (b == a) continue;
    const Mask diff = edges[a] ^ edges[b];
    const int u = detail::lowest(edges[a] & diff);
    const int w = detail::lowest(edges[b] & diff);
    for (std::size_t c : pairs.at(u, w))
      if (subset(diff, edges[c])) return Triple{a, b, c};
  }
  return std::nullopt;
}

template <class Mask>
std::optional<Triple> scan_triples_parallel(const Hypergraph& h) {
  const auto edges = edge_masks<Mask>(h);
  const PairIndex pairs(h);
  const auto m = static_cast<std::ptrdiff_t>(edges.size());
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t best_a = kNone;
#pragma omp parallel for schedule(dynamic, 4) reduction(min : best_a)
  for (std::ptrdiff_t a = 0; a < m; ++a) {
    if (static_cast<std::size_t>(a) > best_a) continue;
    if (first_triple_from(static_cast<std::size_t>(a), edges, pairs))
      best_a = std::min(best_a, static_cast<std::size_t>(a));
  }
  if (best_a == kNone) return std::nullopt;
  return first_triple_from(best_a, edges, pairs);
}

template <class Mask>
std::vector<Mask> adjacency_masks(const Hypergraph& h);

template <>
std::vector<std::uint64_t> adjacency_masks<std::uint64_t>(const Hypergraph& h) {
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(h.n()), 0);
  for (const auto& e : h.edges()) {
    const auto m = e.low_word();
    detail::for_each_bit(m, [&](int v) { adj[static_cast<std::size_t>(v)] |= m & ~(std::uint64_t{1} << v); });
  }
  return adj;
}

template <>
std::vector<VertexSet> adjacency_masks<VertexSet>(const Hypergraph& h) {
  return pair_adjacency(h);
}

// Lexicographically least clique of `target` vertices extending `current`
// by members of `cand`, each larger than the last vertex added.
template <class Mask>
bool least_clique(const std::vector<Mask>& adj, Mask& current, int size, const Mask& cand, int target) {
  if (size == target) return true;
  if (size + count(cand) < target) return false;
  bool found = false;
  Mask rest = cand;
  while (!found && !detail::none(rest)) {
    const int w = detail::lowest(rest);
    rest = detail::above(rest, w);
    Mask next = detail::above(cand & adj[static_cast<std::size_t>(w)], w);
    Mask saved = current;
    current = detail::with(current, w);
    if (least_clique(adj, current, size + 1, next, target)) {
      found = true;
    } else {
      current = saved;
    }
  }
  return found;
}

template <class Mask>
std::optional<VertexSet> least_covered_core(const Hypergraph& h, int target, bool parallel) {
  const auto adj = adjacency_masks<Mask>(h);
  const int n = h.n();
  std::vector<std::optional<Mask>> found(static_cast<std::size_t>(n));
  auto search_from = [&](int v) {
    Mask current{};
    if constexpr (std::is_same_v<Mask, VertexSet>) current = VertexSet(n);
    current = detail::with(current, v);
    Mask cand = detail::above(adj[static_cast<std::size_t>(v)], v);
    if (least_clique(adj, current, 1, cand, target)) found[static_cast<std::size_t>(v)] = current;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int v = 0; v < n; ++v) search_from(v);
  } else {
    for (int v = 0; v < n; ++v) {
      search_from(v);
      if (found[static_cast<std::size_t>(v)]) break;
    }
  }
  for (const auto& f : found) {
    if (!f) continue;
    if constexpr (std::is_same_v<Mask, VertexSet>) {
      return *f;
    } else {
      VertexSet s(n);
      detail::for_each_bit(*f, [&](int v) { s.insert(v); });
      return s;
    }
  }
  return std::nullopt;
}

Witness clique_witness(const Hypergraph& h, const VertexSet& core) {
  Witness w;
  w.kind = Witness::Kind::covered_clique;
  w.core = core;
  const auto vs = core.elements();
  for (std::size_t x = 0; x < vs.size(); ++x)
    for (std::size_t y = x + 1; y < vs.size(); ++y)
      for (const auto& e : h.edges())
        if (e.contains(vs[x]) && e.contains(vs[y])) {
          w.covering.push_back({vs[x], vs[y], e});
          w.edges.push_back(e);
          break;
        }
  std::sort(w.edges.begin(), w.edges.end());
  w.edges.erase(std::unique(w.edges.begin(), w.edges.end()), w.edges.end());
  return w;
}

void check_ell(const Hypergraph& h, int ell) {
  if (ell < h.r()) throw ParameterError("clique expansion needs ell >= r");
}

}  // namespace

std::optional<Witness> find_cancellative_violation(const Hypergraph& h) {
  const auto t = h.n() <= 64 ? scan_triples_parallel<std::uint64_t>(h) : scan_triples_parallel<VertexSet>(h);
  if (!t) return std::nullopt;
  return triple_witness(h, *t);
}

std::optional<Witness> find_cancellative_violation_reference(const Hypergraph& h) {
  const auto& e = h.edges();
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b) {
      if (a == b) continue;
      const Edge diff = e[a] ^ e[b];
      for (std::size_t c = 0; c < e.size(); ++c)
        if (diff.is_subset_of(e[c])) return triple_witness(h, {a, b, c});
    }
  return std::nullopt;
}

std::optional<Witness> find_union_violation(const Hypergraph& h) {
  const auto& e = h.edges();
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b) {
      const Edge ab = e[a] | e[b];
      for (std::size_t c = b + 1; c < e.size(); ++c)
        if ((e[a] | e[c]) == ab) return triple_witness(h, {a, b, c});
    }
  return std::nullopt;
}

std::optional<Witness> find_clique_expansion(const Hypergraph& h, int ell) {
  check_ell(h, ell);
  const auto core = h.n() <= 64 ? least_covered_core<std::uint64_t>(h, ell + 1, true)
                                : least_covered_core<VertexSet>(h, ell + 1, true);
  if (!core) return std::nullopt;
  return clique_witness(h, *core);
}

std::optional<Witness> find_clique_expansion_reference(const Hypergraph& h, int ell) {
  check_ell(h, ell);
  const auto core = least_covered_core<VertexSet>(h, ell + 1, false);
  if (!core) return std::nullopt;
  return clique_witness(h, *core);
}

std::optional<Witness> find_violation(const Hypergraph& h, const Family& family) {
  switch (family.kind) {
    case Family::Kind::none:
      return std::nullopt;
    case Family::Kind::cancellative:
      return find_cancellative_violation(h);
    case Family::Kind::expansion:
      return find_clique_expansion(h, family.ell);
  }
  return std::nullopt;
}

bool is_free(const Hypergraph& h, const Family& family) { return !find_violation(h, family).has_value(); }

void require_free(const Hypergraph& h, const Family& family, const std::string& context) {
  if (const auto w = find_violation(h, family))
    throw PreconditionError(context + ": input is not " + family.name() + "-free; witness: " + w->describe());
}

// ---------------------------------------------------------------------------

FreenessTracker::FreenessTracker(int n, int r, Family family)
    : n_(n), r_(r), family_(family) {
  if (n > kMaxVertices) throw ResourceError("FreenessTracker supports at most 64 vertices");
  if (family.kind == Family::Kind::expansion && family.ell < r)
    throw ParameterError("clique expansion needs ell >= r");
  pair_count_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  adjacency_.assign(static_cast<std::size_t>(n), 0);
}

bool FreenessTracker::can_add(std::uint64_t e) const {
  switch (family_.kind) {
    case Family::Kind::none:
      return true;
    case Family::Kind::cancellative: {
      // New triples must use e as A/B (e xor X inside Y) or as C (X xor Y inside e).
      const std::size_t m = edges_.size();
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t d = e ^ edges_[i];
        for (std::size_t j = 0; j < m; ++j) {
          if (j != i && subset(d, edges_[j])) return false;
          if (j > i && subset(edges_[i] ^ edges_[j], e)) return false;
        }
      }
      return true;
    }
    case Family::Kind::expansion:
      return !creates_covered_clique(e);
  }
  return true;
}

bool FreenessTracker::creates_covered_clique(std::uint64_t e) const {
  const auto n = static_cast<std::size_t>(n_);
  std::vector<std::uint64_t> adj = adjacency_;
  std::vector<std::pair<int, int>> fresh;
  detail::for_each_bit(e, [&](int u) {
    detail::for_each_bit(detail::above(e, u), [&](int v) {
      if (pair_count_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] == 0) fresh.emplace_back(u, v);
    });
    adj[static_cast<std::size_t>(u)] |= e & ~(std::uint64_t{1} << u);
  });
  if (fresh.empty()) return false;
  const int target = family_.ell + 1;
  // A new (ell+1)-clique must contain a fresh pair {u, v}: look for ell-1
  // more vertices inside their common neighbourhood.
  for (const auto& [u, v] : fresh) {
    const std::uint64_t common = adj[static_cast<std::size_t>(u)] & adj[static_cast<std::size_t>(v)];
    std::uint64_t extra = 0;
    if (least_clique(adj, extra, 0, common, target - 2)) return true;
  }
  return false;
}

void FreenessTracker::push(std::uint64_t e) {
  const auto n = static_cast<std::size_t>(n_);
  detail::for_each_bit(e, [&](int u) {
    detail::for_each_bit(detail::above(e, u), [&](int v) {
      ++pair_count_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
    });
    adjacency_[static_cast<std::size_t>(u)] |= e & ~(std::uint64_t{1} << u);
  });
  edges_.push_back(e);
}

void FreenessTracker::pop() {
  const std::uint64_t e = edges_.back();
  edges_.pop_back();
  const auto n = static_cast<std::size_t>(n_);
  detail::for_each_bit(e, [&](int u) {
    detail::for_each_bit(detail::above(e, u), [&](int v) {
      auto& c = pair_count_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
      if (--c == 0) {
        adjacency_[static_cast<std::size_t>(u)] &= ~(std::uint64_t{1} << v);
        adjacency_[static_cast<std::size_t>(v)] &= ~(std::uint64_t{1} << u);
      }
    });
  });
}

std::vector<std::uint64_t> to_masks(const Hypergraph& h) {
  if (h.n() > 64) throw ResourceError("mask form needs n <= 64");
  return edge_masks<std::uint64_t>(h);
}

Hypergraph from_masks(int r, int n, const std::vector<std::uint64_t>& masks) {
  std::vector<Edge> edges;
  edges.reserve(masks.size());
  for (auto m : masks) {
    Edge e(n);
    detail::for_each_bit(m, [&](int v) { e.insert(v); });
    edges.push_back(std::move(e));
  }
  return Hypergraph(r, n, std::move(edges));
}

Hypergraph random_free(int n, int r, const Family& family, std::uint64_t seed, std::size_t max_edges) {
  FreenessTracker tracker(n, r, family);
  auto candidates = all_r_sets(n, r);
  Xorshift64Star rng(seed);
  rng.shuffle(candidates);
  for (const auto& c : candidates) {
    if (tracker.edges().size() >= max_edges) break;
    const auto m = c.low_word();
    if (tracker.can_add(m)) tracker.push(m);
  }
  return from_masks(r, n, tracker.edges());
}

}  // namespace shadowlab
