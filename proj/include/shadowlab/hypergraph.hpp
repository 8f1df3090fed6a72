#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "shadowlab/vertex_set.hpp"

namespace shadowlab {

using Edge = VertexSet;
using Rational = boost::rational<std::int64_t>;

/// Uniform r-graph on the ground set 0..n-1. Edges are kept sorted in
/// lexicographic order of their vertex sequences, so two equal hypergraphs
/// have identical storage. Values are immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws ParameterError if an edge has the wrong size, a vertex >= n, or an
  /// edge repeats.
  Hypergraph(int r, int n, std::vector<Edge> edges);

  /// Same as the constructor but silently drops repeated edges.
  static Hypergraph from_edges_dedup(int r, int n, std::vector<Edge> edges);

  static Hypergraph empty(int r, int n) { return Hypergraph(r, n, {}); }

  int r() const noexcept { return r_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  bool contains(const Edge& e) const;
  /// Index of e in storage order, or -1.
  std::ptrdiff_t index_of(const Edge& e) const;

  /// Vertices of positive degree.
  VertexSet support() const;
  /// Edges with every vertex in `vertices`, on the same ground set.
  Hypergraph induced(const VertexSet& vertices) const;
  Hypergraph without_edge(std::size_t index) const;
  Hypergraph with_edge(const Edge& e) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  int r_ = 1;
  int n_ = 0;
  std::vector<Edge> edges_;
};

struct SigmaStats {
  std::vector<std::int64_t> degrees;
  std::int64_t sigma_hat = 0;
  Edge argmax_edge;
};

/// Every 2-covered vertex set of size 1..kmax, grouped by size:
/// by_size[k] lists the cliques of size k in lexicographic order
/// (by_size[0] stays empty).
struct CliqueSet {
  int kmax = 0;
  std::vector<std::vector<VertexSet>> by_size;

  std::size_t total() const;
  template <class F>
  void for_each(F&& f) const {
    for (const auto& level : by_size)
      for (const auto& c : level) f(c);
  }
};

struct ZValue {
  Rational z{0};
  VertexSet witness;
  int ell = 0;
  /// True when every constraint ratio was negative and z was raised to 0;
  /// the witness then carries the most negative ratio and does not attain equality.
  bool clamped = false;
};

/// i-th shadow: all (r-i)-subsets of edges. Requires 1 <= i <= r-1.
Hypergraph shadow_i(const Hypergraph& h, int i);
/// First shadow.
inline Hypergraph shadow(const Hypergraph& h) { return shadow_i(h, 1); }
std::size_t shadow_size(const Hypergraph& h);

/// { A : A + v in H } as an (r-1)-graph on the same ground set.
Hypergraph link(const Hypergraph& h, Vertex v);

/// { v not in S : some edge contains S + v }. Requires |S| <= r-1.
VertexSet neighborhood(const Hypergraph& h, const VertexSet& s);

std::vector<std::int64_t> degrees(const Hypergraph& h);
std::int64_t sigma(const Hypergraph& h, const VertexSet& s);
std::int64_t sigma(std::span<const std::int64_t> degrees, const VertexSet& s);
/// Throws EmptyInputError on an edgeless hypergraph.
SigmaStats sigma_hat(const Hypergraph& h);

/// Pair graph of h: adjacency[v] holds every u != v sharing an edge with v.
std::vector<VertexSet> pair_adjacency(const Hypergraph& h);

/// Sets of size 0 and 1 are vacuously 2-covered.
bool is_two_covered(const Hypergraph& h, const VertexSet& s);

CliqueSet clique_set(const Hypergraph& h, int kmax);

/// Maximal 2-covered sets (Bron-Kerbosch with Tomita pivoting over the pair
/// graph), sorted. Isolated vertices appear as singletons.
std::vector<VertexSet> maximal_two_covered_sets(const Hypergraph& h);

/// Largest z >= 0 with sigma(R) <= (ell-r+1)|dH| - (ell-|R|) z over every
/// nonempty 2-covered R with |R| <= ell-1. Exact rational.
ZValue z_value(const Hypergraph& h, int ell);

}  // namespace shadowlab
