#pragma once

// Brute-force references used only by the tests. They work on plain sorted
// vectors and never call the library's search kernels.

#include <cstdint>
#include <set>
#include <vector>

#include "shadowlab/hypergraph.hpp"

namespace oracle {

using Set = std::vector<int>;
using Graph = std::vector<Set>;

Graph edges_of(const shadowlab::Hypergraph& h);
shadowlab::Hypergraph to_hypergraph(int r, int n, const Graph& g);

/// All k-subsets of 0..n-1 in lexicographic order.
std::vector<Set> subsets(int n, int k);
std::vector<Set> subsets_of(const Set& items, int k);

std::set<Set> shadow(const Graph& g);
std::vector<std::int64_t> degrees(int n, const Graph& g);

bool covered_pair(const Graph& g, int u, int v);
bool two_covered(const Graph& g, const Set& s);

bool cancellative(const Graph& g);
bool has_clique_expansion(int n, const Graph& g, int ell);

/// z by scanning every vertex subset of size 1..ell-1.
shadowlab::Rational z_value(int n, int r, const Graph& g, int ell);

/// Permutation-minimal sorted edge list over all n! relabelings.
Graph canonical(int n, const Graph& g);
bool isomorphic(int n, const Graph& a, const Graph& b);

/// Minimum number of edges lost over every labeling of every vertex with
/// "outside" or one of ell parts, at most cap vertices inside.
std::size_t partition_min_removed(int n, const Graph& g, int ell, int cap);

/// Every labeled r-graph on n vertices (2^C(n, r) of them) passed to f.
template <class F>
void for_each_graph(int n, int r, F&& f) {
  const auto all = subsets(n, r);
  const std::uint64_t total = std::uint64_t{1} << all.size();
  Graph g;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    g.clear();
    for (std::size_t i = 0; i < all.size(); ++i)
      if ((mask >> i) & 1) g.push_back(all[i]);
    f(g);
  }
}

}  // namespace oracle
