#pragma once

#include <cstdint>
#include <vector>

#include "shadowlab/hypergraph.hpp"

namespace shadowlab {

struct PartitionSpec {
  int ell = 0;
  std::vector<VertexSet> parts;
};

/// All r-subsets of 0..n-1 in lexicographic order.
std::vector<Edge> all_r_sets(int n, int r);

/// K_n^r. Requires n >= r >= 1.
Hypergraph complete(int n, int r);

struct TuranGraph {
  Hypergraph graph;
  PartitionSpec partition;
};

/// Generalized Turan graph T_r(n, ell): r-sets meeting each part at most once.
/// Vertex i joins part i mod ell. Requires ell >= r >= 2, n >= ell.
TuranGraph turan(int n, int ell, int r);

/// T_r(m, ell) on 0..m-1 inside a ground set of n vertices.
/// Requires n >= m >= ell >= r >= 2.
Hypergraph turan_padded(int n, int m, int ell, int r);

/// t_r(n, ell): sum over r-subsets of parts of the product of part sizes.
std::int64_t turan_edge_count(int n, int ell, int r);

/// Adds r-2 fresh vertices to every edge of a graph. Fresh vertices are
/// numbered n, n+1, ... in edge storage order.
Hypergraph expansion(const Hypergraph& g, int r);

/// The Fano plane, 0-based: {012, 234, 450, 063, 164, 265, 135}.
Hypergraph fano();

struct Perturbation {
  Hypergraph graph;
  std::vector<Edge> removed;
  std::vector<Edge> added;
};

/// Deletes `del` edges and adds `add` non-edges, chosen by Xorshift64Star(seed).
Perturbation perturb(const Hypergraph& h, std::uint64_t seed, std::size_t del, std::size_t add);

}  // namespace shadowlab
