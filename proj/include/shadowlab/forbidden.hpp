#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/hypergraph.hpp"

namespace shadowlab {

/// Forbidden family selector. `none` makes every hypergraph free and is used
/// for unrestricted sweeps (Kruskal-Katona checks).
struct Family {
  enum class Kind { none, cancellative, expansion };
  Kind kind = Kind::none;
  /// Clique parameter for `expansion`: the family has cores of size ell+1.
  int ell = 0;

  static Family none() { return {Kind::none, 0}; }
  static Family cancellative() { return {Kind::cancellative, 0}; }
  static Family expansion(int ell) { return {Kind::expansion, ell}; }

  /// "none", "cancellative", "expansion(3)"
  std::string name() const;
  friend bool operator==(const Family&, const Family&) = default;
};

struct CoveredPair {
  Vertex u;
  Vertex v;
  Edge edge;
};

struct Witness {
  enum class Kind { cancellative_triple, covered_clique };
  Kind kind = Kind::cancellative_triple;
  /// (A, B, C) for a triple; the chosen covering edges (sorted, distinct) for a clique.
  std::vector<Edge> edges;
  VertexSet core;
  std::vector<CoveredPair> covering;

  std::string describe() const;
};

/// Lexicographically least (A, B, C) by storage index with A != B and
/// A xor B inside C. Pair-indexed scan, rows split across OpenMP workers.
std::optional<Witness> find_cancellative_violation(const Hypergraph& h);
/// Same condition and witness, plain serial triple loop.
std::optional<Witness> find_cancellative_violation_reference(const Hypergraph& h);
/// The other route: least (A, B, C), B < C, with A u B = A u C.
std::optional<Witness> find_union_violation(const Hypergraph& h);

/// Lexicographically least 2-covered (ell+1)-set, with one covering edge per
/// pair (least edge containing the pair). Requires ell >= r.
std::optional<Witness> find_clique_expansion(const Hypergraph& h, int ell);
std::optional<Witness> find_clique_expansion_reference(const Hypergraph& h, int ell);

std::optional<Witness> find_violation(const Hypergraph& h, const Family& family);
bool is_free(const Hypergraph& h, const Family& family);

/// Throws PreconditionError naming the witness unless h is free.
void require_free(const Hypergraph& h, const Family& family, const std::string& context);

/// Incremental freeness on 64-bit edge masks (n <= 64). `can_add` answers
/// whether the current edge list plus e stays free, assuming the current
/// list is free.
class FreenessTracker {
 public:
  static constexpr int kMaxVertices = 64;

  FreenessTracker(int n, int r, Family family);

  bool can_add(std::uint64_t e) const;
  void push(std::uint64_t e);
  void pop();

  const std::vector<std::uint64_t>& edges() const noexcept { return edges_; }
  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  const Family& family() const noexcept { return family_; }

 private:
  bool creates_covered_clique(std::uint64_t e) const;

  int n_;
  int r_;
  Family family_;
  std::vector<std::uint64_t> edges_;
  // pair_count_[u * n + v]: edges covering {u, v}
  std::vector<std::uint16_t> pair_count_;
  std::vector<std::uint64_t> adjacency_;
};

/// Greedy random free hypergraph: walks the r-sets of 0..n-1 in a seeded
/// random order and keeps each one that preserves freeness, stopping after
/// `max_edges` edges. n <= 64.
Hypergraph random_free(int n, int r, const Family& family, std::uint64_t seed, std::size_t max_edges);

std::vector<std::uint64_t> to_masks(const Hypergraph& h);
Hypergraph from_masks(int r, int n, const std::vector<std::uint64_t>& masks);

}  // namespace shadowlab
