#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shadowlab/bounds.hpp"
#include "shadowlab/forbidden.hpp"
#include "shadowlab/hypergraph.hpp"

namespace shadowlab {

enum class FitMode { automatic, exact, heuristic };
std::string fit_mode_name(FitMode m);

struct FitOptions {
  FitMode mode = FitMode::automatic;
  /// Exact search needs ell^(non-isolated vertices) <= this.
  double exact_state_budget = 1e7;
  int restarts = 20;
  std::uint64_t seed = 1;
  bool parallel = true;
};

struct PartitionFit {
  int ell = 0;
  int cap = 0;
  /// V', the vertices given a part.
  VertexSet chosen;
  /// part_of[v] in 0..ell-1, or -1 when v is outside V'.
  std::vector<int> part_of;
  std::vector<VertexSet> parts;
  /// Edges not contained in V' or not transversal to the partition.
  std::size_t removed = 0;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// Edges of h that leave the labeled vertices or meet some part twice.
std::size_t count_removed(const Hypergraph& h, const std::vector<int>& part_of);

/// Best subset V' (|V'| <= cap) with an ell-partition keeping the most edges
/// transversal. Exact mode is branch-and-bound over vertices and returns the
/// lexicographically least optimal labeling (parts before exclusion, part
/// labels in first-use order); ResourceError when over budget. Heuristic mode
/// is a seeded greedy seed plus single-vertex moves.
PartitionFit partition_fit(const Hypergraph& h, int ell, int cap, const FitOptions& opts = {});

struct CoreExtraction {
  std::string family;
  int ell = 0;
  double eps = 0.0;
  double tau = 0.0;
  std::size_t shadow_size = 0;
  /// Members of dH with sigma >= tau, in storage order.
  std::vector<Edge> g;
  VertexSet u;
  double g_fraction = 0.0;
  std::size_t u_size = 0;
  std::size_t h_u_edges = 0;
  std::size_t h_u_shadow = 0;
  std::int64_t min_degree_u = 0;
  std::int64_t max_degree = 0;
  /// Core inequalities evaluated on this instance.
  InequalityReport flags;
  /// Expansion only.
  std::optional<ZValue> z;
  /// Cancellative only: the two error constants quoted for the dense core.
  double eps1_stated = 0.0;
  double eps1_invoked = 0.0;
};

/// Threshold ((r-1)/r - 2r sqrt(eps)) |dH|. Requires cancellative, 0 < eps < 1.
CoreExtraction core_extract_cancellative(const Hypergraph& h, double eps);
/// Threshold (1 - eps^(1/4)) (ell-r+1)(r-1)/ell |dH|. Requires expansion-free.
CoreExtraction core_extract_expansion(const Hypergraph& h, int ell, double eps);

/// Same core for an explicit threshold (monotonicity tests).
CoreExtraction core_for_threshold(const Hypergraph& h, double tau);

struct StabilityCertificate {
  std::string family;
  int ell = 0;
  double eps = 0.0;
  double delta = 0.0;
  BoundReport bound;
  double hypothesis_floor = 0.0;
  bool hypothesis_met = false;
  CoreExtraction core;
  PartitionFit fit;
  double allowance = 0.0;  // delta x^r
  bool conclusion_holds = false;
  /// "certified", "not-certified" or "hypothesis-not-met".
  std::string status;
};

/// Per-instance check of the stability shape: x from the shadow, the size
/// hypothesis |H| >= (1-eps) bound, core extraction, then partition_fit with
/// cap ceil(x) and ell parts (r parts for cancellative).
StabilityCertificate stability_certificate(const Hypergraph& h, const Family& family, double eps, double delta,
                                           const FitOptions& opts = {});

}  // namespace shadowlab
