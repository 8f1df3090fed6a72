#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shadowlab/constructions.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/rng.hpp"
#include "shadowlab/stability.hpp"

using namespace shadowlab;

namespace {

Hypergraph random_graph(Xorshift64Star& rng, int n, int r, double density) {
  std::vector<Edge> edges;
  for (const auto& e : all_r_sets(n, r))
    if (rng.unit() < density) edges.push_back(e);
  return Hypergraph(r, n, std::move(edges));
}

FitOptions mode(FitMode m, bool parallel = true) {
  FitOptions o;
  o.mode = m;
  o.parallel = parallel;
  return o;
}

void expect_consistent(const Hypergraph& h, const PartitionFit& fit) {
  EXPECT_EQ(fit.removed, count_removed(h, fit.part_of));
  EXPECT_LE(fit.chosen.size(), fit.cap);
  ASSERT_EQ(fit.parts.size(), static_cast<std::size_t>(fit.ell));
  VertexSet all(h.n());
  for (const auto& p : fit.parts) {
    EXPECT_FALSE(all.intersects(p));
    all |= p;
  }
  EXPECT_EQ(all, fit.chosen);
  for (Vertex v = 0; v < h.n(); ++v) EXPECT_EQ(fit.part_of[static_cast<std::size_t>(v)] >= 0, fit.chosen.contains(v));
}

}  // namespace

TEST(PartitionFit, Examples) {
  const auto t = turan(6, 3, 3).graph;
  const auto a = partition_fit(t, 3, 6, mode(FitMode::exact));
  EXPECT_EQ(a.removed, 0u);
  EXPECT_TRUE(a.optimal);
  expect_consistent(t, a);
  const auto t1 = t.with_edge(VertexSet(6, {0, 1, 3}));  // 0 and 3 share a part
  const auto b = partition_fit(t1, 3, 6, mode(FitMode::exact));
  EXPECT_EQ(b.removed, 1u);
  EXPECT_EQ(b.removed, oracle::partition_min_removed(6, oracle::edges_of(t1), 3, 6));
  const auto k = complete(4, 3);
  const auto c = partition_fit(k, 3, 4, mode(FitMode::exact));
  EXPECT_GE(c.removed, 1u);
  EXPECT_EQ(c.removed, oracle::partition_min_removed(4, oracle::edges_of(k), 3, 4));
  EXPECT_EQ(c.removed, 2u);
}

TEST(PartitionFit, ExactMatchesOracle) {
  Xorshift64Star rng(51);
  for (int trial = 0; trial < 250; ++trial) {
    const int r = 2 + static_cast<int>(rng.below(2));
    const int n = r + static_cast<int>(rng.below(9 - r));
    const int ell = 1 + static_cast<int>(rng.below(3));
    const int cap = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 2)));
    const auto h = random_graph(rng, n, r, rng.unit());
    const auto expect = oracle::partition_min_removed(n, oracle::edges_of(h), ell, cap);
    const auto par = partition_fit(h, ell, cap, mode(FitMode::exact));
    const auto ser = partition_fit(h, ell, cap, mode(FitMode::exact, false));
    ASSERT_EQ(par.removed, expect) << "n=" << n << " ell=" << ell << " cap=" << cap;
    ASSERT_EQ(ser.removed, expect);
    EXPECT_EQ(par.part_of, ser.part_of);
    expect_consistent(h, par);
    const auto heur = partition_fit(h, ell, cap, mode(FitMode::heuristic));
    EXPECT_GE(heur.removed, expect);
    EXPECT_FALSE(heur.optimal);
    expect_consistent(h, heur);
  }
}

TEST(PartitionFit, ZeroIffInsideACompleteMultipartiteGraph) {
  Xorshift64Star rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(5));
    const int ell = 3 + static_cast<int>(rng.below(2));
    const auto t = turan(n, ell, 3).graph;
    const auto p = perturb(t, rng.next(), rng.below(t.size() / 2 + 1), 0);
    EXPECT_EQ(partition_fit(p.graph, ell, n).removed, 0u);
    EXPECT_EQ(partition_fit(p.graph, ell, n, mode(FitMode::heuristic)).removed, 0u);
  }
}

TEST(PartitionFit, HeuristicDeterministicPerSeed) {
  const auto h = perturb(turan(30, 3, 3).graph, 4, 50, 20).graph;
  FitOptions o = mode(FitMode::heuristic);
  o.seed = 17;
  const auto a = partition_fit(h, 3, 30, o);
  const auto b = partition_fit(h, 3, 30, o);
  EXPECT_EQ(a.part_of, b.part_of);
  EXPECT_EQ(a.removed, b.removed);
  EXPECT_LE(a.removed, 20u);
  EXPECT_EQ(partition_fit(h, 3, 30, mode(FitMode::heuristic, false)).part_of,
            partition_fit(h, 3, 30, mode(FitMode::heuristic, true)).part_of);
}

TEST(PartitionFit, Limits) {
  EXPECT_THROW(partition_fit(turan(30, 3, 3).graph, 3, 30, mode(FitMode::exact)), ResourceError);
  EXPECT_FALSE(partition_fit(turan(30, 3, 3).graph, 3, 30).optimal);
  EXPECT_THROW(partition_fit(complete(4, 3), 0, 4), ParameterError);
  EXPECT_THROW(partition_fit(complete(4, 3), 3, -1), ParameterError);
  EXPECT_EQ(partition_fit(complete(4, 3), 3, 0).removed, 4u);
}

TEST(CoreExtraction, CancellativeExamples) {
  const auto t = turan(6, 3, 3).graph;
  const auto c = core_extract_cancellative(t, 0.01);
  EXPECT_EQ(c.g.size(), 12u);
  EXPECT_EQ(c.u, VertexSet::full(6));
  EXPECT_NEAR(c.tau, (2.0 / 3.0 - 0.6) * 12.0, 1e-12);
  EXPECT_EQ(c.h_u_edges, 8u);
  EXPECT_EQ(c.min_degree_u, 4);
  EXPECT_NEAR(c.eps1_stated, 35.0 * 81.0 * 0.1, 1e-9);
  EXPECT_NEAR(c.eps1_invoked, 40.0 * 729.0 * 0.1, 1e-9);
  EXPECT_EQ(c.flags.items.size(), 6u);

  const auto single = Hypergraph(3, 3, {VertexSet(3, {0, 1, 2})});
  const auto s = core_extract_cancellative(single, 0.25);
  EXPECT_NEAR(s.tau, (2.0 / 3.0 - 3.0) * 3.0, 1e-12);
  EXPECT_EQ(s.g.size(), 3u);

  EXPECT_THROW(core_extract_cancellative(complete(4, 3), 0.01), PreconditionError);
  EXPECT_THROW(core_extract_cancellative(t, 0.0), DomainError);
  EXPECT_THROW(core_extract_cancellative(t, 1.0), DomainError);
}

TEST(CoreExtraction, PerturbedTuranKeepsMostVertices) {
  const auto t = turan(12, 3, 3).graph;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = perturb(t, seed, t.size() / 20, 0).graph;
    const auto c = core_extract_cancellative(p, 0.01);
    EXPECT_GE(c.u_size, 12u * 95 / 100);
  }
}

TEST(CoreExtraction, ExpansionExamples) {
  const auto c = core_extract_expansion(turan(6, 3, 3).graph, 3, 0.01);
  ASSERT_TRUE(c.z);
  EXPECT_EQ(c.z->z, Rational(4));
  EXPECT_EQ(c.u, VertexSet::full(6));
  const auto& zl = c.flags.at("z_lower");
  const auto& zu = c.flags.at("z_upper");
  EXPECT_TRUE(zl.holds);
  EXPECT_TRUE(zu.holds);
  const auto p = core_extract_expansion(turan_padded(10, 6, 3, 3), 3, 0.01);
  EXPECT_EQ(p.u, VertexSet::full(6));
  EXPECT_EQ(p.u_size, 6u);
  const auto k = core_extract_expansion(complete(4, 3), 4, 0.05);
  EXPECT_EQ(k.flags.items.size(), 7u);
  EXPECT_THROW(core_extract_expansion(complete(4, 3), 3, 0.05), PreconditionError);
  EXPECT_THROW(core_extract_expansion(complete(4, 3), 2, 0.05), ParameterError);
}

TEST(CoreExtraction, MonotoneInThreshold) {
  Xorshift64Star rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = random_free(4 + static_cast<int>(rng.below(7)), 3, Family::cancellative(), rng.next(), 40);
    if (h.empty()) continue;
    double prev_tau = -1.0;
    VertexSet prev_u;
    std::size_t prev_g = 0;
    for (double tau = 0.0; tau <= 40.0; tau += 1.5) {
      const auto c = core_for_threshold(h, tau);
      if (prev_tau >= 0.0) {
        EXPECT_TRUE(c.u.is_subset_of(prev_u));
        EXPECT_LE(c.g.size(), prev_g);
      }
      for (const auto& s : c.g) EXPECT_TRUE(s.is_subset_of(c.u));
      prev_tau = tau;
      prev_u = c.u;
      prev_g = c.g.size();
    }
  }
}

TEST(Certificate, Examples) {
  const auto a = stability_certificate(turan_padded(9, 6, 3, 3), Family::cancellative(), 0.05, 0.05);
  EXPECT_TRUE(a.hypothesis_met);
  EXPECT_NEAR(a.bound.x, 6.0, 1e-9);
  EXPECT_EQ(a.fit.cap, 6);
  EXPECT_EQ(a.fit.removed, 0u);
  EXPECT_NEAR(a.allowance, 0.05 * 216.0, 1e-9);
  EXPECT_EQ(a.status, "certified");

  const auto t = turan(6, 3, 3).graph;
  const auto b = stability_certificate(t.without_edge(0), Family::cancellative(), 0.2, 0.2);
  EXPECT_EQ(b.fit.removed, 0u);
  EXPECT_EQ(b.status, "certified");

  const Hypergraph sparse(3, 9, {VertexSet(9, {0, 1, 2}), VertexSet(9, {3, 4, 5}), VertexSet(9, {6, 7, 8})});
  const auto c = stability_certificate(sparse, Family::cancellative(), 0.05, 0.05);
  EXPECT_FALSE(c.hypothesis_met);
  EXPECT_EQ(c.status, "hypothesis-not-met");

  const auto d = stability_certificate(t, Family::expansion(3), 0.05, 0.05);
  EXPECT_EQ(d.status, "certified");
  EXPECT_EQ(d.ell, 3);

  EXPECT_THROW(stability_certificate(t, Family::none(), 0.05, 0.05), ParameterError);
  EXPECT_THROW(stability_certificate(t, Family::cancellative(), 0.05, 0.0), DomainError);
  EXPECT_THROW(stability_certificate(complete(4, 3), Family::cancellative(), 0.05, 0.05), PreconditionError);
}

TEST(Certificate, TuranGraphsAreCertified) {
  for (int n = 3; n <= 12; ++n) {
    const auto c = stability_certificate(turan(n, 3, 3).graph, Family::cancellative(), 0.05, 0.05);
    EXPECT_EQ(c.fit.removed, 0u) << n;
    if (n % 3 == 0) EXPECT_EQ(c.status, "certified") << n;
  }
}
