#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "shadowlab/bounds.hpp"
#include "shadowlab/constructions.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/extremal.hpp"
#include "shadowlab/forbidden.hpp"
#include "shadowlab/rng.hpp"

using namespace shadowlab;

namespace {

// Independent root finder: Newton from a large start on the same polynomial.
double newton_binomial_root(double s, int k) {
  double x = std::max<double>(k, std::pow(s * std::tgamma(k + 1.0), 1.0 / k) + k);
  for (int it = 0; it < 200; ++it) {
    double f = 1.0, df = 0.0;
    for (int i = 0; i < k; ++i) {
      df = df * (x - i) + f;
      f *= (x - i);
    }
    const double fact = std::tgamma(k + 1.0);
    const double step = (f / fact - s) / (df / fact);
    x -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, x)) break;
  }
  return x;
}

void expect_all_hold(const InequalityReport& rep) {
  for (const auto& q : rep.items) EXPECT_TRUE(q.holds) << q.id << ": " << q.lhs << " > " << q.rhs;
}

}  // namespace

TEST(SolveBinomialX, Examples) {
  EXPECT_NEAR(solve_binomial_x(6, 2), 4.0, 1e-12);
  EXPECT_NEAR(solve_binomial_x(10, 3), 5.0, 1e-12);
  EXPECT_NEAR(solve_binomial_x(7, 2), (1.0 + std::sqrt(57.0)) / 2.0, 1e-12);
  EXPECT_NEAR(solve_binomial_x(1, 4), 4.0, 1e-12);
  EXPECT_THROW(solve_binomial_x(0.5, 2), DomainError);
  EXPECT_THROW(solve_binomial_x(3, 0), DomainError);
}

TEST(SolveBinomialX, InverseOfRealBinomial) {
  for (int k = 1; k <= 5; ++k)
    for (double s = 1.0; s <= 1e9; s *= 1.37) {
      const double x = solve_binomial_x(s, k);
      EXPECT_GE(x, k);
      EXPECT_NEAR(real_binomial(x, k), s, 1e-9 * s) << s << " " << k;
      EXPECT_NEAR(x, newton_binomial_root(s, k), 1e-9 * x);
    }
  for (int k = 1; k <= 4; ++k)
    for (double x = k; x < 400; x += 0.731) EXPECT_NEAR(solve_binomial_x(real_binomial(x, k), k), x, 1e-9 * x);
}

TEST(KruskalKatona, Examples) {
  const auto a = kk_bound(complete(4, 3));
  EXPECT_NEAR(a.x, 4.0, 1e-9);
  EXPECT_NEAR(a.bound, 4.0, 1e-9);
  EXPECT_EQ(a.actual, 4);
  EXPECT_TRUE(a.tight);
  const auto k5_edges = complete(5, 3);
  const Hypergraph k5(3, 7, std::vector<Edge>(k5_edges.edges().begin(), k5_edges.edges().end()));
  const auto b = kk_bound(k5);
  EXPECT_NEAR(b.x, 5.0, 1e-9);
  EXPECT_NEAR(b.bound, 10.0, 1e-9);
  EXPECT_TRUE(b.tight);
  const auto c = kk_bound(Hypergraph(3, 3, {VertexSet(3, {0, 1, 2})}));
  EXPECT_NEAR(c.x, 3.0, 1e-9);
  EXPECT_GE(c.bound + kBoundTolerance, 1.0);
  EXPECT_EQ(c.shadow_size, 3);
  EXPECT_THROW(kk_bound(Hypergraph::empty(3, 4)), EmptyInputError);
}

TEST(ClosedFormBounds, Examples) {
  auto v = cancellative_bound(12, 3);
  EXPECT_NEAR(v.x, 6.0, 1e-9);
  EXPECT_NEAR(v.bound, 8.0, 1e-9);
  v = cancellative_bound(3, 3);
  EXPECT_NEAR(v.x, 3.0, 1e-9);
  EXPECT_NEAR(v.bound, 1.0, 1e-9);
  v = cancellative_bound(27, 4);
  EXPECT_NEAR(v.bound, std::exp(4.0 / 3.0 * std::log(27.0 / 4.0)), 1e-9);
  EXPECT_NEAR(std::pow(v.x / 4.0, 4), v.bound, 1e-9);
  EXPECT_THROW(cancellative_bound(0, 3), DomainError);
  EXPECT_THROW(cancellative_bound(-1, 3), DomainError);

  auto e = expansion_bound(12, 3, 3);
  EXPECT_NEAR(e.x, 6.0, 1e-9);
  EXPECT_NEAR(e.bound, 8.0, 1e-9);
  e = expansion_bound(6, 4, 3);
  EXPECT_NEAR(e.x, 4.0, 1e-9);
  EXPECT_NEAR(e.bound, 4.0, 1e-9);
  for (int r = 2; r <= 5; ++r)
    for (int ell = r; ell <= 8; ++ell) {
      const auto c = complete(ell, r);
      const auto t = expansion_bound(static_cast<double>(shadow_size(c)), ell, r);
      EXPECT_NEAR(t.x, ell, 1e-9);
      EXPECT_NEAR(t.bound, static_cast<double>(c.size()), 1e-9);
    }
  EXPECT_THROW(expansion_bound(0, 3, 3), DomainError);
  EXPECT_THROW(expansion_bound(5, 2, 3), DomainError);
}

TEST(ClosedFormBounds, TightOnPaddedTuranGraphs) {
  for (int r = 2; r <= 4; ++r)
    for (int m = r; m <= 12; m += r) {
      const auto h = turan_padded(m + 3, m, r, r);
      const auto rep = cancellative_report(h);
      EXPECT_TRUE(rep.tight) << r << " " << m << " slack " << rep.slack;
    }
  for (int r = 2; r <= 3; ++r)
    for (int ell = r; ell <= 5; ++ell)
      for (int m = ell; m <= 15; m += ell) {
        const auto rep = expansion_report(turan_padded(m + 2, m, ell, r), ell);
        EXPECT_TRUE(rep.tight) << r << " " << ell << " " << m << " slack " << rep.slack;
      }
}

TEST(ExhaustiveSweeps, EveryFreeGraphOnSixVerticesMeetsItsBound) {
  const auto can = verify_bound_over_enumeration(6, 3, Family::cancellative(), BoundKind::cancellative);
  EXPECT_EQ(can.violations, 0u);
  EXPECT_NEAR(can.min_slack, 0.0, 1e-9);
  const auto exp = verify_bound_over_enumeration(6, 3, Family::expansion(3), BoundKind::expansion, 3);
  EXPECT_EQ(exp.violations, 0u);
  const auto kk = verify_bound_over_enumeration(6, 3, Family::none(), BoundKind::kruskal_katona);
  EXPECT_EQ(kk.violations, 0u);
  EXPECT_EQ(kk.checked, (std::uint64_t{1} << 20) - 1);
}

TEST(ExhaustiveSweeps, BoundsAgreeWithIndependentArithmetic) {
  // Every labeled 3-graph on 5 vertices with an oracle shadow.
  oracle::for_each_graph(5, 3, [&](const oracle::Graph& g) {
    if (g.empty()) return;
    const auto s = static_cast<double>(oracle::shadow(g).size());
    const auto h = oracle::to_hypergraph(3, 5, g);
    const auto kk = kk_bound(h);
    const double x = (1.0 + std::sqrt(1.0 + 8.0 * s)) / 2.0;
    ASSERT_NEAR(kk.x, x, 1e-9);
    ASSERT_NEAR(kk.bound, x * (x - 1) * (x - 2) / 6.0, 1e-8);
    ASSERT_LE(static_cast<double>(g.size()), kk.bound + kBoundTolerance);
    if (oracle::cancellative(g)) ASSERT_LE(static_cast<double>(g.size()), std::pow(s / 3.0, 1.5) + 1e-9);
  });
}

TEST(DegreeSumInequalities, Examples) {
  const auto t = lemma9_check(turan(6, 3, 3).graph);
  ASSERT_EQ(t.items.size(), 4u);
  expect_all_hold(t);
  EXPECT_LE(t.at("L9.4").lhs, 8.0 + 1e-9);
  EXPECT_NEAR(t.at("L9.4").rhs, 8.0, 1e-9);
  expect_all_hold(lemma9_check(Hypergraph(3, 4, {VertexSet(4, {0, 1, 2})})));
  EXPECT_THROW(lemma9_check(complete(4, 3)), PreconditionError);
  EXPECT_THROW(lemma9_check(Hypergraph::empty(3, 4)), EmptyInputError);
}

TEST(DegreeSumInequalities, HoldOnRandomCancellativeGraphs) {
  Xorshift64Star rng(31);
  for (int i = 0; i < 1000; ++i) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const auto h = random_free(n, 3, Family::cancellative(), rng.next(), 1 + rng.below(40));
    if (h.empty()) continue;
    expect_all_hold(lemma9_check(h));
    expect_all_hold(lemma8_check(h));
    expect_all_hold(lemma10_check(h));
  }
}

TEST(DegreeSumInequalities, HoldOnCancellativeFourGraphs) {
  Xorshift64Star rng(32);
  for (int i = 0; i < 200; ++i) {
    const int n = 4 + static_cast<int>(rng.below(6));
    const auto h = random_free(n, 4, Family::cancellative(), rng.next(), 1 + rng.below(30));
    if (!h.empty()) expect_all_hold(lemma9_check(h));
  }
}

TEST(LinkStructure, Examples) {
  const auto t = turan(6, 3, 3).graph;
  expect_all_hold(lemma8_check(t));
  EXPECT_EQ(lemma8_check(t).at("L8.links").lhs, 0.0);
  expect_all_hold(lemma10_check(t));
  EXPECT_THROW(lemma8_check(complete(4, 3)), PreconditionError);
  expect_all_hold(lemma8_check(fano()));
  expect_all_hold(clique_sigma_check(t, 3));
  EXPECT_THROW(clique_sigma_check(complete(4, 3), 3), PreconditionError);
}

TEST(CliqueDegreeSums, Examples) {
  const auto t = lemma14_check(turan(6, 3, 3).graph, 3);
  expect_all_hold(t.report);
  EXPECT_EQ(t.z.z, Rational(4));
  for (int ell = 3; ell <= 6; ++ell) expect_all_hold(lemma14_check(complete(ell, 3), ell).report);
  EXPECT_THROW(lemma14_check(complete(4, 3), 3), PreconditionError);
}

TEST(CliqueDegreeSums, HoldOnRandomFreeGraphs) {
  Xorshift64Star rng(33);
  for (int i = 0; i < 1000; ++i) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const auto h = random_free(n, 3, Family::expansion(3), rng.next(), 1 + rng.below(40));
    if (h.empty()) continue;
    expect_all_hold(lemma14_check(h, 3).report);
    expect_all_hold(clique_sigma_check(h, 3));
  }
  for (int i = 0; i < 200; ++i) {
    const int ell = 4 + static_cast<int>(rng.below(2));
    const auto h = random_free(3 + static_cast<int>(rng.below(7)), 3, Family::expansion(ell), rng.next(), 60);
    if (!h.empty()) expect_all_hold(lemma14_check(h, ell).report);
  }
}

TEST(Concentration, Examples) {
  const std::vector<double> a{0, 0, 10, 10};
  const auto ra = concentration_bound(a, 5, 5);
  EXPECT_EQ(ra.small_set_size, 2u);
  EXPECT_NEAR(ra.bound, 2.0, 1e-12);
  EXPECT_TRUE(ra.holds);
  const std::vector<double> c{3, 3, 3};
  EXPECT_EQ(concentration_bound(c, 0.5, 0.1).small_set_size, 0u);
  const std::vector<double> d{1, 2, 3};
  const auto rd = concentration_bound(d, 10, 1);
  EXPECT_EQ(rd.small_set_size, 0u);
  EXPECT_TRUE(rd.holds);
  EXPECT_THROW(concentration_bound(d, 1, 0.5), PreconditionError);
  EXPECT_THROW(concentration_bound(d, 0, 1), DomainError);
}

TEST(Concentration, RandomValues) {
  Xorshift64Star rng(34);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> v(1 + rng.below(30));
    double mean = 0, mx = -1e300;
    for (auto& x : v) {
      x = rng.unit() * 10;
      mean += x;
      mx = std::max(mx, x);
    }
    mean /= static_cast<double>(v.size());
    const double d2 = mx - mean + rng.unit();
    const double d1 = 0.01 + rng.unit() * 5;
    const auto res = concentration_bound(v, d1, d2 <= 0 ? 0.01 : d2);
    EXPECT_TRUE(res.holds);
    EXPECT_LE(static_cast<double>(res.small_set_size), res.bound + 1e-9);
  }
}
