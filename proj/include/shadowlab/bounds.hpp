#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shadowlab/hypergraph.hpp"

namespace shadowlab {

/// Uniform tolerance for tightness flags and inequality checks.
inline constexpr double kBoundTolerance = 1e-9;

struct BoundReport {
  std::string kind;  // "kruskal-katona", "cancellative", "expansion"
  std::int64_t shadow_size = 0;
  double x = 0.0;
  double bound = 0.0;
  std::int64_t actual = 0;
  double slack = 0.0;
  bool tight = false;
};

struct Inequality {
  std::string id;  // "L9.1" ...
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct InequalityReport {
  std::vector<Inequality> items;
  bool all_hold() const;
  const Inequality& at(const std::string& id) const;
};

/// C(x, k) for real x via the falling factorial x(x-1)...(x-k+1)/k!.
double real_binomial(double x, int k);

/// The unique x >= k with C(x, k) = s. Bisection until the bracket is
/// 1e-12 wide or stops shrinking in double precision.
double solve_binomial_x(double s, int k);

/// |H| <= C(x, r) where |dH| = C(x, r-1).
BoundReport kk_bound(const Hypergraph& h);

struct BoundValue {
  double x = 0.0;
  double bound = 0.0;
};

/// x = (r^(r-2) s)^(1/(r-1)), bound (x/r)^r = (s/r)^(r/(r-1)).
BoundValue cancellative_bound(double shadow_size, int r);
/// x = ell (s / C(ell, r-1))^(1/(r-1)), bound C(ell, r) (x/ell)^r.
BoundValue expansion_bound(double shadow_size, int ell, int r);

/// BoundReport of the matching formula for a concrete hypergraph.
BoundReport cancellative_report(const Hypergraph& h);
BoundReport expansion_report(const Hypergraph& h, int ell);

/// Link disjointness across every covered pair ("L8.links", lhs = number of
/// pairs with intersecting links) and sigma(S) <= |dH| over maximal
/// 2-covered sets ("L8.sigma", lhs = max sigma). Requires cancellative.
InequalityReport lemma8_check(const Hypergraph& h);

/// The four degree-sum inequalities for cancellative r-graphs, evaluated at
/// the least sigma-hat edge. Requires cancellative and nonempty.
InequalityReport lemma9_check(const Hypergraph& h);

/// N(A) and N(v) disjoint for every v and every A in L(v) ("L10", lhs =
/// number of offending (v, A)). Requires cancellative.
InequalityReport lemma10_check(const Hypergraph& h);

/// sigma(S) <= (ell-r+1)|dH| over 2-covered S with |S| <= ell ("K.sigma").
/// Requires clique-expansion free.
InequalityReport clique_sigma_check(const Hypergraph& h, int ell);

struct CliqueSumResult {
  InequalityReport report;
  ZValue z;
};

/// Both degree-sum inequalities for clique-expansion free r-graphs, with z and
/// its witness R0 from z_value. Requires free and nonempty.
CliqueSumResult lemma14_check(const Hypergraph& h, int ell);

struct ConcentrationResult {
  double mean = 0.0;
  double bound = 0.0;
  std::size_t small_set_size = 0;
  bool holds = false;
};

/// |{v : f(v) <= mean - delta1}| <= delta2 |V| / (delta1 + delta2), given
/// max f <= mean + delta2 (PreconditionError otherwise).
ConcentrationResult concentration_bound(std::span<const double> values, double delta1, double delta2);

}  // namespace shadowlab
